#include "dmax/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace dmax {

FractionalMatrix::FractionalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 1) throw std::invalid_argument("FractionalMatrix: bad shape");
    entries_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Rational(0));
    floating_.assign(entries_.size(), 0);
}

void FractionalMatrix::set(int i, int j, const Rational& v) {
    if (v < 0 || v > 1) throw std::invalid_argument("FractionalMatrix::set: entry outside [0,1]");
    entries_[index(i, j)] = v;
    floating_[index(i, j)] = (v != 0 && v != 1) ? 1 : 0;
}

int FractionalMatrix::floating_count() const {
    int c = 0;
    for (char f : floating_) c += f;
    return c;
}

int FractionalMatrix::floating_rows() const {
    int c = 0;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j)
            if (floating(i, j)) {
                ++c;
                break;
            }
    }
    return c;
}

bool FractionalMatrix::row_deterministic(int i) const {
    for (int j = 0; j < cols_; ++j)
        if (floating(i, j)) return false;
    return true;
}

void FractionalMatrix::validate() const {
    for (int i = 0; i < rows_; ++i) {
        Rational sum(0);
        int floats = 0;
        for (int j = 0; j < cols_; ++j) {
            const Rational& v = at(i, j);
            if (v < 0 || v > 1) throw internal_error("FractionalMatrix: entry outside [0,1]");
            bool inside = (v != 0 && v != 1);
            if (inside != bool(floating_[index(i, j)]))
                throw internal_error("FractionalMatrix: floating mask out of sync");
            floats += inside ? 1 : 0;
            sum += v;
        }
        if (sum != 1) throw internal_error("FractionalMatrix: row sum differs from 1");
        if (floats == 1) throw internal_error("FractionalMatrix: row with a single floating entry");
    }
}

FractionalMatrix fractional_center(const PointSet& s) {
    if (s.empty()) throw std::invalid_argument("fractional_center: empty set");
    int r = s.dimension(), n = s.alphabet();
    long m = static_cast<long>(s.size());
    FractionalMatrix a(r, n);
    for (int i = 0; i < r; ++i) {
        std::vector<long> counts(static_cast<std::size_t>(n), 0);
        for (const Word& w : s.members()) ++counts[static_cast<std::size_t>(w[static_cast<std::size_t>(i)] - 1)];
        for (int j = 0; j < n; ++j) {
            Rational v(counts[static_cast<std::size_t>(j)], m);
            v.canonicalize();
            a.set(i, j, v);
        }
    }
    a.validate();
    return a;
}

Rational linearized_distance(const FractionalMatrix& a, const Word& b) {
    Rational total(0);
    for (int i = 0; i < a.rows(); ++i) {
        int bi = symbol_at(b, static_cast<std::size_t>(i)) - 1;
        for (int j = 0; j < a.cols(); ++j)
            total += (j == bi) ? Rational(1) - a.at(i, j) : a.at(i, j);
    }
    return total;
}

Rational expected_distance(const FractionalMatrix& a, const Word& b) {
    Rational total(0);
    for (int i = 0; i < a.rows(); ++i) {
        int bi = symbol_at(b, static_cast<std::size_t>(i)) - 1;
        total += Rational(1) - a.at(i, bi);
    }
    return total;
}

namespace {

// A nonzero solution of M v = 0 with v = 1 at the first free column of the
// elimination and 0 at every other free column.
std::vector<Rational> null_direction(std::vector<std::vector<Rational>> mat, int ncols) {
    int nrows = static_cast<int>(mat.size());
    std::vector<int> pivot_cols;
    std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
    int row = 0;
    for (int col = 0; col < ncols && row < nrows; ++col) {
        int pr = -1;
        for (int i = row; i < nrows; ++i)
            if (mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(mat[static_cast<std::size_t>(row)], mat[static_cast<std::size_t>(pr)]);
        Rational lead = mat[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
        for (int j = col; j < ncols; ++j) mat[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] /= lead;
        for (int i = 0; i < nrows; ++i) {
            if (i == row) continue;
            Rational factor = mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
            if (factor != 0)
                for (int j = col; j < ncols; ++j)
                    mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                        factor * mat[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
        }
        pivot_cols.push_back(col);
        is_pivot[static_cast<std::size_t>(col)] = true;
        ++row;
    }
    int free_col = -1;
    for (int col = 0; col < ncols; ++col)
        if (!is_pivot[static_cast<std::size_t>(col)]) {
            free_col = col;
            break;
        }
    if (free_col < 0) throw internal_error("floating_round: constraint system has no free direction");
    std::vector<Rational> v(static_cast<std::size_t>(ncols), Rational(0));
    v[static_cast<std::size_t>(free_col)] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
        v[static_cast<std::size_t>(pivot_cols[i])] = -mat[i][static_cast<std::size_t>(free_col)];
    return v;
}

}  // namespace

FractionalMatrix floating_round(FractionalMatrix a, const PointSet& s) {
    if (s.empty()) throw std::invalid_argument("floating_round: empty set");
    if (a.rows() != s.dimension() || a.cols() != s.alphabet())
        throw std::invalid_argument("floating_round: matrix shape does not match the set");
    a.validate();

    int m = static_cast<int>(s.size());
    std::vector<Rational> wanted;
    wanted.reserve(s.size());
    for (const Word& b : s.members()) wanted.push_back(linearized_distance(a, b));

    int guard = a.rows() * a.cols() + 4;
    for (;;) {
        if (--guard < 0) throw internal_error("floating_round: failed to converge");

        std::vector<std::pair<int, int>> fvars;
        std::vector<bool> row_floats(static_cast<std::size_t>(a.rows()), false);
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j)
                if (a.floating(i, j)) {
                    fvars.emplace_back(i, j);
                    row_floats[static_cast<std::size_t>(i)] = true;
                }
        int f = static_cast<int>(std::count(row_floats.begin(), row_floats.end(), true));
        int fc = static_cast<int>(fvars.size());
        if (fc <= f + m) break;

        // Active system: one row-sum constraint per floating row (fully
        // frozen rows drop theirs), one linearized distance per member.
        std::vector<std::vector<Rational>> mat;
        for (int i = 0; i < a.rows(); ++i) {
            if (!row_floats[static_cast<std::size_t>(i)]) continue;
            std::vector<Rational> row(fvars.size(), Rational(0));
            for (std::size_t v = 0; v < fvars.size(); ++v)
                if (fvars[v].first == i) row[v] = 1;
            mat.push_back(std::move(row));
        }
        for (const Word& b : s.members()) {
            std::vector<Rational> row(fvars.size(), Rational(0));
            for (std::size_t v = 0; v < fvars.size(); ++v) {
                int bi = symbol_at(b, static_cast<std::size_t>(fvars[v].first)) - 1;
                row[v] = (fvars[v].second == bi) ? Rational(-1) : Rational(1);
            }
            mat.push_back(std::move(row));
        }

        std::vector<Rational> dir = null_direction(std::move(mat), fc);

        // Step to the first [0,1] boundary along the line.
        Rational step(-1);
        for (std::size_t v = 0; v < fvars.size(); ++v) {
            if (dir[v] == 0) continue;
            const Rational& x = a.at(fvars[v].first, fvars[v].second);
            Rational room = dir[v] > 0 ? (Rational(1) - x) / dir[v] : x / -dir[v];
            if (step < 0 || room < step) step = room;
        }
        if (step <= 0) throw internal_error("floating_round: degenerate step length");

        int frozen_before = a.rows() * a.cols() - fc;
        for (std::size_t v = 0; v < fvars.size(); ++v) {
            if (dir[v] == 0) continue;
            Rational x = a.at(fvars[v].first, fvars[v].second) + step * dir[v];
            a.set(fvars[v].first, fvars[v].second, x);
        }
        int frozen_after = a.rows() * a.cols() - a.floating_count();
        if (frozen_after <= frozen_before)
            throw internal_error("floating_round: step froze no variable");
    }

    a.validate();
    {
        std::size_t idx = 0;
        for (const Word& b : s.members())
            if (linearized_distance(a, b) != wanted[idx++])
                throw internal_error("floating_round: distance constraint drifted");
    }
    return a;
}

Word sample_center(const FractionalMatrix& a, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Rational two64 = Rational(mpz_class(1) << 64);
    Word out(static_cast<std::size_t>(a.rows()));
    for (int i = 0; i < a.rows(); ++i) {
        Rational x = Rational(mpz_class(rng())) / two64;
        Rational cumulative(0);
        int chosen = a.cols() - 1;
        for (int j = 0; j < a.cols(); ++j) {
            cumulative += a.at(i, j);
            if (x < cumulative) {
                chosen = j;
                break;
            }
        }
        out[static_cast<std::size_t>(i)] = static_cast<Symbol>(chosen + 1);
    }
    return out;
}

double default_lambda(int m) { return std::sqrt(2.0 * std::log(static_cast<double>(std::max(m, 1)))); }

int default_retries(int m, double lambda) {
    double budget = std::ceil(m * std::exp(lambda * lambda / 2.0));
    if (budget > 100000.0) budget = 100000.0;
    return std::max(64, static_cast<int>(budget));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::optional<Word> find_near_center(const PointSet& s, int d, const RoundingConfig& config) {
    if (s.empty()) throw std::invalid_argument("find_near_center: empty set");
    if (diameter(s) > d) throw std::invalid_argument("find_near_center: set diameter exceeds d");

    int m = static_cast<int>(s.size());
    double lambda = config.lambda > 0 ? config.lambda : default_lambda(m);
    int retries = config.retries > 0 ? config.retries : default_retries(m, lambda);
    int target = config.target_radius == RoundingConfig::kDefaultTarget ? d - 1 : config.target_radius;
    if (target < 0) return std::nullopt;

    FractionalMatrix rounded = floating_round(fractional_center(s), s);

    auto attempt = [&](int index) -> std::optional<Word> {
        Word c = sample_center(rounded, derive_seed(config.seed, static_cast<std::uint64_t>(index)));
        for (const Word& b : s.members())
            if (distance(c, b) > target) return std::nullopt;
        return c;
    };

    int threads = std::max(1, config.threads);
    if (threads == 1) {
        for (int t = 0; t < retries; ++t)
            if (auto c = attempt(t)) return c;
        return std::nullopt;
    }

    // The contract is the success with the smallest retry index, so each
    // worker walks its own stripe and the minimum wins.
    std::vector<std::optional<std::pair<int, Word>>> firsts(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            for (int t = w; t < retries; t += threads) {
                if (auto c = attempt(t)) {
                    firsts[static_cast<std::size_t>(w)] = {t, *c};
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    std::optional<std::pair<int, Word>> best;
    for (const auto& f : firsts)
        if (f && (!best || f->first < best->first)) best = f;
    if (best) return best->second;
    return std::nullopt;
}

}  // namespace dmax
