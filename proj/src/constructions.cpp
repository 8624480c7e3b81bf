#include "dmax/constructions.hpp"

#include <algorithm>
#include <string>

namespace dmax {

PointSet cube(int alphabet, int d) {
    if (alphabet < 2) throw std::invalid_argument("cube: alphabet size must be at least 2");
    if (d < 1) throw std::invalid_argument("cube: diameter must be at least 1");
    PointSet out(alphabet, d);
    for_each_word(alphabet, d, [&](const Word& w) { out.insert(w); });
    return out;
}

namespace {

// Inserts the indicator words of all size-`count` subsets of the first
// `universe` coordinates, extended by `suffix` extra coordinates filled as
// directed by `tail` (0 or 1 appended 2-symbols at the last position).
void insert_subsets(PointSet& out, int universe, int count, int dimension, bool mark_last) {
    std::vector<int> pick(count);
    for (int i = 0; i < count; ++i) pick[i] = i;
    for (;;) {
        Word w(static_cast<std::size_t>(dimension), 1);
        for (int p : pick) w[static_cast<std::size_t>(p)] = 2;
        if (mark_last) w[static_cast<std::size_t>(dimension - 1)] = 2;
        out.insert(w);
        int i = count - 1;
        while (i >= 0 && pick[i] == universe - count + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < count; ++j) pick[j] = pick[j - 1] + 1;
    }
}

}  // namespace

PointSet binary_maximal(int d) {
    if (d < 2) throw std::invalid_argument("binary_maximal: diameter must be at least 2");
    int k = d / 2;
    if (d % 2 == 0) {
        int r = 3 * k;
        PointSet out(2, r);
        out.insert(Word(static_cast<std::size_t>(r), 1));  // the empty set
        insert_subsets(out, r, 2 * k, r, false);
        return out;
    }
    int r = 3 * k + 1;
    PointSet out(2, r);
    // Both extensions of every even-family member over the extra coordinate.
    out.insert(Word(static_cast<std::size_t>(r), 1));
    Word tail(static_cast<std::size_t>(r), 1);
    tail[static_cast<std::size_t>(r - 1)] = 2;
    out.insert(tail);
    insert_subsets(out, 3 * k, 2 * k, r, false);
    insert_subsets(out, 3 * k, 2 * k, r, true);
    return out;
}

namespace {

bool is_prime(int q) {
    if (q < 2) return false;
    for (int f = 2; f * f <= q; ++f)
        if (q % f == 0) return false;
    return true;
}

bool order_reachable(int order) {
    if (order == 1 || order == 2) return true;
    if (order % 2 == 0 && order_reachable(order / 2)) return true;
    if (order % 4 == 0 && is_prime(order - 1) && (order - 1) % 4 == 3) return true;
    return false;
}

std::vector<std::vector<int>> sylvester_double(const std::vector<std::vector<int>>& h) {
    int m = static_cast<int>(h.size());
    std::vector<std::vector<int>> out(2 * m, std::vector<int>(2 * m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            out[i][j] = h[i][j];
            out[i][j + m] = h[i][j];
            out[i + m][j] = h[i][j];
            out[i + m][j + m] = -h[i][j];
        }
    return out;
}

std::vector<std::vector<int>> paley_matrix(int order) {
    int q = order - 1;
    // Quadratic character table of GF(q).
    std::vector<int> chi(q, -1);
    chi[0] = 0;
    for (int x = 1; x < q; ++x) chi[(x * x) % q] = 1;
    // Skew conference matrix plus the identity.
    std::vector<std::vector<int>> h(order, std::vector<int>(order));
    h[0][0] = 1;
    for (int j = 1; j < order; ++j) h[0][j] = 1;
    for (int i = 1; i < order; ++i) h[i][0] = -1;
    for (int i = 1; i < order; ++i)
        for (int j = 1; j < order; ++j)
            h[i][j] = (i == j) ? 1 : chi[((j - i) % q + q) % q];
    return h;
}

void normalize(std::vector<std::vector<int>>& h) {
    int m = static_cast<int>(h.size());
    for (int i = 0; i < m; ++i)
        if (h[i][0] < 0)
            for (int j = 0; j < m; ++j) h[i][j] = -h[i][j];
    for (int j = 0; j < m; ++j)
        if (h[0][j] < 0)
            for (int i = 0; i < m; ++i) h[i][j] = -h[i][j];
}

std::vector<std::vector<int>> build_hadamard(int order) {
    if (order == 1) return {{1}};
    if (order == 2) return {{1, 1}, {1, -1}};
    if (order % 2 == 0 && order_reachable(order / 2))
        return sylvester_double(build_hadamard(order / 2));
    if (order % 4 == 0 && is_prime(order - 1) && (order - 1) % 4 == 3) return paley_matrix(order);
    throw unsupported_order("hadamard_matrix: order " + std::to_string(order) +
                            " is not reachable by the implemented constructions");
}

}  // namespace

std::vector<std::vector<int>> hadamard_matrix(int order) {
    if (order < 1) throw unsupported_order("hadamard_matrix: order must be positive");
    if (order > 2 && order % 4 != 0)
        throw unsupported_order("hadamard_matrix: order " + std::to_string(order) +
                                " must be 1, 2, or a multiple of 4");
    auto h = build_hadamard(order);
    normalize(h);
    // Orthogonality check: any two rows agree in exactly order/2 positions.
    for (int i = 0; i < order; ++i)
        for (int j = i + 1; j < order; ++j) {
            int dot = 0;
            for (int c = 0; c < order; ++c) dot += h[i][c] * h[j][c];
            if (dot != 0) throw internal_error("hadamard_matrix: constructed rows not orthogonal");
        }
    return h;
}

PointSet hadamard_set(int d) {
    if (d < 1) throw std::invalid_argument("hadamard_set: diameter must be at least 1");
    auto h = hadamard_matrix(2 * d);
    PointSet out(2, 2 * d);
    for (const auto& row : h) {
        Word w;
        w.reserve(row.size());
        for (int v : row) w.push_back(v > 0 ? 1 : 2);
        out.insert(std::move(w));
    }
    if (out.size() != static_cast<std::size_t>(2 * d))
        throw internal_error("hadamard_set: duplicate rows");
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (distance(out.member(i), out.member(j)) != d)
                throw internal_error("hadamard_set: pairwise distance differs from d");
    return out;
}

PointSet construct(const ConstructionSpec& spec) {
    switch (spec.family) {
        case Family::Cube:
            return cube(spec.n, spec.d);
        case Family::BinaryEven:
            if (spec.d % 2 != 0)
                throw std::invalid_argument("construct: even binary family needs an even diameter");
            return binary_maximal(spec.d);
        case Family::BinaryOdd:
            if (spec.d % 2 != 1)
                throw std::invalid_argument("construct: odd binary family needs an odd diameter");
            return binary_maximal(spec.d);
        case Family::Hadamard: {
            int order = spec.order > 0 ? spec.order : 2 * spec.d;
            if (order != 2 * spec.d)
                throw std::invalid_argument("construct: hadamard order must equal 2*d");
            return hadamard_set(spec.d);
        }
    }
    throw std::invalid_argument("construct: unknown family");
}

LiftCheck check_lift_hypothesis(const PointSet& s, int d) {
    if (diameter(s) != d)
        throw std::invalid_argument("check_lift_hypothesis: set diameter differs from declared d");
    LiftCheck out;
    const auto& m = s.members();
    out.witness.assign(m.size(), std::vector<int>(static_cast<std::size_t>(s.dimension()), -1));
    for (std::size_t a = 0; a < m.size(); ++a) {
        for (int i = 0; i < s.dimension(); ++i) {
            for (std::size_t b = 0; b < m.size(); ++b) {
                if (m[a][static_cast<std::size_t>(i)] == m[b][static_cast<std::size_t>(i)] &&
                    distance(m[a], m[b]) == d) {
                    out.witness[a][static_cast<std::size_t>(i)] = static_cast<int>(b);
                    break;
                }
            }
            if (out.witness[a][static_cast<std::size_t>(i)] < 0 && !out.first_failure) {
                out.holds = false;
                out.first_failure = {static_cast<int>(a), i};
            }
        }
    }
    out.holds = !out.first_failure.has_value();
    return out;
}

}  // namespace dmax
