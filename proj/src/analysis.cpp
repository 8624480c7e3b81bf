#include "dmax/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace dmax {

Word far_point(const PointSet& s, const Word& target, int d, int slack) {
    if (s.empty()) throw std::invalid_argument("far_point: empty set");
    if (slack < 0) throw std::invalid_argument("far_point: negative slack");
    const Word* best = nullptr;
    int best_dist = -1;
    for (const Word& w : s.members()) {
        int dist = distance(w, target);
        if (dist > best_dist) {
            best_dist = dist;
            best = &w;
        }
    }
    if (best_dist < d - slack)
        throw internal_error("far_point: no member at distance d - L; the set is not maximal "
                             "in the lifting-stable sense (or the ball-freeness assumption fails)");
    return *best;
}

std::pair<Template, RefinementTrace> refine_template(const PointSet& selection, const PointSet& s,
                                                     const Word& base, const Template& t, int k,
                                                     int slack, int d) {
    int r = s.dimension();
    int n = s.alphabet();
    if (t.length() != static_cast<std::size_t>(r))
        throw std::invalid_argument("refine_template: template length differs from dimension");
    if (!t.is_regular_for(base))
        throw std::invalid_argument("refine_template: template not regular for the base word");
    int m = t.weight();
    if (slack < 0 || 2 * slack > d) throw std::invalid_argument("refine_template: need 0 <= 2L <= d");
    if (m > k || k > d) throw std::invalid_argument("refine_template: need weight <= k <= d");
    if (k - m - slack < 1)
        throw std::invalid_argument("refine_template: no step available, k - m - L < 1");
    if (selection.empty()) throw std::invalid_argument("refine_template: empty selection");
    if (diameter(s) > d) throw std::invalid_argument("refine_template: set diameter exceeds d");
    for (const Word& z : selection.members()) {
        if (!s.contains(z) || distance(z, base) != k || !t.fits(z))
            throw std::invalid_argument(
                "refine_template: selection must lie in the k-shell filtered by the template");
    }

    RefinementTrace trace;
    trace.completion.resize(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        trace.completion[static_cast<std::size_t>(i)] =
            t.entries[static_cast<std::size_t>(i)] != Template::wildcard
                ? t.entries[static_cast<std::size_t>(i)]
                : symbol_at(base, static_cast<std::size_t>(i));

    trace.far_word = far_point(s, trace.completion, d, slack);

    for (int i = 0; i < r; ++i) {
        if (symbol_at(trace.far_word, static_cast<std::size_t>(i)) ==
            trace.completion[static_cast<std::size_t>(i)])
            continue;
        if (t.entries[static_cast<std::size_t>(i)] != Template::wildcard)
            trace.fixed_diffs.push_back(i);
        else
            trace.wildcard_diffs.push_back(i);
    }
    int na = static_cast<int>(trace.fixed_diffs.size());
    int nb = static_cast<int>(trace.wildcard_diffs.size());
    if (na + nb < d - slack)
        throw internal_error("refine_template: far word too close to the completion");
    if ((m - na) + nb > d)
        throw internal_error("refine_template: far word exceeds the diameter against the base");

    for (const Word& z : selection.members()) {
        int agree = 0, third = 0;
        for (int i : trace.wildcard_diffs) {
            Symbol zi = symbol_at(z, static_cast<std::size_t>(i));
            Symbol fi = symbol_at(trace.far_word, static_cast<std::size_t>(i));
            Symbol bi = symbol_at(base, static_cast<std::size_t>(i));
            if (zi == fi)
                ++agree;
            else if (zi != bi)
                ++third;
        }
        trace.far_agree_counts.push_back(agree);
        trace.third_counts.push_back(third);
    }

    // Most popular (position, symbol) pair over the selection, restricted to
    // wildcard-diff positions and non-base symbols; ties prefer the smallest
    // position, then the smallest symbol.
    long best_count = -1;
    for (int i : trace.wildcard_diffs) {
        std::vector<long> counts(static_cast<std::size_t>(n) + 1, 0);
        for (const Word& z : selection.members())
            ++counts[symbol_at(z, static_cast<std::size_t>(i))];
        for (Symbol sym = 1; sym <= static_cast<Symbol>(n); ++sym) {
            if (sym == symbol_at(base, static_cast<std::size_t>(i))) continue;
            if (counts[sym] > best_count) {
                best_count = counts[sym];
                trace.chosen_position = i;
                trace.chosen_symbol = sym;
            }
        }
    }
    if (trace.chosen_position < 0)
        throw internal_error("refine_template: no wildcard-diff position to fix");

    trace.kept_ratio = Rational(best_count, static_cast<long>(selection.size()));
    trace.kept_ratio.canonicalize();
    trace.guarantee = Rational(2 * (k - m - slack), static_cast<long>(n) * (2 * d - m - slack));
    trace.guarantee.canonicalize();
    if (trace.kept_ratio < trace.guarantee)
        throw internal_error("refine_template: refinement guarantee violated");

    Template refined = t;
    refined.entries[static_cast<std::size_t>(trace.chosen_position)] = trace.chosen_symbol;
    return {refined, trace};
}

std::vector<std::pair<Template, RefinementTrace>> refinement_chain(const PointSet& s,
                                                                   const Word& base, int k,
                                                                   int slack, int d) {
    std::vector<std::pair<Template, RefinementTrace>> steps;
    Template t = Template::all_wildcards(static_cast<std::size_t>(s.dimension()));
    PointSet selection = shell(s, base, k);
    for (int m = 0; k - m - slack >= 1; ++m) {
        auto [refined, trace] = refine_template(selection, s, base, t, k, slack, d);
        selection = filter_by_template(selection, refined);
        t = refined;
        steps.emplace_back(t, std::move(trace));
        if (selection.empty()) break;  // cannot happen while the guarantee holds
    }
    return steps;
}

namespace {

struct SunflowerSearch {
    int p;
    long nodes = 0;
    static constexpr long kNodeBudget = 200000;

    std::optional<SetSunflower> run(const std::vector<std::vector<int>>& family,
                                    const std::vector<int>& active) {
        if (++nodes > kNodeBudget) return std::nullopt;
        // Greedy maximal pairwise-disjoint subfamily, in index order.
        std::vector<int> picked;
        std::set<int> used;
        for (int idx : active) {
            bool disjoint = true;
            for (int e : family[static_cast<std::size_t>(idx)])
                if (used.count(e)) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            picked.push_back(idx);
            for (int e : family[static_cast<std::size_t>(idx)]) used.insert(e);
        }
        if (static_cast<int>(picked.size()) >= p) {
            picked.resize(static_cast<std::size_t>(p));
            return SetSunflower{picked, {}};
        }
        // Recurse through elements by popularity.
        std::map<int, int> freq;
        for (int idx : active)
            for (int e : family[static_cast<std::size_t>(idx)]) ++freq[e];
        std::vector<std::pair<int, int>> order;  // (-count, element)
        for (auto& [e, c] : freq) order.emplace_back(-c, e);
        std::sort(order.begin(), order.end());
        for (auto& [negc, e] : order) {
            if (-negc < p) break;  // fewer than p sets share e
            std::vector<int> sub_active;
            for (int idx : active)
                if (std::binary_search(family[static_cast<std::size_t>(idx)].begin(),
                                       family[static_cast<std::size_t>(idx)].end(), e))
                    sub_active.push_back(idx);
            std::vector<std::vector<int>> sub_family = family;
            for (int idx : sub_active) {
                auto& fs = sub_family[static_cast<std::size_t>(idx)];
                fs.erase(std::find(fs.begin(), fs.end(), e));
            }
            if (auto found = run(sub_family, sub_active)) {
                found->core.push_back(e);
                std::sort(found->core.begin(), found->core.end());
                return found;
            }
        }
        return std::nullopt;
    }
};

}  // namespace

bool is_set_sunflower(const std::vector<std::vector<int>>& family, const std::vector<int>& indices) {
    if (indices.size() < 2) return true;
    std::vector<int> core;
    bool first = true;
    for (std::size_t a = 0; a < indices.size(); ++a)
        for (std::size_t b = a + 1; b < indices.size(); ++b) {
            std::vector<int> inter;
            const auto& sa = family[static_cast<std::size_t>(indices[a])];
            const auto& sb = family[static_cast<std::size_t>(indices[b])];
            std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                  std::back_inserter(inter));
            if (first) {
                core = inter;
                first = false;
            } else if (inter != core) {
                return false;
            }
        }
    return true;
}

std::optional<SetSunflower> find_set_sunflower(const std::vector<std::vector<int>>& family, int p) {
    if (p < 1) throw std::invalid_argument("find_set_sunflower: p must be positive");
    std::set<std::vector<int>> distinct;
    for (const auto& f : family) {
        if (!std::is_sorted(f.begin(), f.end()))
            throw std::invalid_argument("find_set_sunflower: sets must be sorted");
        if (!distinct.insert(f).second)
            throw std::invalid_argument("find_set_sunflower: sets must be distinct");
    }
    if (static_cast<int>(family.size()) < p) return std::nullopt;
    std::vector<int> active(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) active[i] = static_cast<int>(i);
    SunflowerSearch search{p};
    auto found = search.run(family, active);
    if (found && !is_set_sunflower(family, found->member_indices))
        throw internal_error("find_set_sunflower: candidate failed the definition check");
    return found;
}

bool is_word_sunflower(const std::vector<Word>& words, const Word& base) {
    if (words.empty()) return false;
    std::size_t len = base.size();
    for (const Word& w : words) len = std::max(len, w.size());
    for (std::size_t i = 0; i < len; ++i) {
        bool all_equal = true;
        for (const Word& w : words)
            if (symbol_at(w, i) != symbol_at(words[0], i)) {
                all_equal = false;
                break;
            }
        if (all_equal) continue;
        int differing = 0;
        for (const Word& w : words)
            if (symbol_at(w, i) != symbol_at(base, i)) ++differing;
        if (differing != 1) return false;
    }
    return true;
}

std::optional<WordSunflower> find_word_sunflower(const PointSet& x, const Word& base, int p) {
    if (x.empty()) throw std::invalid_argument("find_word_sunflower: empty set");
    if (p < 1) throw std::invalid_argument("find_word_sunflower: p must be positive");
    int n = x.alphabet();
    int r = x.dimension();
    Word w = padded(base, static_cast<std::size_t>(r));
    int k = distance(x.member(0), w);
    for (const Word& a : x.members())
        if (distance(a, w) != k)
            throw std::invalid_argument("find_word_sunflower: members at unequal distances from the base");

    auto stem_of = [&](const std::vector<Word>& words) {
        std::vector<int> stem;
        for (int i = 0; i < r; ++i) {
            bool all_equal = true;
            for (const Word& a : words)
                if (a[static_cast<std::size_t>(i)] != words[0][static_cast<std::size_t>(i)]) {
                    all_equal = false;
                    break;
                }
            if (all_equal && words[0][static_cast<std::size_t>(i)] != w[static_cast<std::size_t>(i)])
                stem.push_back(i);
        }
        return stem;
    };

    if (p == 1) {
        WordSunflower out;
        out.member_indices = {0};
        out.members = {x.member(0)};
        out.stem = stem_of(out.members);
        return out;
    }
    if (p < n)
        throw std::invalid_argument(
            "find_word_sunflower: need p >= alphabet size for the set encoding to transfer");
    if (static_cast<int>(x.size()) < p) return std::nullopt;

    // Normalize the base to the all-n word by swapping base_i with n at
    // every coordinate, then encode each member as a 2k-element set: the
    // coordinates it moves plus the (coordinate, symbol) pairs it lands on.
    std::vector<std::vector<int>> family;
    family.reserve(x.size());
    for (const Word& a : x.members()) {
        std::vector<int> enc;
        for (int i = 0; i < r; ++i) {
            Symbol ai = a[static_cast<std::size_t>(i)];
            Symbol wi = w[static_cast<std::size_t>(i)];
            Symbol normalized = ai == wi ? static_cast<Symbol>(n) : (ai == n ? wi : ai);
            if (normalized == static_cast<Symbol>(n)) continue;
            enc.push_back(i * n + (n - 1));           // the moved coordinate
            enc.push_back(i * n + (normalized - 1));  // the landing symbol
        }
        std::sort(enc.begin(), enc.end());
        if (static_cast<int>(enc.size()) != 2 * k)
            throw internal_error("find_word_sunflower: encoding size differs from 2k");
        family.push_back(std::move(enc));
    }

    auto found = find_set_sunflower(family, p);
    if (!found) return std::nullopt;

    WordSunflower out;
    out.member_indices = found->member_indices;
    for (int idx : found->member_indices) out.members.push_back(x.member(static_cast<std::size_t>(idx)));
    if (!is_word_sunflower(out.members, w))
        throw internal_error("find_word_sunflower: encoded sunflower failed the positionwise check");
    out.stem = stem_of(out.members);
    return out;
}

ShellProfile shell_profile(const PointSet& s, const Word& base, int k,
                           std::optional<int> declared_d) {
    PointSet sk = shell(s, base, k);
    if (sk.empty()) throw std::invalid_argument("shell_profile: empty shell");
    int r = s.dimension(), n = s.alphabet();
    long sz = static_cast<long>(sk.size());
    Word w = padded(base, static_cast<std::size_t>(r));

    ShellProfile out;
    out.k = k;
    out.symbol_probs.assign(static_cast<std::size_t>(r),
                            std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    out.mismatch.assign(static_cast<std::size_t>(r), Rational(0));
    for (int i = 0; i < r; ++i) {
        std::vector<long> counts(static_cast<std::size_t>(n) + 1, 0);
        for (const Word& z : sk.members()) ++counts[z[static_cast<std::size_t>(i)]];
        for (int l = 1; l <= n; ++l) {
            Rational q(counts[static_cast<std::size_t>(l)], sz);
            q.canonicalize();
            out.symbol_probs[static_cast<std::size_t>(i)][static_cast<std::size_t>(l - 1)] = q;
        }
        Rational pi(sz - counts[w[static_cast<std::size_t>(i)]], sz);
        pi.canonicalize();
        out.mismatch[static_cast<std::size_t>(i)] = pi;
    }

    Rational sum(0), sum_sq(0);
    for (const Rational& pi : out.mismatch) {
        sum += pi;
        sum_sq += pi * pi;
    }
    if (sum != k) throw internal_error("shell_profile: mismatch probabilities do not sum to k");
    if (declared_d) {
        if (diameter(s) > *declared_d)
            throw std::invalid_argument("shell_profile: declared diameter below the true diameter");
        Rational floor = Rational(2 * k - *declared_d, 2);
        floor.canonicalize();
        if (sum_sq < floor)
            throw internal_error("shell_profile: squared-mismatch identity violated");
    }
    return out;
}

BinaryProfile binary_profile(const PointSet& s, const Word& base, int k, int prefix_length) {
    if (s.alphabet() != 2) throw std::invalid_argument("binary_profile: alphabet must be binary");
    if (prefix_length < 0) throw std::invalid_argument("binary_profile: negative prefix length");
    ShellProfile profile = shell_profile(s, base, k);

    BinaryProfile out;
    out.prefix_length = prefix_length;
    out.sorted_mismatch = profile.mismatch;
    std::sort(out.sorted_mismatch.begin(), out.sorted_mismatch.end(),
              [](const Rational& a, const Rational& b) { return a > b; });

    out.delta = 0;
    out.p_big = 0;
    out.p_small = 0;
    Rational half(1, 2);
    for (int i = 0; i < prefix_length; ++i) {
        Rational pi = i < static_cast<int>(out.sorted_mismatch.size())
                          ? out.sorted_mismatch[static_cast<std::size_t>(i)]
                          : Rational(0);
        out.delta += pi - half;
        out.p_big += pi;
    }
    for (int i = prefix_length; i < static_cast<int>(out.sorted_mismatch.size()); ++i)
        out.p_small += out.sorted_mismatch[static_cast<std::size_t>(i)];
    if (out.p_big + out.p_small != k)
        throw internal_error("binary_profile: prefix and tail sums do not add to k");
    return out;
}

double sunflower_size_estimate(int p, int k, double c) {
    if (k < 0) throw std::invalid_argument("sunflower_size_estimate: negative k");
    if (k == 0) return 1.0;
    return std::pow(c * p * std::log(static_cast<double>(k)), k);
}

namespace {

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

double binary_entropy(double x) {
    double h = 0;
    if (x > 0) h -= x * std::log2(x);
    if (x < 1) h -= (1 - x) * std::log2(1 - x);
    return h;
}

}  // namespace

BoundTable bound_table(int n, int d, int L, double sunflower_constant) {
    if (n < 2 || d < 1 || L < 0 || 2 * L > d) throw std::invalid_argument("bound_table: bad parameters");
    BoundTable out;
    out.n = n;
    out.d = d;
    out.L = L;
    out.sunflower_constant = sunflower_constant;

    mpz_ui_pow_ui(out.weak_bound.get_mpz_t(), static_cast<unsigned long>(2 * n),
                  static_cast<unsigned long>(d));

    double growth = n + 8.0 * std::pow(static_cast<double>(n), 2.0 / 3.0);
    out.size_bound = static_cast<double>(d) * d * std::pow(growth, d);
    out.core_size_bound = std::pow(static_cast<double>(d), 2 * L + 2) * std::pow(growth, d);

    for (int k = 0; k <= d; ++k) {
        mpz_class num, den;
        mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(k));
        Rational b(num * binomial(static_cast<unsigned long>(2 * d), static_cast<unsigned long>(k)), den);
        b.canonicalize();
        out.shell_bounds.push_back(b);
    }
    for (int k = 0; k <= 2 * d; ++k)
        out.sunflower_bounds.push_back(sunflower_size_estimate(d + n, k, sunflower_constant));

    out.lower_bound_log2 = 0.5 * std::pow(d / std::log2(2.0 * d), 2.0 / 3.0);
    out.lower_bound_ln = 0.5 * std::pow(d / std::log(2.0 * d), 2.0 / 3.0);

    mpz_class bin_num, bin_den;
    mpz_ui_pow_ui(bin_num.get_mpz_t(), 39999999999UL, static_cast<unsigned long>(d));
    mpz_ui_pow_ui(bin_den.get_mpz_t(), 10000000000UL, static_cast<unsigned long>(d));
    out.binary_bound = Rational(bin_num, bin_den);
    out.binary_bound.canonicalize();

    if (d < 2 * n) {
        double h = binary_entropy(static_cast<double>(d) / (2.0 * n));
        out.entropy_bound = std::pow(2.0, n * h + 1.0);
    }
    return out;
}

namespace {

int max_clique_size(const std::vector<std::uint64_t>& adj) {
    const int v_count = static_cast<int>(adj.size());
    std::vector<int> from(static_cast<std::size_t>(v_count) + 1, 0);
    int best = 0;
    std::function<void(std::uint64_t, int)> expand = [&](std::uint64_t cand, int size) {
        if (cand == 0) {
            best = std::max(best, size);
            return;
        }
        while (cand) {
            if (size + std::popcount(cand) <= best) return;
            int v = std::countr_zero(cand);
            cand &= cand - 1;
            if (size + 1 + from[static_cast<std::size_t>(v) + 1] <= best) continue;
            expand(cand & adj[static_cast<std::size_t>(v)], size + 1);
        }
        best = std::max(best, size);
    };
    for (int i = v_count - 1; i >= 0; --i) {
        std::uint64_t above = (i + 1 < 64) ? (~0ULL << (i + 1)) : 0ULL;
        expand(adj[static_cast<std::size_t>(i)] & above, 1);
        from[static_cast<std::size_t>(i)] = best;
    }
    return best;
}

}  // namespace

int kleitman_oracle(int n_dim, int d) {
    if (n_dim < 1 || n_dim > 5)
        throw std::invalid_argument("kleitman_oracle: dimension budget is 1..5");
    if (d < 0 || d >= n_dim) throw std::invalid_argument("kleitman_oracle: need 0 <= d < n_dim");

    int v_count = 1 << n_dim;
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(v_count), 0);
    for (int a = 0; a < v_count; ++a)
        for (int b = 0; b < v_count; ++b)
            if (a != b && std::popcount(static_cast<unsigned>(a ^ b)) <= d)
                adj[static_cast<std::size_t>(a)] |= 1ULL << b;
    int found = max_clique_size(adj);

    auto ball_count = [](int dim, int radius) {
        long total = 0;
        for (int j = 0; j <= radius; ++j)
            total += binomial(static_cast<unsigned long>(dim), static_cast<unsigned long>(j)).get_si();
        return total;
    };
    long expected = d % 2 == 0 ? ball_count(n_dim, d / 2) : 2 * ball_count(n_dim - 1, (d - 1) / 2);
    if (found != expected)
        throw internal_error("kleitman_oracle: clique search disagrees with the ball formula");
    return found;
}

}  // namespace dmax
