#include "dmax/canon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "dmax/maximality.hpp"

namespace dmax {

Isomorphism Isomorphism::identity(int dimension, int alphabet) {
    Isomorphism iso;
    iso.source.resize(static_cast<std::size_t>(dimension));
    std::iota(iso.source.begin(), iso.source.end(), 0);
    std::vector<Symbol> id(static_cast<std::size_t>(alphabet) + 1);
    for (int s = 1; s <= alphabet; ++s) id[static_cast<std::size_t>(s)] = static_cast<Symbol>(s);
    iso.symbol_maps.assign(static_cast<std::size_t>(dimension), id);
    return iso;
}

bool Isomorphism::valid(int alphabet) const {
    std::vector<bool> seen(source.size(), false);
    for (int c : source) {
        if (c < 0 || c >= static_cast<int>(source.size()) || seen[static_cast<std::size_t>(c)])
            return false;
        seen[static_cast<std::size_t>(c)] = true;
    }
    if (symbol_maps.size() != source.size()) return false;
    for (const auto& sm : symbol_maps) {
        if (sm.size() != static_cast<std::size_t>(alphabet) + 1) return false;
        std::vector<bool> hit(static_cast<std::size_t>(alphabet) + 1, false);
        for (int s = 1; s <= alphabet; ++s) {
            Symbol v = sm[static_cast<std::size_t>(s)];
            if (v < 1 || v > alphabet || hit[v]) return false;
            hit[v] = true;
        }
    }
    return true;
}

Word apply(const Isomorphism& iso, const Word& w) {
    Word out(iso.source.size());
    for (std::size_t i = 0; i < iso.source.size(); ++i)
        out[i] = iso.symbol_maps[i][symbol_at(w, static_cast<std::size_t>(iso.source[i]))];
    return out;
}

namespace {

std::vector<int> distance_multiset(const PointSet& s) {
    std::vector<int> d;
    const auto& m = s.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) d.push_back(distance(m[i], m[j]));
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

PointSet apply(const Isomorphism& iso, const PointSet& s) {
    if (!iso.valid(s.alphabet())) throw std::invalid_argument("apply: malformed isomorphism");
    if (iso.source.size() != static_cast<std::size_t>(s.dimension()))
        throw std::invalid_argument("apply: isomorphism dimension differs from set dimension");
    PointSet out(s.alphabet(), s.dimension());
    for (const Word& w : s.members()) out.insert(apply(iso, w));
    if (out.size() != s.size() || distance_multiset(out) != distance_multiset(s))
        throw internal_error("apply: isomorphism failed to preserve pairwise distances");
    return out;
}

namespace {

using SymbolPerm = std::vector<Symbol>;  // indexed by symbol, entry 0 unused

SymbolPerm inverse_perm(const SymbolPerm& p) {
    SymbolPerm inv(p.size());
    for (std::size_t s = 1; s < p.size(); ++s) inv[p[s]] = static_cast<Symbol>(s);
    return inv;
}

SymbolPerm compose(const SymbolPerm& outer, const SymbolPerm& inner) {
    SymbolPerm out(outer.size());
    for (std::size_t s = 1; s < outer.size(); ++s) out[s] = outer[inner[s]];
    return out;
}

bool is_identity(const SymbolPerm& p) {
    for (std::size_t s = 1; s < p.size(); ++s)
        if (p[s] != static_cast<Symbol>(s)) return false;
    return true;
}

std::vector<SymbolPerm> all_symbol_perms(int alphabet) {
    std::vector<Symbol> base(static_cast<std::size_t>(alphabet));
    std::iota(base.begin(), base.end(), Symbol(1));
    std::vector<SymbolPerm> out;
    do {
        SymbolPerm p(static_cast<std::size_t>(alphabet) + 1, 0);
        for (int s = 1; s <= alphabet; ++s) p[static_cast<std::size_t>(s)] = base[static_cast<std::size_t>(s - 1)];
        out.push_back(std::move(p));
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

// Automorphism of the reduced matrix: column c moves to col_map[c] while its
// symbols pass through sym_map[c].
struct MatrixAutomorphism {
    std::vector<int> col_map;
    std::vector<SymbolPerm> sym_map;
};

// Search for the minimal image of the reduced matrix under column
// permutations combined with per-column symbol permutations.  The objective
// is staged: the sorted list of q-column prefixes of the image, compared
// level by level.  Ties are explored with depth-first search; pairs of
// complete assignments reaching the same image yield automorphisms used to
// skip sibling branches (essential for highly symmetric inputs).
class Canonizer {
public:
    Canonizer(const std::vector<Word>& words, const std::vector<int>& columns, int alphabet)
        : words_(words), cols_(columns), n_(alphabet) {
        m_ = static_cast<int>(words.size());
        rr_ = static_cast<int>(columns.size());
        perms_ = all_symbol_perms(alphabet);
        used_.assign(static_cast<std::size_t>(rr_), false);
    }

    struct Placement {
        int col;  // index into cols_
        SymbolPerm relabel;
    };

    void run() {
        if (n_ > 8) throw std::invalid_argument("canonical_form: alphabet too large for canonical search");
        std::vector<int> order(static_cast<std::size_t>(m_));
        std::iota(order.begin(), order.end(), 0);
        std::vector<int> group(static_cast<std::size_t>(m_), 0);
        images_.assign(static_cast<std::size_t>(m_), Word());
        dfs(order, group, true);
        if (!have_best_) throw internal_error("canonical_form: search finished without a result");
    }

    std::vector<Word> best_sorted_;
    std::vector<Placement> best_assign_;

private:
    struct Candidate {
        std::vector<Symbol> signature;
        int col;
        int perm_index;
        std::vector<Symbol> newsym;  // word-indexed
    };

    void dfs(const std::vector<int>& order, const std::vector<int>& group, bool tied) {
        int depth = static_cast<int>(assign_.size());
        if (++nodes_ > 50'000'000) throw internal_error("canonical_form: search budget exceeded");
        if (depth == rr_) {
            std::vector<Word> sorted_image(static_cast<std::size_t>(m_));
            for (int pos = 0; pos < m_; ++pos)
                sorted_image[static_cast<std::size_t>(pos)] =
                    images_[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])];
            if (!have_best_ || sorted_image < best_sorted_) {
                best_sorted_ = std::move(sorted_image);
                best_assign_ = assign_;
                have_best_ = true;
            } else if (sorted_image == best_sorted_) {
                record_automorphism();
            }
            return;
        }

        // Children: every unused column with every symbol relabeling,
        // deduplicated per column by the induced symbol function.
        std::vector<Candidate> candidates;
        for (int c = 0; c < rr_; ++c) {
            if (used_[static_cast<std::size_t>(c)]) continue;
            std::set<std::vector<Symbol>> seen;
            for (int pi = 0; pi < static_cast<int>(perms_.size()); ++pi) {
                std::vector<Symbol> newsym(static_cast<std::size_t>(m_));
                for (int w = 0; w < m_; ++w)
                    newsym[static_cast<std::size_t>(w)] =
                        perms_[static_cast<std::size_t>(pi)]
                              [words_[static_cast<std::size_t>(w)][static_cast<std::size_t>(cols_[static_cast<std::size_t>(c)])]];
                if (!seen.insert(newsym).second) continue;
                candidates.push_back(
                    {stage_signature(order, group, newsym), c, pi, std::move(newsym)});
            }
        }
        std::vector<Symbol> minsig = candidates.front().signature;
        for (const auto& cand : candidates) minsig = std::min(minsig, cand.signature);

        if (have_best_ && tied) {
            std::vector<Symbol> best_sig(static_cast<std::size_t>(m_));
            for (int pos = 0; pos < m_; ++pos)
                best_sig[static_cast<std::size_t>(pos)] =
                    best_sorted_[static_cast<std::size_t>(pos)][static_cast<std::size_t>(depth)];
            if (minsig > best_sig) return;
        }

        std::vector<std::pair<int, SymbolPerm>> explored;
        for (auto& cand : candidates) {
            if (cand.signature != minsig) continue;
            bool child_tied = tied;
            if (have_best_ && tied) {
                std::vector<Symbol> best_sig(static_cast<std::size_t>(m_));
                for (int pos = 0; pos < m_; ++pos)
                    best_sig[static_cast<std::size_t>(pos)] =
                        best_sorted_[static_cast<std::size_t>(pos)][static_cast<std::size_t>(depth)];
                if (minsig > best_sig) return;
                child_tied = (minsig == best_sig);
            }
            const SymbolPerm& rho = perms_[static_cast<std::size_t>(cand.perm_index)];
            if (skippable(cand.col, rho, explored)) continue;

            assign_.push_back({cand.col, rho});
            used_[static_cast<std::size_t>(cand.col)] = true;
            for (int w = 0; w < m_; ++w)
                images_[static_cast<std::size_t>(w)].push_back(cand.newsym[static_cast<std::size_t>(w)]);

            auto [new_order, new_group] = refine(order, group, cand.newsym);
            dfs(new_order, new_group, child_tied);

            for (int w = 0; w < m_; ++w) images_[static_cast<std::size_t>(w)].pop_back();
            used_[static_cast<std::size_t>(cand.col)] = false;
            assign_.pop_back();
            explored.emplace_back(cand.col, rho);
        }
    }

    // Per prefix-group sorted multiset of the new column's symbols, read in
    // group order; comparable across candidates of one node and against the
    // incumbent best while the path is tied with it.
    std::vector<Symbol> stage_signature(const std::vector<int>& order, const std::vector<int>& group,
                                        const std::vector<Symbol>& newsym) const {
        std::vector<Symbol> sig(static_cast<std::size_t>(m_));
        int start = 0;
        while (start < m_) {
            int end = start;
            while (end < m_ && group[static_cast<std::size_t>(end)] == group[static_cast<std::size_t>(start)])
                ++end;
            for (int i = start; i < end; ++i)
                sig[static_cast<std::size_t>(i)] =
                    newsym[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
            std::sort(sig.begin() + start, sig.begin() + end);
            start = end;
        }
        return sig;
    }

    std::pair<std::vector<int>, std::vector<int>> refine(const std::vector<int>& order,
                                                         const std::vector<int>& group,
                                                         const std::vector<Symbol>& newsym) const {
        std::vector<int> new_order(static_cast<std::size_t>(m_));
        std::vector<int> new_group(static_cast<std::size_t>(m_));
        int start = 0, out = 0, gid = 0;
        while (start < m_) {
            int end = start;
            while (end < m_ && group[static_cast<std::size_t>(end)] == group[static_cast<std::size_t>(start)])
                ++end;
            for (Symbol s = 1; s <= static_cast<Symbol>(n_); ++s) {
                bool fresh = true;
                for (int i = start; i < end; ++i) {
                    int w = order[static_cast<std::size_t>(i)];
                    if (newsym[static_cast<std::size_t>(w)] == s) {
                        if (fresh) {
                            ++gid;
                            fresh = false;
                        }
                        new_order[static_cast<std::size_t>(out)] = w;
                        new_group[static_cast<std::size_t>(out)] = gid;
                        ++out;
                    }
                }
            }
            start = end;
        }
        return {new_order, new_group};
    }

    bool skippable(int col, const SymbolPerm& rho,
                   const std::vector<std::pair<int, SymbolPerm>>& explored) const {
        if (explored.empty() || autos_.empty()) return false;
        for (const auto& g : autos_) {
            bool fixes_node = true;
            for (const auto& placed : assign_) {
                if (g.col_map[static_cast<std::size_t>(placed.col)] != placed.col ||
                    !is_identity(g.sym_map[static_cast<std::size_t>(placed.col)])) {
                    fixes_node = false;
                    break;
                }
            }
            if (!fixes_node) continue;
            int mapped_col = g.col_map[static_cast<std::size_t>(col)];
            SymbolPerm mapped_rho = compose(rho, inverse_perm(g.sym_map[static_cast<std::size_t>(col)]));
            for (const auto& e : explored)
                if (e.first == mapped_col && e.second == mapped_rho) return true;
        }
        return false;
    }

    void record_automorphism() {
        if (autos_.size() >= 256) return;
        MatrixAutomorphism g;
        g.col_map.assign(static_cast<std::size_t>(rr_), -1);
        g.sym_map.assign(static_cast<std::size_t>(rr_), SymbolPerm());
        for (int i = 0; i < rr_; ++i) {
            int from = assign_[static_cast<std::size_t>(i)].col;
            int to = best_assign_[static_cast<std::size_t>(i)].col;
            g.col_map[static_cast<std::size_t>(from)] = to;
            g.sym_map[static_cast<std::size_t>(from)] =
                compose(inverse_perm(best_assign_[static_cast<std::size_t>(i)].relabel),
                        assign_[static_cast<std::size_t>(i)].relabel);
        }
        for (const auto& existing : autos_)
            if (existing.col_map == g.col_map && existing.sym_map == g.sym_map) return;
        MatrixAutomorphism inv;
        inv.col_map.assign(static_cast<std::size_t>(rr_), -1);
        inv.sym_map.assign(static_cast<std::size_t>(rr_), SymbolPerm());
        for (int c = 0; c < rr_; ++c) {
            int to = g.col_map[static_cast<std::size_t>(c)];
            inv.col_map[static_cast<std::size_t>(to)] = c;
            inv.sym_map[static_cast<std::size_t>(to)] = inverse_perm(g.sym_map[static_cast<std::size_t>(c)]);
        }
        autos_.push_back(std::move(g));
        if (autos_.size() < 256) autos_.push_back(std::move(inv));
    }

    const std::vector<Word>& words_;
    const std::vector<int>& cols_;
    int n_, m_ = 0, rr_ = 0;
    std::vector<SymbolPerm> perms_;
    std::vector<Placement> assign_;
    std::vector<bool> used_;
    std::vector<Word> images_;
    std::vector<MatrixAutomorphism> autos_;
    bool have_best_ = false;
    std::uint64_t nodes_ = 0;
};

}  // namespace

CanonicalResult canonical_form(const PointSet& s) {
    int r = s.dimension();
    int n = s.alphabet();

    // Support normalization: a constant column carries no information (any
    // constant column is isomorphic to an all-pad column), so drop them all.
    std::vector<int> live, constant;
    for (int c = 0; c < r; ++c) {
        bool is_const = true;
        for (std::size_t w = 1; w < s.size(); ++w)
            if (s.member(w)[static_cast<std::size_t>(c)] != s.member(0)[static_cast<std::size_t>(c)]) {
                is_const = false;
                break;
            }
        (s.empty() || is_const ? constant : live).push_back(c);
    }

    CanonicalResult out;
    out.certificate.source.clear();
    out.certificate.symbol_maps.clear();

    std::vector<Word> placed_words;
    if (!live.empty()) {
        Canonizer engine(s.members(), live, n);
        engine.run();
        out.form = PointSet(n, static_cast<int>(live.size()));
        for (const Word& w : engine.best_sorted_) out.form.insert(w);
        for (const auto& placement : engine.best_assign_) {
            out.certificate.source.push_back(live[static_cast<std::size_t>(placement.col)]);
            out.certificate.symbol_maps.push_back(placement.relabel);
        }
    } else {
        out.form = PointSet(n, 0);
        if (!s.empty()) out.form.insert(Word{});
    }

    // Dropped columns go to the tail, relabeled so their constant symbol
    // becomes the pad symbol.
    for (int c : constant) {
        out.certificate.source.push_back(c);
        SymbolPerm sm(static_cast<std::size_t>(n) + 1);
        for (int sym = 1; sym <= n; ++sym) sm[static_cast<std::size_t>(sym)] = static_cast<Symbol>(sym);
        if (!s.empty()) {
            Symbol v = s.member(0)[static_cast<std::size_t>(c)];
            std::swap(sm[static_cast<std::size_t>(v)], sm[static_cast<std::size_t>(kPadSymbol)]);
        }
        out.certificate.symbol_maps.push_back(std::move(sm));
    }

    if (!s.empty()) {
        PointSet image = apply(out.certificate, s);
        if (image != lifted_dimension(out.form, r))
            throw internal_error("canonical_form: certificate does not map the input onto the form");
    }
    return out;
}

bool are_isomorphic(const PointSet& a, const PointSet& b) {
    if (a.alphabet() != b.alphabet() || a.size() != b.size()) return false;
    if (distance_multiset(a) != distance_multiset(b)) return false;
    return canonical_form(a).form == canonical_form(b).form;
}

std::vector<PointSet> enumerate_types(int alphabet, int d, int r_max, int size_max) {
    if (alphabet < 2 || d < 0 || r_max < 0) throw std::invalid_argument("enumerate_types: bad parameters");
    double universe = std::pow(static_cast<double>(alphabet), r_max);
    if (universe > 1e6) throw std::invalid_argument("enumerate_types: n^r_max exceeds the 10^6 budget");
    if (size_max <= 0) {
        double cap = std::pow(2.0 * alphabet, d);
        size_max = cap > 4096 ? 4096 : static_cast<int>(cap);
    }

    std::map<PointSet, PointSet> reps;  // canonical form -> representative in [n]^{r_max}
    PointSet seed(alphabet, r_max);
    seed.insert(Word(static_cast<std::size_t>(r_max), kPadSymbol));
    reps.emplace(canonical_form(seed).form, seed);

    std::set<PointSet> results;
    for (int sz = 1; sz <= size_max && !reps.empty(); ++sz) {
        for (const auto& [form, rep] : reps) {
            if (diameter(rep) == d && verdict_infinite(rep, d).maximal()) results.insert(form);
        }
        if (sz == size_max) break;
        std::map<PointSet, PointSet> next;
        for (const auto& [form, rep] : reps) {
            for_each_word(alphabet, r_max, [&](const Word& c) {
                if (rep.contains(c)) return;
                for (const Word& b : rep.members())
                    if (distance(c, b) > d) return;
                PointSet grown = rep;
                grown.insert(c);
                PointSet key = canonical_form(grown).form;
                if (next.find(key) == next.end()) next.emplace(std::move(key), std::move(grown));
            });
        }
        reps = std::move(next);
    }
    return {results.begin(), results.end()};
}

}  // namespace dmax
