// analysis.hpp -- structural machinery around maximal-diameter sets: far
// points, the constructive template-refinement step, sunflower search on
// set families and on words, shell statistics with their exact identities,
// closed-form bound evaluation, and a tiny-scale exact oracle for the
// largest diameter-d subset of a binary cube.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dmax/core.hpp"
#include "dmax/rational.hpp"

namespace dmax {

// Member of `s` farthest from `target` (ties broken lexicographically).
// For a set that is maximal in the lifting-stable sense the maximum is at
// least d - slack; a smaller maximum means the preconditions were violated
// and raises internal_error.
Word far_point(const PointSet& s, const Word& target, int d, int slack);

struct RefinementTrace {
    Word completion;                    // template entries where fixed, base word elsewhere
    Word far_word;                      // far member against the completion
    std::vector<int> fixed_diffs;       // positions where far_word differs and the template is fixed
    std::vector<int> wildcard_diffs;    // positions where far_word differs at a wildcard
    std::vector<int> far_agree_counts;  // per member: wildcard-diff positions matching far_word
    std::vector<int> third_counts;      // per member: wildcard-diff positions avoiding both words
    int chosen_position = -1;
    Symbol chosen_symbol = 0;
    Rational kept_ratio;                // |refined selection| / |selection|
    Rational guarantee;                 // (1/n) (k-m-L) / (d - m/2 - L/2)
};

// One step of template refinement: fixes one wildcard position (among those
// where the far member differs) to the most popular non-base symbol there,
// keeping at least the guaranteed fraction of `selection`.  `selection`
// must be a subset of shell(s, base, k) filtered by `t`; the step requires
// k - weight(t) - slack >= 1.  The kept fraction is checked exactly.
std::pair<Template, RefinementTrace> refine_template(const PointSet& selection, const PointSet& s,
                                                     const Word& base, const Template& t, int k,
                                                     int slack, int d);

// Runs refine_template from the empty template up to weight k - slack,
// always selecting inside shell(s, base, k).
std::vector<std::pair<Template, RefinementTrace>> refinement_chain(const PointSet& s,
                                                                   const Word& base, int k,
                                                                   int slack, int d);

struct SetSunflower {
    std::vector<int> member_indices;  // indices into the family
    std::vector<int> core;            // the common pairwise intersection
};

// Constructive search for p sets with identical pairwise intersections:
// greedily extracts a maximal disjoint subfamily, otherwise recurses on the
// subfamily through a popular element.  Sets must be distinct.
std::optional<SetSunflower> find_set_sunflower(const std::vector<std::vector<int>>& family, int p);

bool is_set_sunflower(const std::vector<std::vector<int>>& family, const std::vector<int>& indices);

struct WordSunflower {
    std::vector<int> member_indices;  // indices into the point set's member list
    std::vector<Word> members;
    std::vector<int> stem;  // coordinates where all members agree and differ from the base
};

// p members such that at every coordinate either all agree or exactly one
// differs from `base`.  All members must be at one common distance k from
// `base`; each member is encoded as a 2k-element set and the set-family
// search above does the work.  Requires p = 1 or p >= alphabet.
std::optional<WordSunflower> find_word_sunflower(const PointSet& x, const Word& base, int p);

bool is_word_sunflower(const std::vector<Word>& words, const Word& base);

struct ShellProfile {
    int k = 0;
    std::vector<Rational> mismatch;                   // per coordinate: Pr[z_i != base_i]
    std::vector<std::vector<Rational>> symbol_probs;  // per coordinate and symbol: Pr[z_i = l]
};

// Exact per-coordinate statistics of shell(s, base, k).  The mismatch
// probabilities sum to exactly k; when a diameter bound d is declared the
// sum of their squares is verified to be at least k - d/2.
ShellProfile shell_profile(const PointSet& s, const Word& base, int k,
                           std::optional<int> declared_d = std::nullopt);

struct BinaryProfile {
    int prefix_length = 0;
    std::vector<Rational> sorted_mismatch;  // mismatch probabilities, largest first
    Rational delta;                         // prefix excess over 1/2 per coordinate
    Rational p_big;                         // prefix sum
    Rational p_small;                       // tail sum; p_big + p_small = k
};

BinaryProfile binary_profile(const PointSet& s, const Word& base, int k, int prefix_length);

struct BoundTable {
    int n = 0, d = 0, L = 0;
    double sunflower_constant = 5.0;
    mpz_class weak_bound;                  // (2n)^d
    double size_bound = 0;                 // d^2 (n + 8 n^{2/3})^d
    double core_size_bound = 0;            // d^{2L+2} (n + 8 n^{2/3})^d, constant left at 1
    std::vector<Rational> shell_bounds;    // k = 0..d: (n/2)^k C(2d, k)
    std::vector<double> sunflower_bounds;  // k = 0..2d: estimate for argument p = d + n
    double lower_bound_log2 = 0;           // (1/2)(d / log2(2d))^{2/3}
    double lower_bound_ln = 0;             // same bound read with the natural log
    Rational binary_bound;                 // (4 - 10^{-10})^d
    std::optional<double> entropy_bound;   // 2^{n H(d/2n) + 1}, defined for d < 2n
};

BoundTable bound_table(int n, int d, int L, double sunflower_constant = 5.0);

// (c p ln k)^k for k >= 1, and 1 for k = 0 (one empty set is all there is).
double sunflower_size_estimate(int p, int k, double c = 5.0);

// Exact maximum size of a diameter-d subset of [2]^n_dim by branch-and-bound
// clique search; n_dim <= 5.  The result is checked against the ball
// formulas: sum_{j<=d/2} C(n_dim,j) for even d and twice the corresponding
// ball of [2]^{n_dim-1} for odd d.
int kleitman_oracle(int n_dim, int d);

}  // namespace dmax
