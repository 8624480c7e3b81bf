// constructions.hpp -- explicit families of maximal-diameter sets: the full
// cube, the binary even/odd families, and Hadamard-row sets, plus the
// hypothesis check that licenses lifting a set to a larger alphabet.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dmax/core.hpp"

namespace dmax {

enum class Family { Cube, BinaryEven, BinaryOdd, Hadamard };

struct ConstructionSpec {
    Family family;
    int n = 2;        // alphabet size (cube only; binary/hadamard force n = 2)
    int d = 0;        // target diameter
    int order = 0;    // Hadamard order; 0 means derive as 2*d
};

// All n^d words of [n]^d.  Diameter d.
PointSet cube(int alphabet, int d);

// The binary family of diameter d (d >= 2): subsets encoded over {1,2} with
// symbol 2 marking membership.  For even d = 2k the members are the empty
// set plus all 2k-subsets of [3k]; for odd d the even family on [3k] is
// doubled over one extra coordinate.
PointSet binary_maximal(int d);

// +1/-1 Hadamard matrix of the given order, first row and column
// normalized to +1.  Orders reachable by Sylvester doubling and the
// quadratic-residue construction over a prime q = order-1 (q = 3 mod 4),
// possibly combined; anything else raises unsupported_order.
class unsupported_order : public std::invalid_argument {
public:
    explicit unsupported_order(const std::string& what) : std::invalid_argument(what) {}
};

std::vector<std::vector<int>> hadamard_matrix(int order);

// The 2d rows of the order-2d Hadamard matrix as words of [2]^{2d}
// (+1 -> 1, -1 -> 2).  All pairwise distances are exactly d.
PointSet hadamard_set(int d);

PointSet construct(const ConstructionSpec& spec);

// For every member a and coordinate i, looks for b in s with a_i = b_i and
// dist(a,b) = d.  When this holds for all pairs the set stays maximal over
// the alphabet enlarged by one symbol.
struct LiftCheck {
    bool holds = true;
    // witness[a][i] = index of a partner member, or -1 when none exists.
    std::vector<std::vector<int>> witness;
    std::optional<std::pair<int, int>> first_failure;  // (member index, coordinate)
};

LiftCheck check_lift_hypothesis(const PointSet& s, int d);

}  // namespace dmax
