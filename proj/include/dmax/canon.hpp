// canon.hpp -- canonical forms and isomorphism testing.  Two point sets are
// isomorphic when one maps onto the other by a permutation of coordinates
// composed with an independent symbol permutation at every coordinate.

#pragma once

#include <cstdint>
#include <vector>

#include "dmax/core.hpp"

namespace dmax {

// sigma(a)_i = symbol_maps[i][ a[source[i]] ]: new coordinate i reads old
// coordinate source[i] and then relabels its symbol.
struct Isomorphism {
    std::vector<int> source;                      // permutation of 0..r-1
    std::vector<std::vector<Symbol>> symbol_maps; // per new coordinate, indexed by symbol (entry 0 unused)

    static Isomorphism identity(int dimension, int alphabet);
    bool valid(int alphabet) const;
};

Word apply(const Isomorphism& iso, const Word& w);

// Applies the map to every member.  Asserts that all pairwise distances are
// preserved (they always are for a valid map; the check guards the map).
PointSet apply(const Isomorphism& iso, const PointSet& s);

struct CanonicalResult {
    // Distinguished representative of the isomorphism class.  Coordinates
    // that are constant across all members carry no information and are
    // dropped first, so the form may have a smaller dimension than the
    // input.
    PointSet form;
    // Maps the input onto form extended back to the input dimension by
    // all-pad columns; checked by application before returning.
    Isomorphism certificate;
};

CanonicalResult canonical_form(const PointSet& s);

bool are_isomorphic(const PointSet& a, const PointSet& b);

// All maximal sets of diameter d (in the lifting-stable sense) with support
// inside [n]^{r_max} and at most size_max members, one canonical
// representative per isomorphism class, sorted.  size_max <= 0 selects the
// default (2n)^d.
std::vector<PointSet> enumerate_types(int alphabet, int d, int r_max, int size_max = 0);

}  // namespace dmax
