// core.hpp -- words over a finite alphabet, Hamming distance, point sets,
// templates, balls, shells, and ball-center decompositions.
//
// Conventions used throughout the library:
//   * Symbols are integers 1..n.  Symbol 1 doubles as the pad symbol: a word
//     conceptually extends to the right with infinitely many 1s, so two words
//     of different lengths are compared by padding the shorter one.
//   * A PointSet is a finite set of equal-length words together with its
//     ambient parameters (alphabet size n, dimension r).  Members are kept
//     sorted lexicographically; all set-valued results are emitted sorted.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmax {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

constexpr Symbol kPadSymbol = 1;

// Thrown when a computation detects that one of its own guaranteed
// invariants failed (as opposed to a caller error).  The CLI maps this to
// exit code 3.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// Symbol of `w` at position `i` under the pad convention.
inline Symbol symbol_at(const Word& w, std::size_t i) {
    return i < w.size() ? w[i] : kPadSymbol;
}

// Hamming distance under the pad convention; symmetric, satisfies the
// triangle inequality.
int distance(const Word& a, const Word& b);

// Copy of `w` padded (or validated) to exactly `length` symbols.
// Truncation is only allowed over pad symbols.
Word padded(const Word& w, std::size_t length);

std::string word_to_string(const Word& w);

// A word with wildcard positions.  Entry 0 encodes the wildcard.
struct Template {
    static constexpr Symbol wildcard = 0;

    std::vector<Symbol> entries;

    Template() = default;
    explicit Template(std::vector<Symbol> e) : entries(std::move(e)) {}

    static Template all_wildcards(std::size_t length) {
        return Template(std::vector<Symbol>(length, wildcard));
    }

    std::size_t length() const { return entries.size(); }

    // Number of fixed (non-wildcard) entries.
    int weight() const;

    // True when every fixed entry differs from `base` at that position.
    bool is_regular_for(const Word& base) const;

    // True when `a` matches every fixed entry (pad convention applies).
    bool fits(const Word& a) const;
};

class PointSet {
public:
    PointSet() : n_(2), r_(0) {}
    PointSet(int alphabet, int dimension);

    int alphabet() const { return n_; }
    int dimension() const { return r_; }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }
    const std::vector<Word>& members() const { return members_; }
    const Word& member(std::size_t i) const { return members_[i]; }

    bool contains(const Word& w) const;

    // Inserts a word of length dimension() with symbols in 1..alphabet().
    // Returns false when the word was already present.
    bool insert(Word w);

    bool operator==(const PointSet& other) const = default;

    // Orders by (dimension, size, member list); used for deterministic
    // output of set-valued enumerations.
    bool operator<(const PointSet& other) const;

private:
    int n_;
    int r_;
    std::vector<Word> members_;  // sorted, no duplicates
};

// Maximum pairwise distance; 0 for empty or singleton sets.
int diameter(const PointSet& s);

// Members of `s` matching all fixed entries of `t`.
PointSet filter_by_template(const PointSet& s, const Template& t);

// All words of [n]^r within `radius` of `center` (r = center.size()).
// radius must lie in 0..r.
PointSet ball(const Word& center, int radius, int alphabet);

// Number of words within `radius` of a fixed center of [n]^r.
std::uint64_t ball_size(int alphabet, int dimension, int radius);

// Members of `s` at distance exactly `k` from `base`.
PointSet shell(const PointSet& s, const Word& base, int k);

// True when every word within `radius` of `center` belongs to `s`.
bool ball_inside(const PointSet& s, const Word& center, int radius);

// True when `s` contains no full radius-1 ball of its ambient space.
bool one_ball_free(const PointSet& s);

// Ball(a, inner) <= Ball(b, inner+1) inside [n]^r.  Equivalent to
// dist(a,b) <= 1 once r >= inner+2; for inner+1 >= r the outer ball is the
// whole space.  (Verified against direct containment in the tests.)
bool ball_absorbed_by(const Word& a, int inner, const Word& b, int alphabet);

// Centers of radius-`ell` balls contained in `s` that are not absorbed by
// any radius-(ell+1) ball contained in `s`.  Balls live in the ambient
// [n]^r; radii exceeding r do not exist as distinct objects, so for
// ell > r the result is empty and balls of radius >= r cannot be absorbed
// by anything except when `s` is the full space.
PointSet core_centers(const PointSet& s, int ell);

// Copy of `s` padded with 1s to a larger dimension.
PointSet lifted_dimension(const PointSet& s, int dimension);

// Copy of `s` reinterpreted over a larger alphabet.
PointSet lifted_alphabet(const PointSet& s, int alphabet);

// Visits every word of [n]^r in lexicographic order.
template <typename F>
void for_each_word(int alphabet, int dimension, F&& visit) {
    if (alphabet < 1 || dimension < 0) throw std::invalid_argument("for_each_word: bad ambient");
    Word w(static_cast<std::size_t>(dimension), kPadSymbol);
    for (;;) {
        visit(const_cast<const Word&>(w));
        int i = dimension - 1;
        while (i >= 0 && w[i] == static_cast<Symbol>(alphabet)) {
            w[i] = kPadSymbol;
            --i;
        }
        if (i < 0) return;
        ++w[i];
    }
}

}  // namespace dmax
