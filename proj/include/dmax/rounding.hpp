// rounding.hpp -- the near-center pipeline: fractional center of a point
// set, floating coloring over the exact linear constraint system, and
// randomized rounding of the surviving probabilities.

#pragma once

#include <cstdint>
#include <optional>

#include "dmax/core.hpp"
#include "dmax/rational.hpp"

namespace dmax {

// Row-stochastic r-by-n matrix of exact rationals.  An entry is floating
// when it lies strictly between 0 and 1, frozen when it equals 0 or 1; a
// row containing one floating entry would force that entry to an integer,
// so floating rows always carry at least two floating entries.
class FractionalMatrix {
public:
    FractionalMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Rational& at(int i, int j) const { return entries_[index(i, j)]; }
    void set(int i, int j, const Rational& v);

    bool floating(int i, int j) const { return floating_[index(i, j)]; }
    int floating_count() const;
    int floating_rows() const;  // rows with at least one floating entry
    bool row_deterministic(int i) const;

    // Row sums exactly 1, frozen entries exactly 0/1, floating entries in
    // (0,1), floating rows with >= 2 floating entries.
    void validate() const;

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }

    int rows_, cols_;
    std::vector<Rational> entries_;
    std::vector<char> floating_;
};

struct RoundingConfig {
    double lambda = 0.0;       // <= 0 selects sqrt(2 ln m)
    int retries = 0;           // <= 0 selects max(64, ceil(m exp(lambda^2/2))) capped at 10^5
    std::uint64_t seed = 0;
    int target_radius = kDefaultTarget;  // sentinel selects d-1
    int threads = 1;

    static constexpr int kDefaultTarget = -1000000;
};

// Entry (i,j) = fraction of members carrying symbol j+1 at coordinate i.
FractionalMatrix fractional_center(const PointSet& s);

// The linearized l1 distance from A to the indicator matrix of b:
// sum_i (1 - A[i][b_i]) + sum_{i, j != b_i} A[i][j].  Equals the true l1
// distance for entries in [0,1].
Rational linearized_distance(const FractionalMatrix& a, const Word& b);

// Expected Hamming distance of a sampled word to b: sum_i (1 - A[i][b_i]).
Rational expected_distance(const FractionalMatrix& a, const Word& b);

// Walks along null-space lines of the active constraint system (row sums of
// rows that still float, one linearized distance per member) until at most
// f + m variables float, freezing entries at the [0,1] boundary.  All
// constraint values are preserved exactly.
FractionalMatrix floating_round(FractionalMatrix a, const PointSet& s);

// Samples one word: coordinate i takes symbol j with probability A[i][j-1],
// independently.  Identical seeds give identical words.
Word sample_center(const FractionalMatrix& a, std::uint64_t seed);

// fractional_center -> floating_round -> repeated sample_center; returns
// the first sampled word within target radius (default d-1) of every
// member, re-verified by direct scan, or nullopt when the retry budget is
// spent.  Retries may run on several threads; the result is the success
// with the smallest retry index either way.
std::optional<Word> find_near_center(const PointSet& s, int d, const RoundingConfig& config = {});

// Effective defaults used by find_near_center for a set of m members.
double default_lambda(int m);
int default_retries(int m, double lambda);

// Deterministic per-retry seed derivation.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace dmax
