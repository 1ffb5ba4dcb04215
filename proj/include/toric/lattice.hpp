#pragma once

#include <optional>
#include <vector>

#include "toric/numeric.hpp"

namespace toric {

// Exact integer linear algebra on row matrices.  All pivots are arbitrary
// precision; nothing here assumes machine-word bounds.

// Row-style Hermite normal form.  Returns the nonzero rows: echelon shape,
// positive pivots, entries above a pivot reduced into [0, pivot).
Mat hnf_rows(Mat m);

// Rank over the rationals.
int rank_of(const Mat& m);

// rank + independence flag (independent iff rank == row count).
std::pair<int, bool> rank_and_independence(const Mat& m);

// Elementary divisors d_1 | d_2 | ... of the Smith normal form (positive,
// one entry per rank).
std::vector<Int> smith_divisors(Mat m);

// Saturated basis of the integer kernel of x |-> (row_i . x)_i.
Mat kernel_basis(const Mat& rows, int ambient);

// Basis (HNF rows) of the lattice generated by the input vectors, plus the
// index of that lattice inside the saturation of its rational span.
struct SublatticeBasis {
    Mat basis;   // HNF rows, linearly independent
    int ambient = 0;
    int rank = 0;
    Int index = 1; // index in the saturated lattice of the span

    // Integer coordinates of v in `basis`, or nullopt if v is not a member.
    std::optional<Vec> coordinates(const Vec& v) const;
};

SublatticeBasis lattice_basis(const Mat& generators);

// Saturated basis of the rational span of the rows (the lattice
// span(rows) cap Z^n).
Mat saturated_span_basis(const Mat& rows, int ambient);

// Completes a *saturated* basis (rows) to a basis of Z^ambient; the returned
// matrix holds the complementary rows.
Mat complete_to_unimodular(const Mat& saturated_rows, int ambient);

// Unique rational solution x of x * rows = v when v lies in the row span;
// nullopt otherwise.  rows must be linearly independent.
std::optional<QVec> solve_row_combination(const Mat& rows, const Vec& v);

// x * rows = v with x integral (rows independent); nullopt if no integral
// solution.
std::optional<Vec> solve_integer_row_combination(const Mat& rows, const Vec& v);

} // namespace toric
