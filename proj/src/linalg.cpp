#include "qtfock/linalg.hpp"

#include "qtfock/errors.hpp"

namespace qtfock {

LinSolve solve_linear(RMat A, RVec b) {
  size_t rows = A.size();
  size_t cols = rows == 0 ? 0 : A[0].size();
  for (const auto& r : A)
    if (r.size() != cols) throw Error("solve_linear: ragged matrix");
  if (b.size() != rows) throw Error("solve_linear: rhs size mismatch");

  LinSolve out;
  std::vector<int> pivot_row_of_col(cols, -1);
  size_t next_row = 0;
  for (size_t c = 0; c < cols && next_row < rows; ++c) {
    // Deterministic pivot: fewest terms in numerator + denominator.
    size_t best = rows;
    long best_cost = 0;
    for (size_t r = next_row; r < rows; ++r) {
      if (A[r][c].is_zero()) continue;
      long cost = A[r][c].num().num_terms() + A[r][c].den().num_terms();
      if (best == rows || cost < best_cost) {
        best = r;
        best_cost = cost;
      }
    }
    if (best == rows) continue;
    std::swap(A[best], A[next_row]);
    std::swap(b[best], b[next_row]);
    RatFunc inv = A[next_row][c].inverse();
    for (size_t k = c; k < cols; ++k) A[next_row][k] *= inv;
    b[next_row] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == next_row || A[r][c].is_zero()) continue;
      RatFunc f = A[r][c];
      for (size_t k = c; k < cols; ++k) A[r][k] -= f * A[next_row][k];
      b[r] -= f * b[next_row];
    }
    pivot_row_of_col[c] = static_cast<int>(next_row);
    out.pivot_cols.push_back(static_cast<int>(c));
    ++next_row;
  }
  out.rank = static_cast<int>(next_row);

  for (size_t r = next_row; r < rows; ++r)
    if (!b[r].is_zero()) {
      out.consistent = false;
      return out;
    }
  out.consistent = true;

  out.particular.assign(cols, RatFunc());
  for (size_t c = 0; c < cols; ++c)
    if (pivot_row_of_col[c] >= 0)
      out.particular[c] = b[static_cast<size_t>(pivot_row_of_col[c])];

  for (size_t fc = 0; fc < cols; ++fc) {
    if (pivot_row_of_col[fc] >= 0) continue;
    RVec v(cols, RatFunc());
    v[fc] = RatFunc(1);
    for (size_t c = 0; c < cols; ++c)
      if (pivot_row_of_col[c] >= 0)
        v[c] = -A[static_cast<size_t>(pivot_row_of_col[c])][fc];
    out.kernel.push_back(std::move(v));
  }
  return out;
}

std::vector<RVec> kernel_basis(const RMat& A) {
  RVec zero(A.size(), RatFunc());
  return solve_linear(A, zero).kernel;
}

}  // namespace qtfock
