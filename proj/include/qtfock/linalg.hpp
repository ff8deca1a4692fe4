#pragma once

#include <vector>

#include "qtfock/ratfunc.hpp"

namespace qtfock {

using RVec = std::vector<RatFunc>;
using RMat = std::vector<RVec>;  // row-major

/// Result of an exact linear solve A x = b.
struct LinSolve {
  bool consistent = false;
  RVec particular;             // one solution (free variables set to zero)
  std::vector<RVec> kernel;    // basis of the homogeneous solution space
  std::vector<int> pivot_cols; // ascending
  int rank = 0;
};

/// Exact Gauss-Jordan elimination over the rational-function field.  Pivots
/// prefer structurally small entries (fewest polynomial terms) to keep
/// symbolic intermediates tame; ties break on row order, so the outcome is
/// deterministic.
LinSolve solve_linear(RMat A, RVec b);

/// Kernel basis of A (shorthand for a homogeneous solve).
std::vector<RVec> kernel_basis(const RMat& A);

}  // namespace qtfock
