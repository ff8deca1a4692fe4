#pragma once

#include "qtfock/vertex1.hpp"

namespace qtfock {

/// Finite q-shifted factorial (x; base)_n, defined for every integer n by
///   (x; b)_0 = 1,   (x; b)_{n+1} = (x; b)_n (1 - x b^n),
/// so negative lengths are the reciprocal products
///   (x; b)_{-n} = prod_{i=1}^{n} (1 - x b^{-i})^{-1}.
RatFunc qpoch(const RatFunc& x, const RatFunc& base, int n);

/// Base-q shifted factorial datum (x; q)_n.
struct QPoch {
  RatFunc x;
  int n = 0;

  RatFunc eval(const Ctx& ctx) const { return qpoch(x, ctx.q(), n); }
};

/// Truncated basic hypergeometric sum with three upper and two lower
/// parameters,
///   sum_{m=0}^{terms-1} (a1,a2,a3; b)_m / ((b; b)_m (c1,c2; b)_m) z^m.
/// A terminating series is obtained by letting some a_i be b^{-k} and
/// summing k+1 terms; the truncation is then exact.
RatFunc phi32(const Ctx& ctx, const RatFunc& a1, const RatFunc& a2,
              const RatFunc& a3, const RatFunc& c1, const RatFunc& c2,
              const RatFunc& base, const RatFunc& z, int terms);

/// Terminating balanced summation: with a symbolic third lower entry c,
///   3phi2(a, b, q^{-k}; c, a b c^{-1} q^{1-k}; q, q)
///     = (c/a; q)_k (c/b; q)_k / ((c; q)_k (c/(ab); q)_k)
/// as an exact identity of rational functions.  Internally the identity is
/// verified with all denominators cleared, so both sides are polynomials in
/// a, b, c, and at small lengths the raw rational sides are evaluated
/// verbatim as a second, independent route.
bool saalschutz_check(const Ctx& ctx, const RatFunc& a, const RatFunc& b,
                      int k);

/// The resummation (az; q)_inf / (z; q)_inf = sum_n z^n (a; q)_n / (q; q)_n,
/// verified through the shift equation that characterizes the left side,
///   (1 - z) F(z) = (1 - az) F(qz),   F(0) = 1,
/// coefficient by coefficient up to z^order.  No infinite product is ever
/// truncated; the product enters only through its exact shift identity.
bool qbinomial_series_check(const Ctx& ctx, const RatFunc& a, int order);

/// Closed-form matrix elements of Phi between one-row / one-column integral
/// Macdonald vectors, computed three independent ways: coefficient
/// extraction from the generating products (q-binomial expansions), the
/// exponential-operator pairing, and the closed shifted-factorial products.
enum class Section6Family { RowRow, ColRow, ColCol };

struct ClosedFormReport {
  Section6Family family = Section6Family::RowRow;
  int j = 0, k = 0;
  RatFunc generating, vertex, closed;
  bool pass = false;
};

ClosedFormReport section6_closed_forms(const Ctx& ctx, Section6Family family,
                                       int j, int k, const RatFunc& u,
                                       const RatFunc& v);

/// Compatibility constraints alpha kappa = q and beta delta = t of the
/// four-parameter operator.  On the constraint locus the double-sum kernel
/// of the one-row matrix elements is a balanced terminating 3phi2, so the
/// Saalschütz summation applies and every element factors into shifted
/// factorials; off the locus the substitution leaves a nonzero residual,
/// witnessed at a perturbed specialized point.
struct CompatReport {
  bool on_shell_residual_zero = false;    // symbolic alpha, beta; j,k <= 3
  bool off_shell_residual_nonzero = false;  // perturbed delta, j = k = 1
  bool identity_case_one = false;  // j = k = 0 gives 1 on both sides always
  bool pass = false;
};

CompatReport compat_constraint_check(const Ctx& ctx);

}  // namespace qtfock
