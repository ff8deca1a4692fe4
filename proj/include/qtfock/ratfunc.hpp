#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qtfock/mpoly.hpp"

namespace qtfock {

/// Rational function in canonical form: a rational prefactor times a
/// quotient of two coprime, integer-primitive polynomials whose leading
/// coefficients are positive.  Zero is (0, 1, 1).  The representation of a
/// value is unique, so operator== is a genuine value comparison.
class RatFunc {
 public:
  RatFunc() : pre_(0), num_(MPoly::constant(1)), den_(MPoly::constant(1)) {}
  RatFunc(long n, long d = 1);
  explicit RatFunc(const Rat& c);

  /// Variable as a rational function; negative exponents land in the
  /// denominator (the library's Laurent convention).
  static RatFunc var(VarId v, int exp = 1);
  static RatFunc from_poly(const MPoly& p);
  static RatFunc fraction(const MPoly& num, const MPoly& den);

  bool is_zero() const { return pre_ == 0; }
  bool is_one() const;
  bool is_constant() const;
  Rat as_rational() const;  // requires is_constant()

  const Rat& prefactor() const { return pre_; }
  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  bool depends_on(VarId v) const;
  std::vector<VarId> variables() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc inverse() const;
  RatFunc pow(long e) const;  // any sign

  bool operator==(const RatFunc& o) const;
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  /// Substitute rational values for a subset of the variables; throws
  /// PoleAtPoint when the denominator vanishes there.
  RatFunc substitute(const std::map<VarId, Rat>& assignment) const;

  std::string to_string() const;

 private:
  void normalize_parts();  // restore coprimality + sign/content conventions

  Rat pre_;
  MPoly num_, den_;
};

/// Exact equality via cross-multiplication; works even if the operands were
/// assembled without full cancellation.
bool value_equal(const RatFunc& a, const RatFunc& b);

/// Evaluation regime for the deformation and spectral parameters.  The
/// formal expansion variables (w, x, y, z1, z2, Lambda) are never
/// specialized; series orders in them stay exact bookkeeping.
struct FieldMode {
  bool symbolic = true;
  uint64_t seed = 0;
  std::map<VarId, Rat> assignment;

  static FieldMode make_symbolic();
  /// Draw distinct small rationals (numerator and denominator in [2, 97])
  /// for each listed parameter, deterministically from the seed.
  static FieldMode make_specialized(uint64_t seed, const std::vector<VarId>& params);
};

/// Scalar view of the parameter space under a FieldMode: symbolic mode
/// hands back genuine variables, specialized mode hands back the drawn
/// constants.  All higher modules build their scalars through this class.
class Ctx {
 public:
  Ctx() : mode_(FieldMode::make_symbolic()) {}
  explicit Ctx(FieldMode mode) : mode_(std::move(mode)) {}

  const FieldMode& mode() const { return mode_; }

  RatFunc value(VarId v) const;

  RatFunc q4() const { return value(VarRegistry::instance().q4()); }
  RatFunc t4() const { return value(VarRegistry::instance().t4()); }
  RatFunc q() const { return q4().pow(4); }
  RatFunc t() const { return t4().pow(4); }
  RatFunc qpow(long e) const { return q4().pow(4 * e); }
  RatFunc tpow(long e) const { return t4().pow(4 * e); }
  /// (t/q)^(k/4) — the only fractional powers the theory needs, realized
  /// exactly through the quarter-root generators.
  RatFunc tq_quarter(long k) const { return (t4() / q4()).pow(k); }
  /// p = q/t and its quarter powers p^(k/4).
  RatFunc p() const { return q() / t(); }
  RatFunc p_quarter(long k) const { return (q4() / t4()).pow(k); }

 private:
  FieldMode mode_;
};

}  // namespace qtfock
