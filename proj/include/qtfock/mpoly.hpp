#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qtfock/varreg.hpp"

namespace qtfock {

using Rat = mpq_class;
using Int = mpz_class;

/// Monomial with non-negative exponents, stored as a sparse list of
/// (variable, exponent) pairs sorted by VarId with all exponents > 0.
struct Mono {
  std::vector<std::pair<VarId, int>> e;

  static Mono one() { return Mono{}; }
  static Mono var(VarId v, int exp = 1);

  bool is_one() const { return e.empty(); }
  int total_degree() const;
  int deg(VarId v) const;

  friend Mono operator*(const Mono& a, const Mono& b);
  bool divides(const Mono& d) const;        // *this | d
  Mono divide_by(const Mono& d) const;      // *this / d, requires d | *this
  static Mono gcd(const Mono& a, const Mono& b);

  bool operator==(const Mono& o) const { return e == o.e; }
  bool operator!=(const Mono& o) const { return !(*this == o); }
};

/// Graded lexicographic comparison, ascending: first by total degree, then
/// lexicographically with earlier VarIds weighing more (a higher exponent
/// on an earlier variable makes the monomial larger).
bool mono_less(const Mono& a, const Mono& b);

struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const { return mono_less(a, b); }
};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted in descending graded-lex order (leading term
/// first) with no zero coefficients, so equal polynomials have equal
/// representations.
class MPoly {
 public:
  struct Term {
    Mono m;
    Rat c;
  };

  MPoly() = default;
  static MPoly zero() { return MPoly(); }
  static MPoly constant(const Rat& c);
  static MPoly constant(long c) { return constant(Rat(c)); }
  static MPoly variable(VarId v, int exp = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial (zero polynomial gives 0).
  Rat constant_value() const;
  int num_terms() const { return static_cast<int>(terms_.size()); }
  const std::vector<Term>& terms() const { return terms_; }

  int total_degree() const;  // -1 for the zero polynomial
  int deg(VarId v) const;    // -1 for the zero polynomial
  bool depends_on(VarId v) const { return deg(v) > 0; }
  std::vector<VarId> variables() const;  // sorted ascending

  const Term& leading() const;  // requires non-zero
  /// Coefficient of x^k with x = v, as a polynomial in the other variables.
  MPoly coeff_of(VarId v, int k) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly& scale(const Rat& c);
  friend MPoly operator*(const Rat& c, MPoly p) { return p.scale(c); }
  MPoly mul_mono(const Mono& m) const;
  MPoly pow(int e) const;  // e >= 0

  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  /// Substitute rational values for a subset of the variables.
  MPoly substitute(const std::map<VarId, Rat>& assignment) const;
  /// Full evaluation; unassigned variables raise Error.
  Rat evaluate(const std::map<VarId, Rat>& assignment) const;

  /// Rational c such that (1/c)*this has coprime integer coefficients and
  /// a positive leading coefficient; the sign of the original leading
  /// coefficient lives in c.  Zero polynomial gives c = 1.
  Rat rational_content() const;
  /// this == content * primitive with primitive integer, coprime
  /// coefficients and positive leading coefficient (content carries sign).
  MPoly primitive_part(Rat* content_out = nullptr) const;

  std::string to_string() const;

  /// Builds a polynomial from an accumulation map (ascending mono order).
  static MPoly from_map(std::map<Mono, Rat, MonoLess>&& acc);

 private:
  std::vector<Term> terms_;  // descending graded-lex, no zero coefficients
};

/// Quotient a/b when the division is exact; throws Error otherwise.
MPoly exact_div(const MPoly& a, const MPoly& b);

/// Greatest common divisor, normalized to an integer-primitive polynomial
/// with positive leading coefficient (gcd(0,0) = 0).
MPoly poly_gcd(const MPoly& a, const MPoly& b);

std::string mono_to_string(const Mono& m);
std::string rat_to_string(const Rat& r);

}  // namespace qtfock
