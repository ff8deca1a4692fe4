#pragma once

#include <map>

#include "qtfock/partitions.hpp"
#include "qtfock/ratfunc.hpp"

namespace qtfock {

/// Symmetric function over the parameter field, stored in the power-sum
/// basis as a finite map  partition -> coefficient.
class SymFunc {
 public:
  SymFunc() = default;

  static SymFunc one() { return p(Partition()); }
  static SymFunc p(const Partition& la);
  static SymFunc p(int n) { return p(Partition{n}); }

  const std::map<Partition, RatFunc>& coeffs() const { return c_; }
  RatFunc coeff(const Partition& la) const;
  bool is_zero() const { return c_.empty(); }
  int max_degree() const;  // -1 for zero
  SymFunc slice(int d) const;

  SymFunc operator-() const;
  SymFunc& operator+=(const SymFunc& o);
  SymFunc& operator-=(const SymFunc& o);
  friend SymFunc operator+(SymFunc a, const SymFunc& b) { return a += b; }
  friend SymFunc operator-(SymFunc a, const SymFunc& b) { return a -= b; }
  SymFunc& scale(const RatFunc& f);
  friend SymFunc operator*(const RatFunc& f, SymFunc s) { return s.scale(f); }
  friend SymFunc operator*(const SymFunc& a, const SymFunc& b);

  /// Multiplication by the power sum p_n (n >= 1).
  SymFunc mul_p(int n) const;
  /// Formal partial derivative with respect to p_n.
  SymFunc diff_p(int n) const;

  void add_term(const Partition& la, const RatFunc& f);
  std::string to_string() const;

 private:
  std::map<Partition, RatFunc> c_;
};

/// Deformed Hall pairing on power sums:
/// <p_la, p_mu> = delta_{la,mu} z_la prod_i (1 - q^{la_i}) / (1 - t^{la_i}).
RatFunc p_inner_norm(const Ctx& ctx, const Partition& la);
RatFunc inner(const Ctx& ctx, const SymFunc& a, const SymFunc& b);

/// Heisenberg generators on the polynomial realization (same formulas on
/// bras and kets; adjointness is with respect to `inner`):
///   negative mode a_{-n}: multiply by p_n,
///   positive mode a_n:    n (1 - q^n)/(1 - t^n) d/dp_n.
SymFunc heis_neg(int n, const SymFunc& f);
SymFunc heis_pos(const Ctx& ctx, int n, const SymFunc& f);

/// Monomial symmetric function expressed in power sums (coefficients are
/// rational numbers; cached per degree).
SymFunc m_in_p(const Partition& la);
/// Expansion of f in the monomial basis.
std::map<Partition, RatFunc> to_m_basis(const SymFunc& f);

/// Macdonald symmetric function data, cached per (mode, weight).
struct MacdonaldData {
  SymFunc P;          // monic on m_la
  RatFunc norm;       // <P, P>
  RatFunc c, cprime;  // the two arm/leg hook products
};

const MacdonaldData& macdonald(const Ctx& ctx, const Partition& la);
SymFunc macdonald_P(const Ctx& ctx, const Partition& la);
/// Q = (c/c') P, the dual basis element: <P_la, Q_mu> = delta.
SymFunc macdonald_Q(const Ctx& ctx, const Partition& la);
/// Integral form J = c P = c' Q.
SymFunc macdonald_J(const Ctx& ctx, const Partition& la);

/// Hook products c = prod (1 - q^arm t^(leg+1)) and
/// c' = prod (1 - q^(arm+1) t^leg) over the cells of la.
RatFunc hook_c(const Ctx& ctx, const Partition& la);
RatFunc hook_cprime(const Ctx& ctx, const Partition& la);

/// Evaluation homomorphisms defined on power sums:
///   eval_eps_u:  p_n -> (1 - u^n) / (1 - t^n)
///   eval_eps_ab: p_n -> (beta^n - alpha^n) / (1 - t^n)
RatFunc eval_eps_u(const Ctx& ctx, const SymFunc& f, const RatFunc& u);
RatFunc eval_eps_ab(const Ctx& ctx, const SymFunc& f, const RatFunc& alpha,
                    const RatFunc& beta);

/// e_k of a finite list of scalars.
RatFunc elementary_sym(const std::vector<RatFunc>& xs, int k);

}  // namespace qtfock
