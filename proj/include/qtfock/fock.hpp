#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "qtfock/linalg.hpp"
#include "qtfock/symfunc.hpp"

namespace qtfock {

enum class Side { Ket, Bra };

/// Vector in the level-one Fock module F_u (or its dual), identified with a
/// symmetric function through  a_{-n} |0> = p_n.  The pairing between a bra
/// and a ket is the deformed Hall pairing `inner` on the underlying
/// symmetric functions, and |0| corresponds to the constant 1.
struct FockVec {
  SymFunc value;
  RatFunc param_u;  // the Fock parameter u of F_u
  Side side = Side::Ket;
};

RatFunc fock_pairing(const Ctx& ctx, const FockVec& bra, const FockVec& ket);

/// A normal-ordered exponential current
///   O(z) = exp( sum_{n>=1} cr(n) a_{-n} z^n ) exp( sum_{n>=1} an(n) a_n z^{-n} ).
/// Either coefficient family may be absent (empty std::function), giving a
/// one-sided exponential whose missing factor is the identity.
struct ExpCurrent {
  std::function<RatFunc(int)> cr;  // coefficient of a_{-n} z^{n}
  std::function<RatFunc(int)> an;  // coefficient of a_{n} z^{-n}
};

/// The four standard currents acting on F_u.
ExpCurrent eta_current(const Ctx& ctx);
ExpCurrent xi_current(const Ctx& ctx);
ExpCurrent phi_plus_current(const Ctx& ctx);
ExpCurrent phi_minus_current(const Ctx& ctx);

/// Fourier mode O_n (coefficient of z^{-n} in O(z)) applied to a ket or a
/// bra written in the power-sum realization.  The mode lowers ket degree by
/// n and raises bra degree by n; out-of-range modes act as zero.
SymFunc current_mode_ket(const Ctx& ctx, const ExpCurrent& cur, int n,
                         const SymFunc& v);
SymFunc current_mode_bra(const Ctx& ctx, const ExpCurrent& cur, int n,
                         const SymFunc& v);

/// One homogeneous slice of an exponential of Heisenberg generators applied
/// to a vector: with coefficients coef(n) on the degree-n generator, the
/// slice of total degree s is
///   sum_{kappa |- s} (prod_r coef(kappa_r) / aut(kappa)) g_{kappa_1} g_{kappa_2} ...,
/// where each g_k acts as multiplication by p_k (lowering = false) or as the
/// lowering derivation k (1-q^k)/(1-t^k) d/dp_k (lowering = true).
SymFunc exp_slice(const Ctx& ctx, const std::function<RatFunc(int)>& coef,
                  int s, const SymFunc& v, bool lowering);

/// Tagged Fourier-mode operator of the level-one action.
struct ModeOp {
  enum class Tag { A, Eta, Xi, PhiPlus, PhiMinus, XPlus, XMinus };
  Tag tag;
  int n;

  static ModeOp a(int n) { return {Tag::A, n}; }
  static ModeOp eta(int n) { return {Tag::Eta, n}; }
  static ModeOp xi(int n) { return {Tag::Xi, n}; }
  static ModeOp phi_plus(int n) { return {Tag::PhiPlus, n}; }
  static ModeOp phi_minus(int n) { return {Tag::PhiMinus, n}; }
  static ModeOp x_plus(int n) { return {Tag::XPlus, n}; }
  static ModeOp x_minus(int n) { return {Tag::XMinus, n}; }
};

/// Apply one mode exactly.  degree_cap bounds the degree of the result; a
/// result that would exceed it raises DegreeCapExceeded (the action itself
/// is always finite, the cap makes truncation auditable).
FockVec mode_apply(const Ctx& ctx, const ModeOp& op, const FockVec& v,
                   int degree_cap);

/// Eigenvalue of the zero mode of eta on the Macdonald vector |P_la>:
///   eps_la = 1 + (t - 1) sum_i (q^{la_i} - 1) t^{-i}.
RatFunc eps_eigen(const Ctx& ctx, const Partition& la);

/// Word of x^+ modes attached to a partition:
///   ket  |X_la> = x^+_{-la_1} x^+_{-la_2} ... x^+_{-la_l} |0>,
///   bra  <X_la| = <0| x^+_{la_l} ... x^+_{la_2} x^+_{la_1}.
FockVec pbw_vector(const Ctx& ctx, const Partition& la, Side side,
                   const RatFunc& u, int degree_cap);

/// Same word built from bare eta modes (no power of the Fock parameter):
/// pbw_vector = u^{length(la)} * pbw_eta_word.
SymFunc pbw_eta_word(const Ctx& ctx, const Partition& la, Side side);

/// Rank of { X_la : |la| = n } inside the degree-n slice.
int pbw_rank(const Ctx& ctx, int n);

/// Integral-basis data for one partition of n: the unique x^+_0 eigenvector
/// with eigenvalue u * eps_la, normalized to unit coefficient on the word
/// vector X_{(1^n)}.
struct KData {
  Partition lam;
  FockVec ket, bra;
  std::map<Partition, RatFunc> ket_in_x;  // coefficients on ket X_mu
  std::map<Partition, RatFunc> bra_in_x;  // coefficients on bra X_mu
  RatFunc eigen;                          // u * eps_la
};

std::vector<KData> k_basis(const Ctx& ctx, int n, const RatFunc& u);

/// Truncated operator-identity check of one defining relation of the
/// algebra in the level-one action.  The identity is tested on every
/// power-sum basis ket of degree <= window, with the free mode indices
/// ranging over [-degree_cap, degree_cap]^2; infinite mode sums terminate
/// exactly because deep enough lowering modes annihilate a bounded-degree
/// vector.
struct RelationReport {
  std::string id;
  int window = 0;      // max degree of the basis vectors tested
  int degree_cap = 0;  // bound on the free mode indices
  bool pass = false;
  std::string witness;  // first failing matrix element, empty if pass
};

RelationReport relation_check(const Ctx& ctx, const std::string& id,
                              int window, int degree_cap);

/// Cubic structure polynomials of the exchange relations:
///   Gp(z) = (1 - q z)(1 - t^{-1} z)(1 - q^{-1} t z),
///   Gm(z) = (1 - q^{-1} z)(1 - t z)(1 - q t^{-1} z),
/// returned as coefficient arrays on z^0..z^3.
std::array<RatFunc, 4> gfun_plus_coeffs(const Ctx& ctx);
std::array<RatFunc, 4> gfun_minus_coeffs(const Ctx& ctx);

/// Power-series coefficients of g(z) = Gp(z)/Gm(z) up to z^order, and of
/// the reciprocal-argument inverse g(1/z)^{-1} expanded as a series in z.
/// The structure function satisfies g(z) g(1/z) = 1, so the two agree.
std::vector<RatFunc> g_series(const Ctx& ctx, int order);
std::vector<RatFunc> g_recip_inv_series(const Ctx& ctx, int order);

/// Coefficients of the quadratic x^+ exchange relation in mode form:
///   f_0 = 1,  f_l = (1-q)(1-t^{-1})(1-q^l t^{-l}) / (1 - q t^{-1}).
RatFunc fxx_coeff(const Ctx& ctx, int l);

}  // namespace qtfock
