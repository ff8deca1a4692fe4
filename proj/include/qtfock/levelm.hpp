#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qtfock/fock.hpp"
#include "qtfock/linalg.hpp"
#include "qtfock/partitions.hpp"
#include "qtfock/ratfunc.hpp"
#include "qtfock/symfunc.hpp"

namespace qtfock {

/// Vector in an m-fold tensor product of Fock modules F_{u_1} x ... x F_{u_m},
/// stored over the tensor power-sum basis p_T (T a partition tuple, one slot
/// per factor).  Zero coefficients are never stored.
struct TensorFockVec {
  std::map<PartitionTuple, RatFunc> coeffs;
  std::vector<RatFunc> params;  // Fock parameters u_1..u_m
  Side side = Side::Ket;

  int slots() const { return static_cast<int>(params.size()); }
  bool is_zero() const { return coeffs.empty(); }
  int max_degree() const;  // -1 for the zero vector
  RatFunc coeff(const PartitionTuple& t) const;
  void add_term(const PartitionTuple& t, const RatFunc& c);

  TensorFockVec& operator+=(const TensorFockVec& o);
  TensorFockVec& scale(const RatFunc& f);
};

TensorFockVec tensor_vacuum(const std::vector<RatFunc>& params, Side side);

/// Basis vector p_T.
TensorFockVec tensor_basis(const PartitionTuple& t,
                           const std::vector<RatFunc>& params, Side side);

/// Product vector f_1 x ... x f_m built from one symmetric function per slot.
TensorFockVec tensor_from_slots(const std::vector<SymFunc>& fs,
                                const std::vector<RatFunc>& params, Side side);

/// Tensor monomial basis vector m_{T_1} x ... x m_{T_m} in the power-sum
/// representation.
TensorFockVec tensor_m_vector(const PartitionTuple& t,
                              const std::vector<RatFunc>& params, Side side);

/// Expansion of a tensor vector over the monomial tensor basis.
std::map<PartitionTuple, RatFunc> tensor_to_m_basis(const TensorFockVec& v);

/// Slot-wise product of the deformed Hall pairings; requires matching slot
/// counts and parameters, a bra on the left and a ket on the right.
RatFunc tensor_pairing(const Ctx& ctx, const TensorFockVec& bra,
                       const TensorFockVec& ket);

/// Fourier modes of the current algebra acting on the m-fold tensor module.
/// The m slot currents of the ladder operator of order k combine shifted
/// copies of the four standard single-module currents; the normal ordering
/// of each product is resolved exactly inside levelm_mode_apply.
struct LevelMOp {
  enum class Tag { LambdaTilde, X, XMinus, PsiPlus, PsiMinus };
  Tag tag;
  int index;  // slot index i for LambdaTilde, order k for X; 0 otherwise
  int n;      // mode: coefficient of z^{-n}
  std::vector<RatFunc> params;

  static LevelMOp lambda_tilde(int i, int n, std::vector<RatFunc> params);
  static LevelMOp x(int k, int n, std::vector<RatFunc> params);
  static LevelMOp x_minus(int n, std::vector<RatFunc> params);
  static LevelMOp psi_plus(int n, std::vector<RatFunc> params);
  static LevelMOp psi_minus(int n, std::vector<RatFunc> params);
};

/// Apply one mode to a tensor vector.  A mode n lowers ket degrees by n and
/// raises bra degrees by n; out-of-range modes act as zero.  Throws
/// DegreeCapExceeded when a nonzero result component would exceed the cap,
/// and IndexOutOfRange when the operator and vector disagree on slot data.
TensorFockVec levelm_mode_apply(const Ctx& ctx, const LevelMOp& op,
                                const TensorFockVec& v, int degree_cap);

/// Independent evaluator for the order-k ladder mode: the normal-ordered sum
/// over strictly increasing slot subsets i_1 < ... < i_k with unit
/// coefficients.  Used to cross-check the product construction, which
/// derives the same expansion from pairwise contractions.
TensorFockVec xk_apply_resolved(const Ctx& ctx, int k, int n,
                                const TensorFockVec& v, int degree_cap);

/// Eigenvalue of the zero mode of the first ladder current on |P_T>:
///   sum_k u_k (1 + (t - 1) sum_i (q^{T_k,i} - 1) t^{-i}).
RatFunc tensor_eps(const Ctx& ctx, const PartitionTuple& t,
                   const std::vector<RatFunc>& params);

/// Matrix of the zero mode over the monomial tensor basis of one weight
/// slice, plus the two triangularity verdicts: on kets every nonzero entry
/// must point weakly down the L-order, on bras down the R-order, and the
/// diagonal must consist of the spectral values above.
struct TriangularityReport {
  int weight = 0;
  std::vector<PartitionTuple> basis;
  RMat ket_mat, bra_mat;  // row = source basis element, column = image term
  bool ket_triangular = false;
  bool bra_triangular = false;
  bool diagonal_ok = false;
  bool pass = false;
  std::vector<std::string> violations;
};

TriangularityReport x0_matrix(const Ctx& ctx, int n,
                              const std::vector<RatFunc>& params);

/// Joint eigenvector of the zero mode with unit coefficient on m_T.  Solved
/// on the order down-set of T and then verified against the full weight
/// slice, so triangularity is checked rather than assumed.  Throws
/// EigenvalueCollision when another tuple of the same weight shares the
/// spectral value.
struct EigData {
  PartitionTuple lam;
  Side side = Side::Ket;
  RatFunc eigen;
  TensorFockVec vec;
  std::map<PartitionTuple, RatFunc> in_m;
};

EigData eig_P(const Ctx& ctx, const PartitionTuple& lam, Side side,
              const std::vector<RatFunc>& params);

/// Ladder word attached to a partition tuple: kets apply, right to left,
///   X^{(1)}_{-mu^(1)_1} ... X^{(1)}_{-mu^(1)_l} ... X^{(m)}_{-mu^(m)_l},
/// bras apply the reversed word with raising modes and carry the prefactor
/// (q/t)^{sum_k (k-1) |mu^(k)|}.
TensorFockVec pbw_tensor_vector(const Ctx& ctx, const PartitionTuple& mu,
                                Side side, const std::vector<RatFunc>& params,
                                int degree_cap);

/// Zero-mode eigenvector rescaled to unit coefficient on the pure first-slot
/// ladder word X_{((1^n), {}, ..., {})} inside the ladder-word family of its
/// weight.  The family is checked to span the slice (PBWRankDefect
/// otherwise) and the full expansion over it is returned.
struct KVecData {
  PartitionTuple lam;
  Side side = Side::Ket;
  RatFunc eigen;
  TensorFockVec vec;
  std::map<PartitionTuple, RatFunc> in_pbw;
  int pbw_rank = 0;
  int slice_dim = 0;
};

KVecData k_vec(const Ctx& ctx, const PartitionTuple& lam, Side side,
               const std::vector<RatFunc>& params);

/// Closed product predicted for <K_T | K_T>:
///   ((-1)^m (t/q)^{m-1} e_m(u))^{|T|}
///   prod_k u_k^{-(m-2)|T_k|} q^{-(m-2) n(T_k')} t^{(m-2) n(T_k)}
///   prod_{i,j} N_{T_i,T_j}(q u_i / (t u_j)).
RatFunc conjectured_k_norm(const Ctx& ctx, const PartitionTuple& lam,
                           const std::vector<RatFunc>& u);

struct LevelMNormReport {
  PartitionTuple lam;
  RatFunc computed, conjectured;
  bool pass = false;
};

LevelMNormReport levelm_norm_check(const Ctx& ctx, const PartitionTuple& lam,
                                   const std::vector<RatFunc>& params);

/// Degree-windowed matrix of the tensor vertex operator F_u -> F_v, solved
/// from the defining exchange relations.  Entries are indexed by (bra tuple,
/// ket tuple) with both degrees at most deg; the w-dependence is the implied
/// power w^{|bra| - |ket|} and is not stored.  kernel_dim counts the global
/// solution space (1 means the window determines the operator up to scale),
/// bidegree_dim the same per bidegree block, and x_minus_ok records whether
/// the solved matrix also satisfies the lowering-current exchange relations,
/// which are not imposed while solving.
struct LevelMPhi {
  std::vector<RatFunc> source_u, target_v;
  int deg = 0;
  std::map<std::pair<PartitionTuple, PartitionTuple>, RatFunc> mat;
  int kernel_dim = 0;
  std::map<std::pair<int, int>, int> bidegree_dim;
  bool x_minus_ok = false;
};

LevelMPhi phi_m_solve(const Ctx& ctx, const std::vector<RatFunc>& source_u,
                      const std::vector<RatFunc>& target_v, int deg);

/// Matrix element <bra| Phi |ket> of a solved vertex operator, with the
/// implied power of the vertex variable restored on the given argument.
RatFunc levelm_phi_element(const Ctx& ctx, const LevelMPhi& phi,
                           const TensorFockVec& bra, const TensorFockVec& ket,
                           const RatFunc& arg);

/// Closed product predicted for <K_T | Phi(w) | K_S> between the rescaled
/// eigenvectors of the source (parameters u) and target (parameters v):
///   ((-1)^m (t/q)^m e_m(u) e_m(v) w)^{|T|} ((t/q) e_m(v) w)^{-|S|}
///   prod_k v_k^{-(m-1)|T_k|} u_k^{|S_k|}
///          q^{-(m-1) n(T_k') + n(S_k')} t^{(m-1) n(T_k) - n(S_k)}
///   prod_{i,j} N_{T_i,S_j}(q v_i / (t u_j)).
RatFunc conjectured_phi_element(const Ctx& ctx, const PartitionTuple& lam,
                                const PartitionTuple& mu,
                                const std::vector<RatFunc>& u,
                                const std::vector<RatFunc>& v);

struct LevelMMatrixReport {
  PartitionTuple lam, mu;
  RatFunc solved, conjectured;
  bool pass = false;
};

LevelMMatrixReport levelm_matrix_check(const Ctx& ctx, const LevelMPhi& phi,
                                       const PartitionTuple& lam,
                                       const PartitionTuple& mu);

/// Composition of two solved tensor vertex operators against the closed
/// product series: for each order k up to the window,
///   lhs_k = sum over tuples T of weight k of
///           <vac| Phi_2 |K_T> <K_T| Phi_1 |vac> / <K_T | K_T>,
/// with the predicted norms in the denominator, compared with the gauge
/// series coefficient of the same order.
struct FourPointReport {
  int order = 0;
  std::vector<RatFunc> lhs, rhs;  // coefficient per order 0..order
  bool pass = false;
};

FourPointReport four_point_check(const Ctx& ctx, int m, int order,
                                 const std::vector<RatFunc>& u,
                                 const std::vector<RatFunc>& v,
                                 const std::vector<RatFunc>& w);

}  // namespace qtfock
