#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qtfock/fock.hpp"
#include "qtfock/nekrasov.hpp"

namespace qtfock {

/// Normal-ordered exponential operator between level-one Fock modules,
///   V(w) = exp( sum_{n>=1} A_n a_{-n} w^n ) exp( sum_{n>=1} B_n a_n w^{-n} ),
/// regarded as a map F_{source_u} -> F_{target_v}.  The argument w is a
/// formal Laurent variable, never specialized.
struct VOSpec {
  std::function<RatFunc(int)> creation;      // A_n, coefficient of a_{-n} w^n
  std::function<RatFunc(int)> annihilation;  // B_n, coefficient of a_n w^{-n}
  RatFunc source_u;
  RatFunc target_v;
};

/// The intertwining operator Phi(w) = Phi_u^v(w) : F_u -> F_v, with
///   A_n = -(v^n - (t/q)^n u^n) / (n (1 - q^n)),
///   B_n =  (v^{-n} - u^{-n}) / (n (1 - q^{-n})).
VOSpec phi_spec(const Ctx& ctx, const RatFunc& u, const RatFunc& v);

/// The four-parameter exponential operator with
///   A_n = (beta^n - alpha^n) / (n (1 - q^n)),
///   B_n = (delta^n - kappa^n) / (n (1 - q^n)).
/// Phi_u^v(w) is recovered at (alpha, beta, kappa, delta) = (v, tu/q, q/v, q/u).
/// The generic operator is not attached to Fock parameters; source_u and
/// target_v are left zero.
VOSpec psi_spec(const Ctx& ctx, const RatFunc& alpha, const RatFunc& beta,
                const RatFunc& kappa, const RatFunc& delta);

/// Two-parameter endomorphism of the mode algebra, acting by
///   x+_n   |-> x+_n - tu x+_{n-1},
///   x-_n   |-> x-_n - g tv x-_{n-1},
///   psi+_n |-> psi+_n - (g^{-1/2} tu + g^{3/2} tv) psi+_{n-1} + g tu tv psi+_{n-2},
///   psi-_n |-> psi-_n - g^{1/2} (tu + tv)  psi-_{n-1} + g tu tv psi-_{n-2},
/// where g = (t/q)^{1/2} is the central value of the level-one action.
/// eta and xi modes transform exactly like x+ and x-: the two differ only by
/// a power of the Fock parameter, which commutes with the substitution.
/// Heisenberg modes are outside the domain (the substitution is defined on
/// the generating currents only); applying to them raises Error.
struct TTransform {
  RatFunc tu, tv;

  std::vector<std::pair<RatFunc, ModeOp>> apply(const Ctx& ctx,
                                                const ModeOp& op) const;
};

/// Exact matrix element <bra| V(arg) |ket> as a Laurent polynomial in `arg`
/// (the overload without `arg` uses the reserved variable w).  The creation
/// exponential is expanded leftward against the bra into slices of degree
/// <= deg(bra), the annihilation exponential rightward against the ket into
/// slices <= deg(ket), and the slices are paired; each term carries
/// arg^(bra slice degree - ket slice degree).
RatFunc vo_matrix_element(const Ctx& ctx, const FockVec& bra,
                          const VOSpec& spec, const FockVec& ket,
                          const RatFunc& arg);
RatFunc vo_matrix_element(const Ctx& ctx, const FockVec& bra,
                          const VOSpec& spec, const FockVec& ket);

/// Matrix element of Phi between integral Macdonald vectors, compared with
/// the closed product formula
///   <J_la| Phi(w) |J_mu> = N_{la,mu}(qv/tu) w^{|la|-|mu|}
///                          (tu/q)^{|la|} (-v/q)^{-|mu|} t^{n(la)} q^{n(mu')},
/// together with its rescaling to the integral eigenbasis normalization
///   <K_la| Phi(w) |K_mu> = N_{la,mu}(qv/tu) (-tuvw/q)^{|la|} (tvw/q)^{-|mu|}
///                          u^{|mu|} t^{-n(mu)} q^{n(mu')}.
struct FactorizationReport {
  Partition lam, mu;
  RatFunc lhs, rhs;      // integral Macdonald normalization
  RatFunc k_lhs, k_rhs;  // integral eigenbasis normalization
  bool pass = false;
};

FactorizationReport verify_factorization(const Ctx& ctx, const Partition& lam,
                                         const Partition& mu, const RatFunc& u,
                                         const RatFunc& v);

/// Exchange relation between one current and Phi(w) = Phi_u^v(w), checked
/// mode by mode as an exact identity of matrix elements on all power-sum
/// basis vectors of degree <= window, for mode indices in [n_min, n_max].
/// `id` selects the current: "eta", "xi", "phi_plus" or "phi_minus".  Both
/// sides are generated from the defining substitution identity
///   T(vw, q^{-1}t uw)(a) Phi(w) = Phi(w) T(q^{-1}t vw, uw)(a),
/// which for eta unfolds to the familiar
///   (1 - vw/z) v eta(z) Phi(w) = (1 - q^{-1}t vw/z) Phi(w) u eta(z),
/// and similarly (with (t/q)-power shifts) for xi and phi±.  The Fock
/// parameters u, v enter through the module actions on each side.
RelationReport intertwine_check(const Ctx& ctx, const std::string& id,
                                int n_min, int n_max, int window,
                                const RatFunc& u, const RatFunc& v);

/// Composition <0| Phi_v^w(z1) Phi_u^v(z2) |0> as a series in
/// x = u z2 / (w z1), compared coefficient-by-coefficient against
///   sum_la N_{empty,la}(qw/tv) N_{la,empty}(qv/tu) / N_{la,la}(q/t) x^{|la|}.
/// The composition is evaluated by inserting the orthogonal Macdonald
/// resolution of identity in the middle module F_v; the z-dependence of
/// each coefficient must cancel exactly, so the grading of the matrix
/// elements is checked structurally at the same time.
struct TwoPointReport {
  std::vector<RatFunc> lhs, rhs;  // coefficient of x^k, k = 0..order
  bool pass = false;
};

TwoPointReport two_point_series(const Ctx& ctx, int order, const RatFunc& u,
                                const RatFunc& v, const RatFunc& w_target);

/// Determination of Phi from the x+ exchange relations alone: on the matrix
/// element box deg <= D, every substitution-identity equation whose terms
/// stay inside the box is collected into one homogeneous linear system over
/// the unknown elements <p_la| Phi |p_mu>.  The solution space must be one
/// dimensional, and after scaling the vacuum element to 1 it must equal the
/// explicit exponential operator.
struct UniquenessReport {
  int D = 0;
  int kernel_dim = 0;
  bool matches_phi = false;
  bool pass = false;  // kernel_dim == 1 and matches_phi
};

UniquenessReport phi_uniqueness(const Ctx& ctx, int D, const RatFunc& u,
                                const RatFunc& v);

}  // namespace qtfock
