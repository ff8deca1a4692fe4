#pragma once

#include <vector>

#include "qtfock/partitions.hpp"
#include "qtfock/ratfunc.hpp"

namespace qtfock {

/// Two-partition deformation factor
///   N_{la,mu}(u) = prod_{(i,j) in la} (1 - u q^{-mu_i + j - 1} t^{-la'_j + i})
///               * prod_{(k,l) in mu} (1 - u q^{la_k - l} t^{mu'_l - k + 1}),
/// evaluated in coordinate form (well defined for cells lying outside the
/// other partition).  Results are cached per (la, mu, u, parameter mode).
RatFunc nekrasov_factor(const Ctx& ctx, const Partition& la,
                        const Partition& mu, const RatFunc& u);

/// The same product written through generalized arms and legs,
///   prod_{box in la} (1 - u q^{-a_mu(box)-1} t^{-l_la(box)})
/// * prod_{box in mu} (1 - u q^{a_la(box)} t^{l_mu(box)+1}),
/// kept as an independently coded alias for cross-checks; no cache.
RatFunc nekrasov_factor_armleg(const Ctx& ctx, const Partition& la,
                               const Partition& mu, const RatFunc& u);

/// Instanton series of the pure K-theoretic rank-two partition function:
/// entry k is the coefficient of X^k, X = Lambda^4 t/q, namely
///   sum_{|la|+|mu| = k} [ N_{la,la}(1) N_{mu,mu}(1) N_{la,mu}(Q)
///                         N_{mu,la}(Q^{-1}) ]^{-1}.
std::vector<RatFunc> z_su2_series(const Ctx& ctx, int order, const RatFunc& Q);

/// Rank-m 5D instanton series with 2m fundamental masses.  Entry k of
/// `primary` is the coefficient of (z1/z2)^k in
///   sum_{|vec(la)| = k} ((t/q)^m e_m(u)/e_m(w))^k
///     prod_{i,j} N_{0,la^(j)}(q w_i / t v_j) N_{la^(i),0}(q v_i / t u_j)
///                / N_{la^(i),la^(j)}(v_i / v_j),
/// and `middle` is the equivalent convention without the (t/q)^m twist and
/// with denominators N_{la^(i),la^(j)}(q v_i / t v_j).  Construction throws
/// InconsistentSystem if the two conventions disagree at some order.
struct U5dSeries {
  std::vector<RatFunc> primary;
  std::vector<RatFunc> middle;
};

U5dSeries z_5d_um(const Ctx& ctx, int m, int order,
                  const std::vector<RatFunc>& u, const std::vector<RatFunc>& v,
                  const std::vector<RatFunc>& w);

}  // namespace qtfock
