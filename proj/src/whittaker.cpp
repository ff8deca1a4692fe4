#include "qtfock/whittaker.hpp"

#include <algorithm>
#include <utility>

#include "qtfock/errors.hpp"
#include "qtfock/linalg.hpp"
#include "qtfock/nekrasov.hpp"
#include "qtfock/symfunc.hpp"

namespace qtfock {

namespace {

// Two-partition deformation factor with explicit parameter values, so the
// same product can be evaluated at inverted q and t:
//   prod_{box in la} (1 - Q q^{-a_mu(box)-1} t^{-l_la(box)})
// * prod_{box in mu} (1 - Q q^{a_la(box)} t^{l_mu(box)+1}).
RatFunc nfac(const Partition& la, const Partition& mu, const RatFunc& Q,
             const RatFunc& q, const RatFunc& t) {
  RatFunc out(1);
  for (int i = 1; i <= la.length(); ++i)
    for (int j = 1; j <= la.row(i); ++j)
      out *= RatFunc(1) - Q * q.pow(-mu.arm(i, j) - 1) * t.pow(-la.leg(i, j));
  for (int i = 1; i <= mu.length(); ++i)
    for (int j = 1; j <= mu.row(i); ++j)
      out *= RatFunc(1) - Q * q.pow(la.arm(i, j)) * t.pow(mu.leg(i, j) + 1);
  return out;
}

PartitionTuple reversed(const PartitionTuple& t) {
  std::vector<Partition> comp;
  for (int k = t.slots(); k >= 1; --k) comp.push_back(t.slot(k));
  return PartitionTuple(std::move(comp));
}

std::vector<RatFunc> reversed(const std::vector<RatFunc>& xs) {
  return {xs.rbegin(), xs.rend()};
}

// Coefficient of |P_lam> (ket) or <P_lam| (bra) in a homogeneous slice,
// extracted by pairing against the dual joint eigenvector.
RatFunc p_basis_coeff(const Ctx& ctx, const TensorFockVec& slice,
                      const PartitionTuple& lam) {
  RatFunc norms(1);
  for (int k = 1; k <= lam.slots(); ++k)
    norms *= macdonald(ctx, lam.slot(k)).norm;
  if (slice.side == Side::Ket) {
    EigData dual = eig_P(ctx, lam, Side::Bra, slice.params);
    return tensor_pairing(ctx, dual.vec, slice) / norms;
  }
  EigData dual = eig_P(ctx, lam, Side::Ket, slice.params);
  return tensor_pairing(ctx, slice, dual.vec) / norms;
}

}  // namespace

// ---------------------------------------------------------------------------
// One-slot coherent vectors
// ---------------------------------------------------------------------------

WhittakerL1 g_level1(const Ctx& ctx, const RatFunc& alpha, const RatFunc& beta,
                     const RatFunc& u, int trunc) {
  if (trunc < 0) throw IndexOutOfRange("negative truncation degree");
  WhittakerL1 g;
  g.alpha = alpha;
  g.beta = beta;
  g.u = u;
  g.trunc = trunc;
  // n * (coefficient of a_{-n}) = (beta^n - alpha^n)/(1 - q^n)
  std::vector<RatFunc> nc{RatFunc(0)};
  for (int n = 1; n <= trunc; ++n)
    nc.push_back((beta.pow(n) - alpha.pow(n)) / (RatFunc(1) - ctx.qpow(n)));
  // Euler recursion for the exponential: d E_d = sum_n (n c_n) p_n E_{d-n}.
  std::vector<SymFunc> e(static_cast<size_t>(trunc) + 1);
  e[0] = SymFunc::one();
  for (int d = 1; d <= trunc; ++d) {
    SymFunc s;
    for (int n = 1; n <= d; ++n) {
      SymFunc t = e[static_cast<size_t>(d - n)].mul_p(n);
      t.scale(nc[static_cast<size_t>(n)]);
      s += t;
    }
    s.scale(RatFunc(1, d));
    e[static_cast<size_t>(d)] = std::move(s);
  }
  for (int d = 0; d <= trunc; ++d)
    g.slices.push_back(FockVec{e[static_cast<size_t>(d)], u, Side::Ket});
  return g;
}

RatFunc l1_hook_coeff(const Ctx& ctx, const Partition& la, const RatFunc& alpha,
                      const RatFunc& beta) {
  RatFunc out(1);
  for (int i = 1; i <= la.length(); ++i)
    for (int j = 1; j <= la.row(i); ++j) {
      RatFunc num = ctx.tpow(i - 1) * beta - ctx.qpow(j - 1) * alpha;
      RatFunc den =
          RatFunc(1) - ctx.qpow(la.arm(i, j) + 1) * ctx.tpow(la.leg(i, j));
      out *= num / den;
    }
  return out;
}

L1FactorReport l1_factorization_check(const Ctx& ctx, const WhittakerL1& g) {
  L1FactorReport rep;
  rep.pass = true;
  for (int d = 0; d <= g.trunc; ++d) {
    for (const Partition& la : partitions_of(d)) {
      FockVec dual{macdonald_Q(ctx, la), g.u, Side::Bra};
      L1Check c;
      c.lam = la;
      c.computed = fock_pairing(ctx, dual, g.slices[static_cast<size_t>(d)]);
      c.expected = l1_hook_coeff(ctx, la, g.alpha, g.beta);
      c.pass = c.computed == c.expected;
      rep.pass = rep.pass && c.pass;
      rep.checks.push_back(std::move(c));
    }
  }
  return rep;
}

bool l1_condition_check(const Ctx& ctx, const WhittakerL1& g, int n_max) {
  const int cap = g.trunc + 1;
  for (int n = 0; n <= n_max; ++n) {
    for (int e = 0; e + n + 1 <= g.trunc; ++e) {
      SymFunc r = mode_apply(ctx, ModeOp::x_plus(n + 1),
                             g.slices[static_cast<size_t>(e + n + 1)], cap)
                      .value;
      SymFunc s = mode_apply(ctx, ModeOp::x_plus(n),
                             g.slices[static_cast<size_t>(e + n)], cap)
                      .value;
      s.scale(g.alpha);
      r -= s;
      if (n == 0) {
        SymFunc t = g.slices[static_cast<size_t>(e)].value;
        t.scale(g.u * g.beta);
        r += t;
      }
      if (!r.is_zero()) return false;
    }
  }
  return true;
}

bool l1_exchange_identity(const Ctx& ctx, const RatFunc& alpha,
                          const RatFunc& beta, const RatFunc& u, int deg) {
  const int big = 2 * deg + 2;
  WhittakerL1 g = g_level1(ctx, alpha, beta, u, big);
  const int cap = big + 2;
  for (int db = 0; db <= deg; ++db) {
    for (const Partition& mu : partitions_of(db)) {
      FockVec bra{SymFunc::p(mu), u, Side::Bra};
      for (int dk = 0; dk <= deg; ++dk) {
        for (const Partition& nu : partitions_of(dk)) {
          SymFunc pnu = SymFunc::p(nu);
          // matrix element of E x+_n between the fixed bra and ket
          auto elem_after = [&](int n) -> RatFunc {
            int d = db - dk + n;
            if (d < 0) return RatFunc(0);
            FockVec ket{pnu, u, Side::Ket};
            SymFunc w = mode_apply(ctx, ModeOp::x_plus(n), ket, cap).value;
            SymFunc prod = g.slices[static_cast<size_t>(d)].value * w;
            return fock_pairing(ctx, bra, FockVec{prod, u, Side::Ket});
          };
          for (int gmode = dk - db; gmode <= dk - db + deg + 1; ++gmode) {
            // left side: x+_g applied after the exponential
            RatFunc lhs(0);
            int d = db + gmode - dk;
            if (d >= 0) {
              SymFunc prod = g.slices[static_cast<size_t>(d)].value * pnu;
              FockVec v{prod, u, Side::Ket};
              lhs = fock_pairing(
                  ctx, bra, mode_apply(ctx, ModeOp::x_plus(gmode), v, cap));
            }
            // right side: geometric expansion of (1 - beta/z)/(1 - alpha/z)
            RatFunc rhs(0);
            for (int j = 0; j + dk - db <= gmode; ++j) {
              RatFunc term = elem_after(gmode - j);
              if (j + dk - db < gmode)
                term -= beta * elem_after(gmode - j - 1);
              rhs += alpha.pow(j) * term;
            }
            if (lhs != rhs) return false;
          }
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Tensor-slot coherent vectors
// ---------------------------------------------------------------------------

RatFunc lambda_charge(const Ctx& ctx, const RatFunc& lambda,
                      const std::vector<RatFunc>& us,
                      const std::vector<RatFunc>& charge) {
  if (us.size() != charge.size())
    throw IndexOutOfRange("slot/charge count mismatch");
  RatFunc out = lambda;
  const RatFunc s = ctx.p_quarter(2);
  for (size_t i = 0; i < us.size(); ++i) out *= s * us[i] / charge[i];
  return out;
}

WhittakerLM g_levelm(const Ctx& ctx, const std::vector<RatFunc>& us,
                     const RatFunc& lambda, const std::vector<RatFunc>& charge,
                     int trunc, Side side) {
  const int m = static_cast<int>(us.size());
  if (m < 1) throw IndexOutOfRange("need at least one slot");
  if (charge.size() != us.size())
    throw IndexOutOfRange("slot/charge count mismatch");
  if (trunc < 0) throw IndexOutOfRange("negative truncation degree");

  WhittakerLM g;
  g.side = side;
  g.us = us;
  g.lambda = lambda;
  g.charge = charge;
  g.trunc = trunc;
  g.slices.push_back(tensor_vacuum(us, side));

  const RatFunc lc = lambda_charge(ctx, lambda, us, charge);
  const RatFunc s = ctx.p_quarter(2);
  std::vector<RatFunc> cs;
  for (const RatFunc& c : charge) cs.push_back(c / s);
  const int cap = trunc + 2;

  for (int N = 1; N <= trunc; ++N) {
    const std::vector<PartitionTuple> cols = tuples_of(m, N);
    RMat A;
    RVec b;
    for (int k = 1; k <= m; ++k) {
      for (int n = 1; n <= N; ++n) {
        // columns: the slice equation operator applied to each basis tuple
        std::vector<TensorFockVec> colv;
        for (const PartitionTuple& T : cols) {
          TensorFockVec base = tensor_basis(T, us, side);
          int mode = side == Side::Ket ? n : -n;
          TensorFockVec r =
              levelm_mode_apply(ctx, LevelMOp::x(k, mode, us), base, cap);
          if (side == Side::Bra) r.scale(ctx.p_quarter(4L * (1 - k)));
          colv.push_back(std::move(r));
        }
        // right-hand side from the previous slice
        const TensorFockVec& prev = g.slices[static_cast<size_t>(N - 1)];
        int mode = side == Side::Ket ? n - 1 : 1 - n;
        TensorFockVec rv =
            levelm_mode_apply(ctx, LevelMOp::x(k, mode, us), prev, cap);
        if (n == 1) {
          TensorFockVec t = prev;
          t.scale(-elementary_sym(cs, k));
          rv += t;
        }
        rv.scale(lc);
        for (const PartitionTuple& S : tuples_of(m, N - n)) {
          RVec row;
          for (const TensorFockVec& cv : colv) row.push_back(cv.coeff(S));
          A.push_back(std::move(row));
          b.push_back(rv.coeff(S));
        }
      }
    }
    LinSolve ls = solve_linear(A, b);
    if (!ls.consistent)
      throw InconsistentSystem("coherent-vector slice system is inconsistent");
    g.kernel_dims.push_back(static_cast<int>(ls.kernel.size()));
    TensorFockVec sl;
    sl.params = us;
    sl.side = side;
    for (size_t c = 0; c < cols.size(); ++c) {
      if (ls.particular[c].is_zero()) continue;
      TensorFockVec t = tensor_basis(cols[c], us, side);
      t.scale(ls.particular[c]);
      sl += t;
    }
    g.slices.push_back(std::move(sl));
  }
  return g;
}

RatFunc whittaker_C(const Ctx& ctx, const PartitionTuple& t,
                    const RatFunc& lambda, const std::vector<RatFunc>& us,
                    const std::vector<RatFunc>& charge, bool invert_qt) {
  const int m = static_cast<int>(us.size());
  if (t.slots() != m || static_cast<int>(charge.size()) != m)
    throw IndexOutOfRange("slot/charge count mismatch");
  RatFunc q = ctx.q(), tt = ctx.t(), s = ctx.p_quarter(2);
  if (invert_qt) {
    q = q.inverse();
    tt = tt.inverse();
    s = s.inverse();
  }
  RatFunc out(1);
  for (int k = 1; k <= m; ++k) {
    const Partition& la = t.slot(k);
    for (int i = 1; i <= la.length(); ++i)
      for (int j = 1; j <= la.row(i); ++j) {
        RatFunc num =
            -lambda * q.pow(-j) * (-(q.pow(1 - j) * tt.pow(i - 1))).pow(k - 1);
        RatFunc den =
            RatFunc(1) - q.pow(-la.arm(i, j) - 1) * tt.pow(-la.leg(i, j));
        out *= num / den;
      }
  }
  for (int k = 1; k <= m; ++k)
    for (int l = 1; l <= m; ++l)
      out *= nfac(t.slot(k), Partition(), s * us[static_cast<size_t>(k - 1)] /
                                              charge[static_cast<size_t>(l - 1)],
                  q, tt);
  for (int k = 1; k <= m; ++k)
    for (int l = k + 1; l <= m; ++l) {
      RatFunc ratio =
          us[static_cast<size_t>(k - 1)] / us[static_cast<size_t>(l - 1)];
      out /= ratio.pow(-t.slot(l).weight()) *
             nfac(t.slot(k), t.slot(l), ratio, q, tt);
    }
  return out;
}

RatFunc whittaker_Cbar_explicit(const Ctx& ctx, const PartitionTuple& t,
                                const RatFunc& lambda,
                                const std::vector<RatFunc>& us,
                                const std::vector<RatFunc>& charge) {
  const int m = static_cast<int>(us.size());
  if (t.slots() != m || static_cast<int>(charge.size()) != m)
    throw IndexOutOfRange("slot/charge count mismatch");
  const RatFunc q = ctx.q(), tt = ctx.t(), s = ctx.p_quarter(2);
  const RatFunc lc = lambda_charge(ctx, lambda, us, charge);
  RatFunc out(1);
  for (int k = 1; k <= m; ++k) {
    const Partition& la = t.slot(k);
    for (int i = 1; i <= la.length(); ++i)
      for (int j = 1; j <= la.row(i); ++j) {
        RatFunc num =
            -lc * q.pow(j - 1) * (-(q.pow(1 - j) * tt.pow(i - 1))).pow(1 - k);
        RatFunc den =
            RatFunc(1) - q.pow(la.arm(i, j) + 1) * tt.pow(la.leg(i, j));
        out *= num / den;
      }
  }
  for (int k = 1; k <= m; ++k)
    for (int l = 1; l <= m; ++l)
      out *= nfac(Partition(), t.slot(k), s * charge[static_cast<size_t>(l - 1)] /
                                              us[static_cast<size_t>(k - 1)],
                  q, tt);
  for (int k = 1; k <= m; ++k)
    for (int l = k + 1; l <= m; ++l) {
      RatFunc ratio =
          us[static_cast<size_t>(l - 1)] / us[static_cast<size_t>(k - 1)];
      out /= ratio.pow(-t.slot(l).weight()) *
             nfac(t.slot(l), t.slot(k), ratio, q, tt);
    }
  return out;
}

RatFunc whittaker_prefactor(const Ctx& ctx, const PartitionTuple& t,
                            Side side) {
  long e = 0;
  for (int k = 1; k <= t.slots(); ++k)
    e += 2L * (1 - k) * t.slot(k).weight();
  if (side == Side::Bra) e = -e;
  return ctx.p_quarter(e);
}

LMCoeffReport levelm_coeff_check(const Ctx& ctx, const WhittakerLM& g) {
  const int m = static_cast<int>(g.us.size());
  LMCoeffReport rep;
  rep.kernel_dims = g.kernel_dims;
  rep.pass = true;
  for (int N = 0; N <= g.trunc; ++N) {
    for (const PartitionTuple& lam : tuples_of(m, N)) {
      LMCoeff c;
      c.lam = lam;
      c.solved = p_basis_coeff(ctx, g.slices[static_cast<size_t>(N)], lam);
      if (g.side == Side::Ket) {
        c.conjectured = whittaker_prefactor(ctx, lam, Side::Ket) *
                        whittaker_C(ctx, lam, g.lambda, g.us, g.charge);
      } else {
        c.conjectured =
            whittaker_prefactor(ctx, lam, Side::Bra) *
            whittaker_C(ctx, reversed(lam), g.lambda, reversed(g.us), g.charge);
      }
      c.pass = c.solved == c.conjectured;
      rep.pass = rep.pass && c.pass;
      rep.checks.push_back(std::move(c));
    }
  }
  return rep;
}

CbarChainReport cbar_chain_check(const Ctx& ctx, const WhittakerLM& g) {
  if (g.side != Side::Bra)
    throw IndexOutOfRange("duality chain applies to the dual vector");
  const int m = static_cast<int>(g.us.size());
  const RatFunc lc = lambda_charge(ctx, g.lambda, g.us, g.charge);
  std::vector<RatFunc> inv_rev_us;
  for (int k = m; k >= 1; --k)
    inv_rev_us.push_back(g.us[static_cast<size_t>(k - 1)].inverse());
  std::vector<RatFunc> inv_charge;  // (q/t) / charge entries
  for (const RatFunc& c : g.charge) inv_charge.push_back(ctx.p_quarter(4) / c);

  CbarChainReport rep;
  rep.pass = true;
  for (int N = 0; N <= g.trunc; ++N) {
    for (const PartitionTuple& lam : tuples_of(m, N)) {
      CbarChain c;
      c.lam = lam;
      c.solved = p_basis_coeff(ctx, g.slices[static_cast<size_t>(N)], lam) /
                 whittaker_prefactor(ctx, lam, Side::Bra);
      c.f1 = whittaker_C(ctx, reversed(lam), g.lambda, reversed(g.us), g.charge);
      c.f2 = whittaker_C(ctx, reversed(lam), lc, inv_rev_us, inv_charge, true);
      c.f3 = whittaker_Cbar_explicit(ctx, lam, g.lambda, g.us, g.charge);
      c.eq_solved_f1 = c.solved == c.f1;
      c.eq_f1_f2 = c.f1 == c.f2;
      c.eq_f2_f3 = c.f2 == c.f3;
      c.pass = c.eq_solved_f1 && c.eq_f1_f2 && c.eq_f2_f3;
      rep.pass = rep.pass && c.pass;
      rep.checks.push_back(std::move(c));
    }
  }
  return rep;
}

GGReport gg_pairing(const Ctx& ctx, const WhittakerLM& bra,
                    const WhittakerLM& ket, int order) {
  if (bra.side != Side::Bra || ket.side != Side::Ket)
    throw IndexOutOfRange("pairing needs a dual and a primal vector");
  if (order > bra.trunc || order > ket.trunc)
    throw IndexOutOfRange("pairing order exceeds a truncation degree");
  const int m = static_cast<int>(ket.us.size());
  if (static_cast<int>(bra.us.size()) != m)
    throw IndexOutOfRange("slot count mismatch");

  const RatFunc q = ctx.q(), tt = ctx.t(), s = ctx.p_quarter(2);
  const RatFunc ll = ket.lambda * lambda_charge(ctx, bra.lambda, bra.us,
                                                bra.charge);
  GGReport rep;
  rep.order = order;
  rep.pass = true;
  for (int N = 0; N <= order; ++N) {
    RatFunc lhs(0), rhs(0);
    for (const PartitionTuple& lam : tuples_of(m, N)) {
      RatFunc norms(1);
      for (int k = 1; k <= m; ++k) norms *= macdonald(ctx, lam.slot(k)).norm;
      lhs += p_basis_coeff(ctx, bra.slices[static_cast<size_t>(N)], lam) *
             p_basis_coeff(ctx, ket.slices[static_cast<size_t>(N)], lam) *
             norms;
      RatFunc prod(1);
      for (int k = 1; k <= m; ++k)
        for (int l = 1; l <= m; ++l) {
          const RatFunc& uk = ket.us[static_cast<size_t>(k - 1)];
          const RatFunc& ul = ket.us[static_cast<size_t>(l - 1)];
          prod *= nfac(lam.slot(k), Partition(),
                       s * uk / ket.charge[static_cast<size_t>(l - 1)], q, tt);
          prod *= nfac(Partition(), lam.slot(k),
                       s * bra.charge[static_cast<size_t>(l - 1)] / uk, q, tt);
          prod /= nfac(lam.slot(k), lam.slot(l), uk / ul, q, tt);
        }
      rhs += ll.pow(N) * prod;
    }
    rep.pass = rep.pass && lhs == rhs;
    rep.lhs.push_back(std::move(lhs));
    rep.rhs.push_back(std::move(rhs));
  }
  return rep;
}

}  // namespace qtfock
