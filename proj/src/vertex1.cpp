#include "qtfock/vertex1.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

#include "qtfock/errors.hpp"

namespace qtfock {

namespace {

RatFunc formal_w() { return RatFunc::var(VarRegistry::instance().w()); }

std::vector<Partition> degree_box(int d_max) {
  std::vector<Partition> box;
  for (int d = 0; d <= d_max; ++d)
    for (const Partition& la : partitions_of(d)) box.push_back(la);
  return box;
}

}  // namespace

VOSpec phi_spec(const Ctx& ctx, const RatFunc& u, const RatFunc& v) {
  VOSpec s;
  s.source_u = u;
  s.target_v = v;
  s.creation = [ctx, u, v](int n) {
    return -(v.pow(n) - ctx.tq_quarter(4 * n) * u.pow(n)) /
           (RatFunc(n) * (RatFunc(1) - ctx.qpow(n)));
  };
  s.annihilation = [ctx, u, v](int n) {
    return (v.pow(-n) - u.pow(-n)) /
           (RatFunc(n) * (RatFunc(1) - ctx.qpow(-n)));
  };
  return s;
}

VOSpec psi_spec(const Ctx& ctx, const RatFunc& alpha, const RatFunc& beta,
                const RatFunc& kappa, const RatFunc& delta) {
  VOSpec s;
  s.source_u = RatFunc(0);
  s.target_v = RatFunc(0);
  s.creation = [ctx, alpha, beta](int n) {
    return (beta.pow(n) - alpha.pow(n)) /
           (RatFunc(n) * (RatFunc(1) - ctx.qpow(n)));
  };
  s.annihilation = [ctx, kappa, delta](int n) {
    return (delta.pow(n) - kappa.pow(n)) /
           (RatFunc(n) * (RatFunc(1) - ctx.qpow(n)));
  };
  return s;
}

std::vector<std::pair<RatFunc, ModeOp>> TTransform::apply(
    const Ctx& ctx, const ModeOp& op) const {
  const int n = op.n;
  std::vector<std::pair<RatFunc, ModeOp>> out;
  switch (op.tag) {
    case ModeOp::Tag::XPlus:
    case ModeOp::Tag::Eta:
      out.push_back({RatFunc(1), ModeOp{op.tag, n}});
      out.push_back({-tu, ModeOp{op.tag, n - 1}});
      break;
    case ModeOp::Tag::XMinus:
    case ModeOp::Tag::Xi:
      out.push_back({RatFunc(1), ModeOp{op.tag, n}});
      out.push_back({-(ctx.tq_quarter(2) * tv), ModeOp{op.tag, n - 1}});
      break;
    case ModeOp::Tag::PhiPlus:
      out.push_back({RatFunc(1), ModeOp{op.tag, n}});
      out.push_back(
          {-(ctx.tq_quarter(-1) * tu + ctx.tq_quarter(3) * tv),
           ModeOp{op.tag, n - 1}});
      out.push_back({ctx.tq_quarter(2) * tu * tv, ModeOp{op.tag, n - 2}});
      break;
    case ModeOp::Tag::PhiMinus:
      out.push_back({RatFunc(1), ModeOp{op.tag, n}});
      out.push_back(
          {-(ctx.tq_quarter(1) * (tu + tv)), ModeOp{op.tag, n - 1}});
      out.push_back({ctx.tq_quarter(2) * tu * tv, ModeOp{op.tag, n - 2}});
      break;
    default:
      throw Error("TTransform: mode tag outside the substitution domain");
  }
  return out;
}

RatFunc vo_matrix_element(const Ctx& ctx, const FockVec& bra,
                          const VOSpec& spec, const FockVec& ket,
                          const RatFunc& arg) {
  if (bra.side != Side::Bra || ket.side != Side::Ket)
    throw Error("vo_matrix_element: bra/ket sides are swapped");
  const int db = bra.value.max_degree();
  const int dk = ket.value.max_degree();
  if (db < 0 || dk < 0) return RatFunc(0);
  std::vector<SymFunc> bs, ks;
  for (int s = 0; s <= db; ++s)
    bs.push_back(exp_slice(ctx, spec.creation, s, bra.value, true));
  for (int s = 0; s <= dk; ++s)
    ks.push_back(exp_slice(ctx, spec.annihilation, s, ket.value, true));
  RatFunc res(0);
  for (int s = 0; s <= db; ++s) {
    if (bs[s].is_zero()) continue;
    for (int sp = 0; sp <= dk; ++sp) {
      if (ks[sp].is_zero()) continue;
      RatFunc pr = inner(ctx, bs[s], ks[sp]);
      if (pr.is_zero()) continue;
      res += arg.pow(s - sp) * pr;
    }
  }
  return res;
}

RatFunc vo_matrix_element(const Ctx& ctx, const FockVec& bra,
                          const VOSpec& spec, const FockVec& ket) {
  return vo_matrix_element(ctx, bra, spec, ket, formal_w());
}

FactorizationReport verify_factorization(const Ctx& ctx, const Partition& lam,
                                         const Partition& mu, const RatFunc& u,
                                         const RatFunc& v) {
  FactorizationReport rep;
  rep.lam = lam;
  rep.mu = mu;
  const VOSpec phi = phi_spec(ctx, u, v);
  const FockVec bra{macdonald_J(ctx, lam), v, Side::Bra};
  const FockVec ket{macdonald_J(ctx, mu), u, Side::Ket};
  rep.lhs = vo_matrix_element(ctx, bra, phi, ket);

  const RatFunc w = formal_w();
  const int wl = lam.weight(), wm = mu.weight();
  const long nl = lam.nstat(), nm = mu.nstat();
  const long nmc = mu.conjugate().nstat();
  const RatFunc x = ctx.qpow(1) * v / (ctx.tpow(1) * u);
  rep.rhs = nekrasov_factor(ctx, lam, mu, x) * w.pow(wl - wm) *
            (ctx.tpow(1) * u / ctx.qpow(1)).pow(wl) *
            (-(v / ctx.qpow(1))).pow(-wm) * ctx.tpow(nl) * ctx.qpow(nmc);

  // Rescale the vectors to the integral eigenbasis: the bra normalization in
  // F*_v is (-v)^{|la|} t^{-n(la)} J_la and the ket normalization in F_u is
  // (-u/t)^{|mu|} t^{-n(mu)} J_mu.
  rep.k_lhs = (-v).pow(wl) * ctx.tpow(-nl) * (-(u / ctx.tpow(1))).pow(wm) *
              ctx.tpow(-nm) * rep.lhs;
  rep.k_rhs = nekrasov_factor(ctx, lam, mu, x) *
              (-(ctx.tpow(1) * u * v * w / ctx.qpow(1))).pow(wl) *
              (ctx.tpow(1) * v * w / ctx.qpow(1)).pow(-wm) * u.pow(wm) *
              ctx.tpow(-nm) * ctx.qpow(nmc);

  rep.pass = rep.lhs == rep.rhs && rep.k_lhs == rep.k_rhs;
  return rep;
}

RelationReport intertwine_check(const Ctx& ctx, const std::string& id,
                                int n_min, int n_max, int window,
                                const RatFunc& u, const RatFunc& v) {
  RelationReport rep;
  rep.id = id;
  rep.window = window;
  rep.degree_cap = std::max(std::abs(n_min), std::abs(n_max));

  ModeOp::Tag tag;
  if (id == "eta") {
    tag = ModeOp::Tag::XPlus;
  } else if (id == "xi") {
    tag = ModeOp::Tag::XMinus;
  } else if (id == "phi_plus") {
    tag = ModeOp::Tag::PhiPlus;
  } else if (id == "phi_minus") {
    tag = ModeOp::Tag::PhiMinus;
  } else {
    rep.pass = false;
    rep.witness = "unknown relation id: " + id;
    return rep;
  }

  const RatFunc w = formal_w();
  const RatFunc shift = ctx.tpow(1) / ctx.qpow(1);
  const TTransform left{v * w, shift * u * w};
  const TTransform right{shift * v * w, u * w};
  const VOSpec phi = phi_spec(ctx, u, v);
  const int cap = window + rep.degree_cap + 3;

  rep.pass = true;
  for (int n = n_min; n <= n_max && rep.pass; ++n) {
    const auto lhs_ops = left.apply(ctx, ModeOp{tag, n});
    const auto rhs_ops = right.apply(ctx, ModeOp{tag, n});
    for (const Partition& b : degree_box(window)) {
      for (const Partition& k : degree_box(window)) {
        const FockVec bv{SymFunc::p(b), v, Side::Bra};
        const FockVec kv{SymFunc::p(k), u, Side::Ket};
        RatFunc lhs(0), rhs(0);
        for (const auto& [cf, op] : lhs_ops) {
          const FockVec moved = mode_apply(ctx, op, bv, cap);
          if (!moved.value.is_zero())
            lhs += cf * vo_matrix_element(ctx, moved, phi, kv);
        }
        for (const auto& [cf, op] : rhs_ops) {
          const FockVec moved = mode_apply(ctx, op, kv, cap);
          if (!moved.value.is_zero())
            rhs += cf * vo_matrix_element(ctx, bv, phi, moved);
        }
        if (!(lhs == rhs)) {
          rep.pass = false;
          std::ostringstream os;
          os << id << " mode " << n << " between <p_" << b.to_string()
             << "| and |p_" << k.to_string() << ">";
          rep.witness = os.str();
          break;
        }
      }
      if (!rep.pass) break;
    }
  }
  return rep;
}

TwoPointReport two_point_series(const Ctx& ctx, int order, const RatFunc& u,
                                const RatFunc& v, const RatFunc& w_target) {
  TwoPointReport rep;
  const RatFunc z1 = RatFunc::var(VarRegistry::instance().z1());
  const RatFunc z2 = RatFunc::var(VarRegistry::instance().z2());
  const VOSpec upper = phi_spec(ctx, v, w_target);  // F_v -> F_w
  const VOSpec lower = phi_spec(ctx, u, v);         // F_u -> F_v
  const FockVec vac_bra{SymFunc::one(), w_target, Side::Bra};
  const FockVec vac_ket{SymFunc::one(), u, Side::Ket};

  const RatFunc a_up = ctx.qpow(1) * w_target / (ctx.tpow(1) * v);
  const RatFunc a_low = ctx.qpow(1) * v / (ctx.tpow(1) * u);
  const RatFunc a_diag = ctx.qpow(1) / ctx.tpow(1);
  const Partition empty;

  for (int k = 0; k <= order; ++k) {
    RatFunc lhs(0), rhs(0);
    for (const Partition& la : partitions_of(k)) {
      const SymFunc J = macdonald_J(ctx, la);
      const FockVec mid_ket{J, v, Side::Ket};
      const FockVec mid_bra{J, v, Side::Bra};
      const RatFunc m1 = vo_matrix_element(ctx, vac_bra, upper, mid_ket, z1);
      const RatFunc m2 = vo_matrix_element(ctx, mid_bra, lower, vac_ket, z2);
      lhs += m1 * m2 / inner(ctx, J, J);

      rhs += nekrasov_factor(ctx, empty, la, a_up) *
             nekrasov_factor(ctx, la, empty, a_low) /
             nekrasov_factor(ctx, la, la, a_diag);
    }
    // Strip the expected monomial (u z2 / (w z1))^k; any residual
    // z-dependence breaks the comparison with the z-free right side.
    lhs *= (w_target * z1 / (u * z2)).pow(k);
    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
  }
  rep.pass = rep.lhs == rep.rhs;
  return rep;
}

UniquenessReport phi_uniqueness(const Ctx& ctx, int D, const RatFunc& u,
                                const RatFunc& v) {
  UniquenessReport rep;
  rep.D = D;
  const std::vector<Partition> box = degree_box(D);
  const int N = static_cast<int>(box.size());
  std::map<Partition, int> pidx;
  for (int i = 0; i < N; ++i) pidx[box[i]] = i;
  const auto idx = [&](const Partition& a, const Partition& b) {
    return pidx.at(a) * N + pidx.at(b);
  };

  const RatFunc w = formal_w();
  const RatFunc shift = ctx.tpow(1) / ctx.qpow(1);
  const TTransform left{v * w, shift * u * w};
  const TTransform right{shift * v * w, u * w};

  RMat rows;
  for (const Partition& b : box) {
    for (const Partition& k : box) {
      const FockVec bv{SymFunc::p(b), v, Side::Bra};
      const FockVec kv{SymFunc::p(k), u, Side::Ket};
      // Mode range for which both terms of each side stay inside the box:
      // bra degrees reach |b| + n and ket degrees reach |k| - n + 1.
      for (int n = k.weight() - D + 1; n <= D - b.weight(); ++n) {
        RVec row(static_cast<size_t>(N) * N, RatFunc(0));
        bool nonzero = false;
        for (const auto& [cf, op] : left.apply(ctx, ModeOp::x_plus(n))) {
          const FockVec moved = mode_apply(ctx, op, bv, D);
          for (const auto& [pa, c] : moved.value.coeffs()) {
            row[idx(pa, k)] += cf * c;
            nonzero = true;
          }
        }
        for (const auto& [cf, op] : right.apply(ctx, ModeOp::x_plus(n))) {
          const FockVec moved = mode_apply(ctx, op, kv, D);
          for (const auto& [pa, c] : moved.value.coeffs()) {
            row[idx(b, pa)] -= cf * c;
            nonzero = true;
          }
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    }
  }

  const std::vector<RVec> ker = kernel_basis(rows);
  rep.kernel_dim = static_cast<int>(ker.size());
  if (rep.kernel_dim == 1) {
    const RVec& sol = ker[0];
    const RatFunc c0 = sol[idx(Partition(), Partition())];
    if (!c0.is_zero()) {
      const VOSpec phi = phi_spec(ctx, u, v);
      bool ok = true;
      for (const Partition& b : box) {
        for (const Partition& k : box) {
          const FockVec bv{SymFunc::p(b), v, Side::Bra};
          const FockVec kv{SymFunc::p(k), u, Side::Ket};
          if (!(sol[idx(b, k)] / c0 == vo_matrix_element(ctx, bv, phi, kv))) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      rep.matches_phi = ok;
    }
  }
  rep.pass = rep.kernel_dim == 1 && rep.matches_phi;
  return rep;
}

}  // namespace qtfock
