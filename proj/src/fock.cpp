#include "qtfock/fock.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qtfock/errors.hpp"

namespace qtfock {

namespace {

/// Automorphism factor of a partition: the product of the factorials of the
/// part multiplicities.
Rat aut_factor(const Partition& ka) {
  mpz_class a = 1;
  const auto& ps = ka.parts();
  for (size_t i = 0; i < ps.size();) {
    size_t j = i;
    while (j < ps.size() && ps[j] == ps[i]) ++j;
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(j - i));
    a *= f;
    i = j;
  }
  return Rat(a);
}

/// One homogeneous slice of an exponential of Heisenberg modes, applied to a
/// vector.  With coefficients coef(n) on the generators, the degree-s slice
/// is  sum_{kappa |- s} (prod_r coef(kappa_r) / aut(kappa)) a_{kappa_1} ...,
/// where each generator acts as multiplication by p_k (raising = false) or
/// as the lowering derivation k (1-q^k)/(1-t^k) d/dp_k (lowering = true).
SymFunc slice_apply(const Ctx& ctx, const std::function<RatFunc(int)>& coef,
                    int s, const SymFunc& w, bool lowering) {
  if (s == 0) return w;
  if (!coef || w.is_zero()) return SymFunc();
  SymFunc res;
  for (const Partition& ka : partitions_of(s)) {
    SymFunc term = w;
    if (lowering) {
      for (int part : ka.parts()) {
        term = heis_pos(ctx, part, term);
        if (term.is_zero()) break;
      }
    } else {
      for (int part : ka.parts()) term = term.mul_p(part);
    }
    if (term.is_zero()) continue;
    RatFunc c(1);
    for (int part : ka.parts()) c *= coef(part);
    c *= RatFunc(Rat(1) / aut_factor(ka));
    res += c * term;
  }
  return res;
}

RatFunc one_minus(RatFunc x) { return RatFunc(1) - x; }

}  // namespace

RatFunc fock_pairing(const Ctx& ctx, const FockVec& bra, const FockVec& ket) {
  return inner(ctx, bra.value, ket.value);
}

SymFunc exp_slice(const Ctx& ctx, const std::function<RatFunc(int)>& coef,
                  int s, const SymFunc& v, bool lowering) {
  return slice_apply(ctx, coef, s, v, lowering);
}

ExpCurrent eta_current(const Ctx& ctx) {
  ExpCurrent c;
  c.cr = [ctx](int n) { return one_minus(ctx.tpow(-n)) * RatFunc(1, n); };
  c.an = [ctx](int n) { return -one_minus(ctx.tpow(n)) * RatFunc(1, n); };
  return c;
}

ExpCurrent xi_current(const Ctx& ctx) {
  ExpCurrent c;
  c.cr = [ctx](int n) {
    return -one_minus(ctx.tpow(-n)) * ctx.tq_quarter(2 * n) * RatFunc(1, n);
  };
  c.an = [ctx](int n) {
    return one_minus(ctx.tpow(n)) * ctx.tq_quarter(2 * n) * RatFunc(1, n);
  };
  return c;
}

ExpCurrent phi_plus_current(const Ctx& ctx) {
  ExpCurrent c;
  c.an = [ctx](int n) {
    return -one_minus(ctx.tpow(n)) * one_minus(ctx.tpow(n) * ctx.qpow(-n)) *
           ctx.tq_quarter(-n) * RatFunc(1, n);
  };
  return c;
}

ExpCurrent phi_minus_current(const Ctx& ctx) {
  ExpCurrent c;
  c.cr = [ctx](int n) {
    return one_minus(ctx.tpow(-n)) * one_minus(ctx.tpow(n) * ctx.qpow(-n)) *
           ctx.tq_quarter(-n) * RatFunc(1, n);
  };
  return c;
}

SymFunc current_mode_ket(const Ctx& ctx, const ExpCurrent& cur, int n,
                         const SymFunc& v) {
  if (v.is_zero()) return SymFunc();
  const int d = v.max_degree();
  SymFunc res;
  for (int i = std::max(0, -n); i <= d - n; ++i) {
    if (i > 0 && !cur.cr) break;
    SymFunc bv = slice_apply(ctx, cur.an, i + n, v, /*lowering=*/true);
    if (bv.is_zero()) continue;
    res += slice_apply(ctx, cur.cr, i, bv, /*lowering=*/false);
  }
  return res;
}

SymFunc current_mode_bra(const Ctx& ctx, const ExpCurrent& cur, int n,
                         const SymFunc& v) {
  if (v.is_zero()) return SymFunc();
  const int d = v.max_degree();
  SymFunc res;
  for (int i = std::max(0, -n); i <= d; ++i) {
    if (i > 0 && !cur.cr) break;
    SymFunc av = slice_apply(ctx, cur.cr, i, v, /*lowering=*/true);
    if (av.is_zero()) continue;
    res += slice_apply(ctx, cur.an, i + n, av, /*lowering=*/false);
  }
  return res;
}

FockVec mode_apply(const Ctx& ctx, const ModeOp& op, const FockVec& v,
                   int degree_cap) {
  FockVec out;
  out.param_u = v.param_u;
  out.side = v.side;
  const bool ket = (v.side == Side::Ket);
  RatFunc scalar(1);
  const ExpCurrent* cur = nullptr;
  ExpCurrent store;
  switch (op.tag) {
    case ModeOp::Tag::A: {
      if (op.n == 0) {
        out.value = v.value;  // a_0 acts as the scalar 1
      } else if (op.n < 0) {
        out.value = ket ? heis_neg(-op.n, v.value)
                        : heis_pos(ctx, -op.n, v.value);
      } else {
        out.value = ket ? heis_pos(ctx, op.n, v.value)
                        : heis_neg(op.n, v.value);
      }
      break;
    }
    case ModeOp::Tag::Eta:
      store = eta_current(ctx);
      cur = &store;
      break;
    case ModeOp::Tag::Xi:
      store = xi_current(ctx);
      cur = &store;
      break;
    case ModeOp::Tag::PhiPlus:
      store = phi_plus_current(ctx);
      cur = &store;
      break;
    case ModeOp::Tag::PhiMinus:
      store = phi_minus_current(ctx);
      cur = &store;
      break;
    case ModeOp::Tag::XPlus:
      store = eta_current(ctx);
      cur = &store;
      scalar = v.param_u;
      break;
    case ModeOp::Tag::XMinus:
      store = xi_current(ctx);
      cur = &store;
      scalar = v.param_u.inverse();
      break;
  }
  if (cur != nullptr) {
    out.value = ket ? current_mode_ket(ctx, *cur, op.n, v.value)
                    : current_mode_bra(ctx, *cur, op.n, v.value);
    if (!scalar.is_one()) out.value.scale(scalar);
  }
  if (out.value.max_degree() > degree_cap) {
    throw DegreeCapExceeded("mode application exceeds the degree cap " +
                            std::to_string(degree_cap));
  }
  return out;
}

RatFunc eps_eigen(const Ctx& ctx, const Partition& la) {
  RatFunc s(0);
  const auto& ps = la.parts();
  for (size_t i = 0; i < ps.size(); ++i) {
    s += (ctx.qpow(ps[i]) - RatFunc(1)) * ctx.tpow(-(static_cast<long>(i) + 1));
  }
  return RatFunc(1) + (ctx.t() - RatFunc(1)) * s;
}

SymFunc pbw_eta_word(const Ctx& ctx, const Partition& la, Side side) {
  ExpCurrent eta = eta_current(ctx);
  SymFunc w = SymFunc::one();
  const auto& ps = la.parts();
  // Ket word applies the rightmost (deepest-raising) mode first; the bra word
  // is the transposed composition, so both iterate the parts from the end.
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
    w = (side == Side::Ket) ? current_mode_ket(ctx, eta, -*it, w)
                            : current_mode_bra(ctx, eta, *it, w);
    if (w.is_zero()) break;
  }
  return w;
}

FockVec pbw_vector(const Ctx& ctx, const Partition& la, Side side,
                   const RatFunc& u, int degree_cap) {
  FockVec out;
  out.param_u = u;
  out.side = side;
  out.value = pbw_eta_word(ctx, la, side);
  out.value.scale(u.pow(la.length()));
  if (out.value.max_degree() > degree_cap) {
    throw DegreeCapExceeded("word vector exceeds the degree cap " +
                            std::to_string(degree_cap));
  }
  return out;
}

namespace {

/// Matrix of the eta zero mode on the degree-n power-sum slice, columns and
/// rows indexed by partitions_of(n).
RMat eta0_matrix(const Ctx& ctx, const std::vector<Partition>& basis,
                 Side side) {
  ExpCurrent eta = eta_current(ctx);
  const int N = static_cast<int>(basis.size());
  RMat M(N, RVec(N, RatFunc(0)));
  for (int c = 0; c < N; ++c) {
    SymFunc img = (side == Side::Ket)
                      ? current_mode_ket(ctx, eta, 0, SymFunc::p(basis[c]))
                      : current_mode_bra(ctx, eta, 0, SymFunc::p(basis[c]));
    for (int r = 0; r < N; ++r) {
      RatFunc e = img.coeff(basis[r]);
      if (!e.is_zero()) M[r][c] = e;
    }
  }
  return M;
}

/// Columns = coefficient vectors of the bare word vectors Y_mu on the
/// degree-n power-sum slice.
RMat word_matrix(const Ctx& ctx, const std::vector<Partition>& basis,
                 Side side) {
  const int N = static_cast<int>(basis.size());
  RMat Y(N, RVec(N, RatFunc(0)));
  for (int c = 0; c < N; ++c) {
    SymFunc w = pbw_eta_word(ctx, basis[c], side);
    for (int r = 0; r < N; ++r) {
      RatFunc e = w.coeff(basis[r]);
      if (!e.is_zero()) Y[r][c] = e;
    }
  }
  return Y;
}

struct EigenSide {
  SymFunc vec;                          // normalized eigenvector
  std::map<Partition, RatFunc> in_x;    // coefficients on the X_mu words
};

EigenSide solve_side(const std::vector<Partition>& basis, const RMat& M,
                     const RMat& Y, const Partition& la, const RatFunc& eps,
                     const RatFunc& u) {
  const int N = static_cast<int>(basis.size());
  RMat A = M;
  for (int i = 0; i < N; ++i) A[i][i] -= eps;
  std::vector<RVec> kern = kernel_basis(A);
  if (kern.empty()) {
    throw InconsistentSystem("no eigenvector found for " + la.to_string());
  }
  if (kern.size() > 1) {
    throw EigenvalueCollision("degenerate eigenspace at " + la.to_string());
  }
  RVec v = kern[0];

  LinSolve ls = solve_linear(Y, v);
  if (ls.rank < N) {
    throw PBWRankDefect("word vectors of weight " +
                        std::to_string(la.weight()) +
                        " do not span the slice");
  }
  if (!ls.consistent) {
    throw InconsistentSystem("eigenvector not in the word-vector span at " +
                             la.to_string());
  }

  const int n = la.weight();
  Partition ones(std::vector<int>(n, 1));
  int ones_idx = -1;
  for (int i = 0; i < N; ++i) {
    if (basis[i] == ones) ones_idx = i;
  }
  RatFunc c_ones = ls.particular[static_cast<size_t>(ones_idx)];
  if (c_ones.is_zero()) {
    throw InconsistentSystem("eigenvector has no component on the all-ones "
                             "word vector at " + la.to_string());
  }

  EigenSide out;
  RatFunc scale = u.pow(n) / c_ones;
  for (int i = 0; i < N; ++i) {
    if (v[i].is_zero()) continue;
    out.vec.add_term(basis[i], scale * v[i]);
  }
  for (int i = 0; i < N; ++i) {
    const RatFunc& ci = ls.particular[static_cast<size_t>(i)];
    if (ci.is_zero()) continue;
    out.in_x[basis[i]] = ci * u.pow(n - basis[i].length()) / c_ones;
  }
  return out;
}

}  // namespace

std::vector<KData> k_basis(const Ctx& ctx, int n, const RatFunc& u) {
  std::vector<Partition> basis = partitions_of(n);
  const int N = static_cast<int>(basis.size());

  std::vector<RatFunc> eps(basis.size());
  for (int i = 0; i < N; ++i) eps[i] = eps_eigen(ctx, basis[i]);
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      if (value_equal(eps[i], eps[j])) {
        throw EigenvalueCollision("equal eigenvalues at " +
                                  basis[i].to_string() + " and " +
                                  basis[j].to_string());
      }
    }
  }

  RMat Mket = eta0_matrix(ctx, basis, Side::Ket);
  RMat Mbra = eta0_matrix(ctx, basis, Side::Bra);
  RMat Yket = word_matrix(ctx, basis, Side::Ket);
  RMat Ybra = word_matrix(ctx, basis, Side::Bra);

  std::vector<KData> out;
  for (int i = 0; i < N; ++i) {
    KData kd;
    kd.lam = basis[i];
    kd.eigen = u * eps[i];
    EigenSide ks = solve_side(basis, Mket, Yket, basis[i], eps[i], u);
    EigenSide bs = solve_side(basis, Mbra, Ybra, basis[i], eps[i], u);
    kd.ket = FockVec{ks.vec, u, Side::Ket};
    kd.bra = FockVec{bs.vec, u, Side::Bra};
    kd.ket_in_x = std::move(ks.in_x);
    kd.bra_in_x = std::move(bs.in_x);
    out.push_back(std::move(kd));
  }
  return out;
}

int pbw_rank(const Ctx& ctx, int n) {
  std::vector<Partition> basis = partitions_of(n);
  RMat Y = word_matrix(ctx, basis, Side::Ket);
  LinSolve ls = solve_linear(Y, RVec(basis.size(), RatFunc(0)));
  return ls.rank;
}

std::array<RatFunc, 4> gfun_plus_coeffs(const Ctx& ctx) {
  std::vector<RatFunc> roots = {ctx.q(), ctx.tpow(-1), ctx.qpow(-1) * ctx.t()};
  std::array<RatFunc, 4> c;
  for (int k = 0; k <= 3; ++k) {
    c[static_cast<size_t>(k)] =
        RatFunc((k % 2 == 0) ? 1 : -1) * elementary_sym(roots, k);
  }
  return c;
}

std::array<RatFunc, 4> gfun_minus_coeffs(const Ctx& ctx) {
  std::vector<RatFunc> roots = {ctx.qpow(-1), ctx.t(), ctx.q() * ctx.tpow(-1)};
  std::array<RatFunc, 4> c;
  for (int k = 0; k <= 3; ++k) {
    c[static_cast<size_t>(k)] =
        RatFunc((k % 2 == 0) ? 1 : -1) * elementary_sym(roots, k);
  }
  return c;
}

namespace {

/// Power-series division num/den to the requested order; den[0] must be a
/// nonzero scalar of the coefficient field.
std::vector<RatFunc> series_div(const std::vector<RatFunc>& num,
                                const std::vector<RatFunc>& den, int order) {
  std::vector<RatFunc> s(static_cast<size_t>(order) + 1, RatFunc(0));
  RatFunc d0inv = den[0].inverse();
  for (int k = 0; k <= order; ++k) {
    RatFunc acc =
        (k < static_cast<int>(num.size())) ? num[static_cast<size_t>(k)]
                                           : RatFunc(0);
    for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j) {
      acc -= den[static_cast<size_t>(j)] * s[static_cast<size_t>(k - j)];
    }
    s[static_cast<size_t>(k)] = acc * d0inv;
  }
  return s;
}

}  // namespace

std::vector<RatFunc> g_series(const Ctx& ctx, int order) {
  auto gp = gfun_plus_coeffs(ctx);
  auto gm = gfun_minus_coeffs(ctx);
  std::vector<RatFunc> num(gp.begin(), gp.end());
  std::vector<RatFunc> den(gm.begin(), gm.end());
  return series_div(num, den, order);
}

std::vector<RatFunc> g_recip_inv_series(const Ctx& ctx, int order) {
  auto gp = gfun_plus_coeffs(ctx);
  auto gm = gfun_minus_coeffs(ctx);
  // g(1/z)^{-1} = Gm(1/z)/Gp(1/z); clearing z^{-3} reverses both coefficient
  // lists, and the reversed leading terms are the (invertible) cubic
  // coefficients.
  std::vector<RatFunc> num(gm.rbegin(), gm.rend());
  std::vector<RatFunc> den(gp.rbegin(), gp.rend());
  return series_div(num, den, order);
}

RatFunc fxx_coeff(const Ctx& ctx, int l) {
  if (l == 0) return RatFunc(1);
  RatFunc q = ctx.q(), tinv = ctx.tpow(-1);
  return one_minus(q) * one_minus(tinv) *
         one_minus(ctx.qpow(l) * ctx.tpow(-l)) / one_minus(q * tinv);
}

namespace {

/// Apply the two-mode word  first `inner`, then `outer`  to a ket.
SymFunc word2_ket(const Ctx& ctx, const ExpCurrent& outer, int n_outer,
                  const ExpCurrent& inner_cur, int n_inner, const SymFunc& v) {
  SymFunc w = current_mode_ket(ctx, inner_cur, n_inner, v);
  if (w.is_zero()) return w;
  return current_mode_ket(ctx, outer, n_outer, w);
}

std::string witness_str(const std::string& id, int m, int n,
                        const Partition& la) {
  std::ostringstream os;
  os << id << " fails at modes m=" << m << ", n=" << n << " on p_"
     << la.to_string();
  return os.str();
}

}  // namespace

RelationReport relation_check(const Ctx& ctx, const std::string& id,
                              int window, int degree_cap) {
  RelationReport rep;
  rep.id = id;
  rep.window = window;
  rep.degree_cap = degree_cap;
  rep.pass = true;

  ExpCurrent eta = eta_current(ctx);
  ExpCurrent xi = xi_current(ctx);
  ExpCurrent fp = phi_plus_current(ctx);
  ExpCurrent fm = phi_minus_current(ctx);
  auto gp = gfun_plus_coeffs(ctx);
  auto gm = gfun_minus_coeffs(ctx);

  std::vector<Partition> basis;
  for (int d = 0; d <= window; ++d) {
    for (const Partition& la : partitions_of(d)) basis.push_back(la);
  }

  const int K = degree_cap;
  for (int m = -K; m <= K && rep.pass; ++m) {
    for (int n = -K; n <= K && rep.pass; ++n) {
      for (const Partition& la : basis) {
        SymFunc v = SymFunc::p(la);
        const int d = la.weight();
        SymFunc lhs, rhs;
        if (id == "fxx") {
          for (int l = 0; n + l <= d; ++l) {
            lhs += fxx_coeff(ctx, l) *
                   word2_ket(ctx, eta, m - l, eta, n + l, v);
          }
          for (int l = 0; m + l <= d; ++l) {
            rhs += fxx_coeff(ctx, l) *
                   word2_ket(ctx, eta, n - l, eta, m + l, v);
          }
        } else if (id == "quadratic_xpxp") {
          for (int k = 0; k <= 3; ++k) {
            lhs += gm[static_cast<size_t>(k)] *
                   word2_ket(ctx, eta, m + k, eta, n - k, v);
            rhs += gp[static_cast<size_t>(k)] *
                   word2_ket(ctx, eta, n - k, eta, m + k, v);
          }
        } else if (id == "commutator_xpxm") {
          lhs = word2_ket(ctx, eta, m, xi, n, v) -
                word2_ket(ctx, xi, n, eta, m, v);
          RatFunc pref = one_minus(ctx.q()) * one_minus(ctx.tpow(-1)) /
                         one_minus(ctx.q() * ctx.tpow(-1));
          rhs = pref * (ctx.tq_quarter(m - n) *
                            current_mode_ket(ctx, fp, m + n, v) -
                        ctx.tq_quarter(n - m) *
                            current_mode_ket(ctx, fm, m + n, v));
        } else if (id == "psi_xp") {
          // The plus family; the minus family is checked below.
          for (int k = 0; k <= 3; ++k) {
            RatFunc cg = ctx.tq_quarter(-k);
            lhs += gp[static_cast<size_t>(k)] * cg *
                   word2_ket(ctx, fp, m - k, eta, n + k, v);
            rhs += gm[static_cast<size_t>(k)] * cg *
                   word2_ket(ctx, eta, n + k, fp, m - k, v);
          }
          SymFunc lhs2, rhs2;
          for (int k = 0; k <= 3; ++k) {
            RatFunc cg = ctx.tq_quarter(-k);
            lhs2 += gm[static_cast<size_t>(k)] * cg *
                    word2_ket(ctx, fm, m + k, eta, n - k, v);
            rhs2 += gp[static_cast<size_t>(k)] * cg *
                    word2_ket(ctx, eta, n - k, fm, m + k, v);
          }
          if (!(lhs2 - rhs2).is_zero()) {
            rep.pass = false;
            rep.witness = witness_str(id + " (minus family)", m, n, la);
            break;
          }
        } else {
          throw Error("unknown relation id: " + id);
        }
        if (!(lhs - rhs).is_zero()) {
          rep.pass = false;
          rep.witness = witness_str(id, m, n, la);
          break;
        }
      }
    }
  }
  return rep;
}

}  // namespace qtfock
