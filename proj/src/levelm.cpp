#include "qtfock/levelm.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <tuple>
#include <utility>

#include "qtfock/errors.hpp"
#include "qtfock/nekrasov.hpp"
#include "qtfock/varreg.hpp"

namespace qtfock {

namespace {

void check_params(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b,
                  const char* what) {
  if (a.size() != b.size())
    throw IndexOutOfRange(std::string(what) + ": slot counts disagree");
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i])
      throw IndexOutOfRange(std::string(what) + ": slot parameters disagree");
}

}  // namespace

int TensorFockVec::max_degree() const {
  int d = -1;
  for (const auto& [t, c] : coeffs) d = std::max(d, t.weight());
  return d;
}

RatFunc TensorFockVec::coeff(const PartitionTuple& t) const {
  auto it = coeffs.find(t);
  return it == coeffs.end() ? RatFunc(0) : it->second;
}

void TensorFockVec::add_term(const PartitionTuple& t, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = coeffs.emplace(t, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

TensorFockVec& TensorFockVec::operator+=(const TensorFockVec& o) {
  check_params(params, o.params, "tensor sum");
  if (side != o.side) throw IndexOutOfRange("tensor sum: sides disagree");
  for (const auto& [t, c] : o.coeffs) add_term(t, c);
  return *this;
}

TensorFockVec& TensorFockVec::scale(const RatFunc& f) {
  if (f.is_zero()) {
    coeffs.clear();
    return *this;
  }
  for (auto& [t, c] : coeffs) c *= f;
  return *this;
}

TensorFockVec tensor_vacuum(const std::vector<RatFunc>& params, Side side) {
  if (params.empty()) throw IndexOutOfRange("tensor module needs a slot");
  TensorFockVec v;
  v.params = params;
  v.side = side;
  v.coeffs.emplace(PartitionTuple(std::vector<Partition>(params.size())),
                   RatFunc(1));
  return v;
}

TensorFockVec tensor_basis(const PartitionTuple& t,
                           const std::vector<RatFunc>& params, Side side) {
  if (t.slots() != static_cast<int>(params.size()))
    throw IndexOutOfRange("basis tuple does not match the slot count");
  TensorFockVec v;
  v.params = params;
  v.side = side;
  v.coeffs.emplace(t, RatFunc(1));
  return v;
}

TensorFockVec tensor_from_slots(const std::vector<SymFunc>& fs,
                                const std::vector<RatFunc>& params,
                                Side side) {
  if (fs.size() != params.size())
    throw IndexOutOfRange("slot functions do not match the slot count");
  TensorFockVec v;
  v.params = params;
  v.side = side;
  int m = static_cast<int>(fs.size());
  std::vector<Partition> pick(static_cast<size_t>(m));
  std::function<void(int, const RatFunc&)> rec = [&](int s, const RatFunc& acc) {
    if (s == m) {
      v.add_term(PartitionTuple(pick), acc);
      return;
    }
    for (const auto& [la, c] : fs[static_cast<size_t>(s)].coeffs()) {
      pick[static_cast<size_t>(s)] = la;
      rec(s + 1, acc * c);
    }
  };
  rec(0, RatFunc(1));
  return v;
}

TensorFockVec tensor_m_vector(const PartitionTuple& t,
                              const std::vector<RatFunc>& params, Side side) {
  std::vector<SymFunc> fs;
  fs.reserve(static_cast<size_t>(t.slots()));
  for (int k = 1; k <= t.slots(); ++k) fs.push_back(m_in_p(t.slot(k)));
  return tensor_from_slots(fs, params, side);
}

std::map<PartitionTuple, RatFunc> tensor_to_m_basis(const TensorFockVec& v) {
  std::map<PartitionTuple, RatFunc> cur = v.coeffs;
  for (int j = 1; j <= v.slots(); ++j) {
    std::map<PartitionTuple, RatFunc> next;
    for (const auto& [t, c] : cur) {
      for (const auto& [mu, d] : to_m_basis(SymFunc::p(t.slot(j)))) {
        std::vector<Partition> comp = t.comp();
        comp[static_cast<size_t>(j - 1)] = mu;
        PartitionTuple t2{std::move(comp)};
        auto [it, fresh] = next.emplace(t2, c * d);
        if (!fresh) it->second += c * d;
      }
    }
    for (auto it = next.begin(); it != next.end();)
      it = it->second.is_zero() ? next.erase(it) : std::next(it);
    cur = std::move(next);
  }
  return cur;
}

RatFunc tensor_pairing(const Ctx& ctx, const TensorFockVec& bra,
                       const TensorFockVec& ket) {
  if (bra.side != Side::Bra || ket.side != Side::Ket)
    throw IndexOutOfRange("pairing takes a bra on the left, a ket on the right");
  check_params(bra.params, ket.params, "pairing");
  RatFunc out(0);
  for (const auto& [t, c] : bra.coeffs) {
    auto it = ket.coeffs.find(t);
    if (it == ket.coeffs.end()) continue;
    RatFunc nrm(1);
    for (int k = 1; k <= t.slots(); ++k) nrm *= p_inner_norm(ctx, t.slot(k));
    out += c * it->second * nrm;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normal-ordering engine.
//
// Each slot of a ladder operator carries a finite product of the four
// standard currents, evaluated at quarter-power shifts p^{e/4} z of a common
// argument.  Every product of two such currents normal-orders with a scalar
// that is a finite product of factors (1 - monomial)^{+-1}: the annihilation
// law of every current is divisible by (1 - t^n), which cancels the
// denominator of the oscillator pairing and leaves a finite signed sum of
// pure monomials in the logarithm.

namespace {

enum class Prim { Eta, Xi, PhiPlus, PhiMinus };

// A signed Laurent monomial q4^eq * t4^et in the quarter-root generators.
struct SignedMono {
  int sign, eq, et;
};

// Creation law of the current as (1/n) sum_i s_i b_i^n.
const std::vector<SignedMono>& cr_bases(Prim p) {
  static const std::vector<SignedMono> eta = {{+1, 0, 0}, {-1, 0, -4}};
  static const std::vector<SignedMono> xi = {{-1, -2, 2}, {+1, -2, -2}};
  static const std::vector<SignedMono> phip = {};
  static const std::vector<SignedMono> phim = {
      {+1, 1, -1}, {-1, -3, 3}, {-1, 1, -5}, {+1, -3, -1}};
  switch (p) {
    case Prim::Eta: return eta;
    case Prim::Xi: return xi;
    case Prim::PhiPlus: return phip;
    default: return phim;
  }
}

// Annihilation law with the universal factor removed:
// an(n) = (1/n) (1 - t^n) sum_i s_i b_i^n.
const std::vector<SignedMono>& anred_bases(Prim p) {
  static const std::vector<SignedMono> eta = {{-1, 0, 0}};
  static const std::vector<SignedMono> xi = {{+1, -2, 2}};
  static const std::vector<SignedMono> phip = {{-1, 1, -1}, {+1, -3, 3}};
  static const std::vector<SignedMono> phim = {};
  switch (p) {
    case Prim::Eta: return eta;
    case Prim::Xi: return xi;
    case Prim::PhiPlus: return phip;
    default: return phim;
  }
}

// One current at a shifted argument p^{e/4} z.
struct SlotFactor {
  Prim prim;
  int e;
};

// Scalar produced by normal-ordering left(p^{el/4} z) right(p^{er/4} z):
// the exponential of the pairing of the left annihilation half with the
// right creation half.  `zero` marks a vanishing product (the right factor
// sits on a zero of the ordering kernel).
struct PairScalar {
  bool zero = false;
  RatFunc value;
};

PairScalar contract_pair(const Ctx& ctx, const SlotFactor& left,
                         const SlotFactor& right) {
  // log scalar = sum_{n>=1} (1/n) S_an(n) S_cr(n) (1 - q^n) x^n,
  // x = p^{(er-el)/4}; collect the signed monomials of the summand.
  std::map<std::pair<int, int>, int> net;  // (eq, et) -> net sign
  const int de = right.e - left.e;         // x contributes (de, -de)
  for (const SignedMono& a : anred_bases(left.prim)) {
    for (const SignedMono& c : cr_bases(right.prim)) {
      int s = a.sign * c.sign;
      net[{a.eq + c.eq + de, a.et + c.et - de}] += s;
      net[{a.eq + c.eq + 4 + de, a.et + c.et - de}] -= s;  // the -q^n term
    }
  }
  // exp turns each monomial g with net sign sigma into (1 - g)^{-sigma}.
  bool zero = false;
  RatFunc value(1);
  for (const auto& [mono, sigma] : net) {
    if (sigma == 0) continue;
    const auto& [eq, et] = mono;
    if (eq == 0 && et == 0) {
      if (sigma > 0)
        throw PoleAtPoint("normal ordering has a pole at these arguments");
      zero = true;
      continue;
    }
    RatFunc g = ctx.q4().pow(eq) * ctx.t4().pow(et);
    if (g.is_one()) {
      // Only possible under specialization: the sampled point collapsed two
      // distinct monomials, so this sample cannot represent the scalar.
      throw PoleAtPoint("specialization collides with an ordering factor");
    }
    RatFunc f = RatFunc(1) - g;
    if (sigma > 0)
      value /= f.pow(sigma);
    else
      value *= f.pow(-sigma);
  }
  if (zero) return {true, RatFunc(0)};
  return {false, value};
}

// One normal-ordered summand of an operator: a scalar times, per slot, a
// list of current factors (empty list = identity on that slot).
struct PlanTerm {
  RatFunc scalar;
  std::vector<std::vector<SlotFactor>> slots;
};

// Slot components of the i-th summand of the first ladder current: eta in
// slot i, shifted minus-type vertex factors below it, identity above.
void lambda_tilde_slots(int i, int add, std::vector<std::vector<SlotFactor>>& sl) {
  for (int s = 1; s < i; ++s)
    sl[static_cast<size_t>(s - 1)].push_back({Prim::PhiMinus, -(2 * s - 1) + add});
  sl[static_cast<size_t>(i - 1)].push_back({Prim::Eta, -2 * (i - 1) + add});
}

// Multiply out the contraction scalars of one term; false when it vanishes.
bool resolve_contractions(const Ctx& ctx, PlanTerm& term) {
  for (const auto& fs : term.slots) {
    for (size_t a = 0; a + 1 < fs.size(); ++a) {
      for (size_t b = a + 1; b < fs.size(); ++b) {
        PairScalar pr = contract_pair(ctx, fs[a], fs[b]);
        if (pr.zero) return false;
        term.scalar *= pr.value;
      }
    }
  }
  return true;
}

std::vector<PlanTerm> op_plan(const Ctx& ctx, const LevelMOp& op) {
  const int m = static_cast<int>(op.params.size());
  std::vector<PlanTerm> plan;
  switch (op.tag) {
    case LevelMOp::Tag::LambdaTilde: {
      if (op.index < 1 || op.index > m)
        throw IndexOutOfRange("slot index outside the tensor range");
      PlanTerm t{RatFunc(1),
                 std::vector<std::vector<SlotFactor>>(static_cast<size_t>(m))};
      lambda_tilde_slots(op.index, 0, t.slots);
      plan.push_back(std::move(t));
      break;
    }
    case LevelMOp::Tag::X: {
      const int k = op.index;
      if (k < 1) throw IndexOutOfRange("ladder order must be positive");
      if (k > m) return plan;  // the operator vanishes identically
      std::vector<int> seq(static_cast<size_t>(k), 1);
      for (;;) {
        PlanTerm t{RatFunc(1),
                   std::vector<std::vector<SlotFactor>>(static_cast<size_t>(m))};
        // factor r (left to right) sits at argument p^{k-r} z
        for (int r = 1; r <= k; ++r) {
          int j = seq[static_cast<size_t>(r - 1)];
          t.scalar *= op.params[static_cast<size_t>(j - 1)];
          lambda_tilde_slots(j, 4 * (k - r), t.slots);
        }
        if (resolve_contractions(ctx, t)) plan.push_back(std::move(t));
        int pos = k - 1;
        while (pos >= 0 && seq[static_cast<size_t>(pos)] == m) {
          seq[static_cast<size_t>(pos)] = 1;
          --pos;
        }
        if (pos < 0) break;
        ++seq[static_cast<size_t>(pos)];
      }
      break;
    }
    case LevelMOp::Tag::XMinus: {
      for (int i = 1; i <= m; ++i) {
        PlanTerm t{op.params[static_cast<size_t>(i - 1)].inverse(),
                   std::vector<std::vector<SlotFactor>>(static_cast<size_t>(m))};
        t.slots[static_cast<size_t>(i - 1)].push_back(
            {Prim::Xi, -2 * (m - i)});
        for (int j = i + 1; j <= m; ++j)
          t.slots[static_cast<size_t>(j - 1)].push_back(
              {Prim::PhiPlus, -(2 * (m - j) + 1)});
        plan.push_back(std::move(t));
      }
      break;
    }
    case LevelMOp::Tag::PsiPlus: {
      PlanTerm t{RatFunc(1),
                 std::vector<std::vector<SlotFactor>>(static_cast<size_t>(m))};
      for (int i = 1; i <= m; ++i)
        t.slots[static_cast<size_t>(i - 1)].push_back(
            {Prim::PhiPlus, 2 * i - m - 1});
      plan.push_back(std::move(t));
      break;
    }
    case LevelMOp::Tag::PsiMinus: {
      PlanTerm t{RatFunc(1),
                 std::vector<std::vector<SlotFactor>>(static_cast<size_t>(m))};
      for (int i = 1; i <= m; ++i)
        t.slots[static_cast<size_t>(i - 1)].push_back(
            {Prim::PhiMinus, m + 1 - 2 * i});
      plan.push_back(std::move(t));
      break;
    }
  }
  return plan;
}

ExpCurrent prim_current(const Ctx& ctx, Prim p) {
  switch (p) {
    case Prim::Eta: return eta_current(ctx);
    case Prim::Xi: return xi_current(ctx);
    case Prim::PhiPlus: return phi_plus_current(ctx);
    default: return phi_minus_current(ctx);
  }
}

// Combined exponential current of one slot: a product of factors at shifted
// arguments has creation law sum_f cr_f(n) p^{e_f n / 4} and annihilation
// law sum_f an_f(n) p^{-e_f n / 4} once normal-ordered.
ExpCurrent combined_slot_current(const Ctx& ctx,
                                 const std::vector<SlotFactor>& fs) {
  auto parts = std::make_shared<std::vector<std::pair<ExpCurrent, int>>>();
  for (const SlotFactor& f : fs)
    parts->push_back({prim_current(ctx, f.prim), f.e});
  Ctx c = ctx;
  ExpCurrent out;
  out.cr = [c, parts](int n) {
    RatFunc s(0);
    for (const auto& [cur, e] : *parts)
      if (cur.cr) s += cur.cr(n) * c.p_quarter(static_cast<long>(e) * n);
    return s;
  };
  out.an = [c, parts](int n) {
    RatFunc s(0);
    for (const auto& [cur, e] : *parts)
      if (cur.an) s += cur.an(n) * c.p_quarter(-static_cast<long>(e) * n);
    return s;
  };
  return out;
}

void for_each_composition(int slots, int total,
                          const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> cur(static_cast<size_t>(slots), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == slots - 1) {
      cur[static_cast<size_t>(pos)] = left;
      f(cur);
      return;
    }
    for (int r = 0; r <= left; ++r) {
      cur[static_cast<size_t>(pos)] = r;
      rec(pos + 1, left - r);
    }
  };
  rec(0, total);
}

TensorFockVec apply_plans(const Ctx& ctx, const std::vector<PlanTerm>& plan,
                          int n, const TensorFockVec& v, int degree_cap) {
  TensorFockVec out;
  out.params = v.params;
  out.side = v.side;
  if (plan.empty()) return out;  // the zero operator
  const int m = v.slots();
  const bool ket = (v.side == Side::Ket);

  std::vector<std::vector<ExpCurrent>> curs;
  curs.reserve(plan.size());
  for (const PlanTerm& t : plan) {
    std::vector<ExpCurrent> cs;
    cs.reserve(static_cast<size_t>(m));
    for (int s = 0; s < m; ++s)
      cs.push_back(combined_slot_current(ctx, t.slots[static_cast<size_t>(s)]));
    curs.push_back(std::move(cs));
  }

  std::vector<std::map<Partition, RatFunc>> slot_out(static_cast<size_t>(m));
  std::vector<Partition> pick(static_cast<size_t>(m));
  for (const auto& [T, c] : v.coeffs) {
    const int R = ket ? T.weight() - n : T.weight() + n;
    if (R < 0) continue;
    if (R > degree_cap)
      throw DegreeCapExceeded("mode application leaves the degree window");
    for (size_t ti = 0; ti < plan.size(); ++ti) {
      const RatFunc base = plan[ti].scalar * c;
      for_each_composition(m, R, [&](const std::vector<int>& r) {
        bool dead = false;
        for (int s = 0; s < m && !dead; ++s) {
          const Partition& la = T.slot(s + 1);
          int nu = ket ? la.weight() - r[static_cast<size_t>(s)]
                       : r[static_cast<size_t>(s)] - la.weight();
          SymFunc res =
              ket ? current_mode_ket(ctx, curs[ti][static_cast<size_t>(s)], nu,
                                     SymFunc::p(la))
                  : current_mode_bra(ctx, curs[ti][static_cast<size_t>(s)], nu,
                                     SymFunc::p(la));
          if (res.is_zero()) {
            dead = true;
            break;
          }
          slot_out[static_cast<size_t>(s)] = res.coeffs();
        }
        if (dead) return;
        std::function<void(int, const RatFunc&)> rec = [&](int s,
                                                           const RatFunc& acc) {
          if (s == m) {
            out.add_term(PartitionTuple(pick), acc);
            return;
          }
          for (const auto& [la, pc] : slot_out[static_cast<size_t>(s)]) {
            pick[static_cast<size_t>(s)] = la;
            rec(s + 1, acc * pc);
          }
        };
        rec(0, base);
      });
    }
  }
  return out;
}

}  // namespace

LevelMOp LevelMOp::lambda_tilde(int i, int n, std::vector<RatFunc> params) {
  if (i < 1 || i > static_cast<int>(params.size()))
    throw IndexOutOfRange("slot index outside the tensor range");
  return {Tag::LambdaTilde, i, n, std::move(params)};
}

LevelMOp LevelMOp::x(int k, int n, std::vector<RatFunc> params) {
  if (k < 1) throw IndexOutOfRange("ladder order must be positive");
  return {Tag::X, k, n, std::move(params)};
}

LevelMOp LevelMOp::x_minus(int n, std::vector<RatFunc> params) {
  return {Tag::XMinus, 0, n, std::move(params)};
}

LevelMOp LevelMOp::psi_plus(int n, std::vector<RatFunc> params) {
  return {Tag::PsiPlus, 0, n, std::move(params)};
}

LevelMOp LevelMOp::psi_minus(int n, std::vector<RatFunc> params) {
  return {Tag::PsiMinus, 0, n, std::move(params)};
}

TensorFockVec levelm_mode_apply(const Ctx& ctx, const LevelMOp& op,
                                const TensorFockVec& v, int degree_cap) {
  check_params(op.params, v.params, "mode application");
  return apply_plans(ctx, op_plan(ctx, op), op.n, v, degree_cap);
}

TensorFockVec xk_apply_resolved(const Ctx& ctx, int k, int n,
                                const TensorFockVec& v, int degree_cap) {
  if (k < 1) throw IndexOutOfRange("ladder order must be positive");
  const int m = v.slots();
  std::vector<PlanTerm> plan;
  if (k <= m) {
    // strictly increasing subsets i_1 < ... < i_k, the r-th entry at p^{r-1} z
    std::vector<int> idx(static_cast<size_t>(k));
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos == k) {
        PlanTerm t{RatFunc(1),
                   std::vector<std::vector<SlotFactor>>(static_cast<size_t>(m))};
        for (int r = 1; r <= k; ++r) {
          int i = idx[static_cast<size_t>(r - 1)];
          t.scalar *= v.params[static_cast<size_t>(i - 1)];
          lambda_tilde_slots(i, 4 * (r - 1), t.slots);
        }
        plan.push_back(std::move(t));
        return;
      }
      for (int i = lo; i <= m; ++i) {
        idx[static_cast<size_t>(pos)] = i;
        rec(pos + 1, i + 1);
      }
    };
    rec(0, 1);
  }
  return apply_plans(ctx, plan, n, v, degree_cap);
}

RatFunc tensor_eps(const Ctx& ctx, const PartitionTuple& t,
                   const std::vector<RatFunc>& params) {
  if (t.slots() != static_cast<int>(params.size()))
    throw IndexOutOfRange("tuple does not match the slot count");
  RatFunc e(0);
  for (int k = 1; k <= t.slots(); ++k)
    e += params[static_cast<size_t>(k - 1)] * eps_eigen(ctx, t.slot(k));
  return e;
}

TriangularityReport x0_matrix(const Ctx& ctx, int n,
                              const std::vector<RatFunc>& params) {
  TriangularityReport rep;
  rep.weight = n;
  rep.basis = tuples_of(static_cast<int>(params.size()), n);
  const size_t nb = rep.basis.size();
  std::map<PartitionTuple, size_t> pos;
  for (size_t i = 0; i < nb; ++i) pos.emplace(rep.basis[i], i);

  rep.ket_triangular = rep.bra_triangular = rep.diagonal_ok = true;
  for (int pass = 0; pass < 2; ++pass) {
    const Side side = pass == 0 ? Side::Ket : Side::Bra;
    RMat& mat = pass == 0 ? rep.ket_mat : rep.bra_mat;
    const TupleOrder ord = pass == 0 ? TupleOrder::L : TupleOrder::R;
    bool& tri = pass == 0 ? rep.ket_triangular : rep.bra_triangular;
    mat.assign(nb, RVec(nb, RatFunc(0)));
    for (size_t a = 0; a < nb; ++a) {
      TensorFockVec va = tensor_m_vector(rep.basis[a], params, side);
      TensorFockVec wa =
          levelm_mode_apply(ctx, LevelMOp::x(1, 0, params), va, n);
      for (const auto& [tb, cb] : tensor_to_m_basis(wa)) {
        mat[a][pos.at(tb)] = cb;
        Cmp cmp = tuple_compare(ord, rep.basis[a], tb);
        if (cmp != Cmp::Greater && cmp != Cmp::Equal) {
          tri = false;
          rep.violations.push_back(
              std::string(pass == 0 ? "ket " : "bra ") +
              rep.basis[a].to_string() + " -> " + tb.to_string());
        }
      }
      if (mat[a][a] != tensor_eps(ctx, rep.basis[a], params)) {
        rep.diagonal_ok = false;
        rep.violations.push_back(
            std::string(pass == 0 ? "ket diag " : "bra diag ") +
            rep.basis[a].to_string());
      }
    }
  }
  rep.pass = rep.ket_triangular && rep.bra_triangular && rep.diagonal_ok;
  return rep;
}

EigData eig_P(const Ctx& ctx, const PartitionTuple& lam, Side side,
              const std::vector<RatFunc>& params) {
  if (lam.slots() != static_cast<int>(params.size()))
    throw IndexOutOfRange("tuple does not match the slot count");
  const int n = lam.weight();
  const TupleOrder ord = side == Side::Ket ? TupleOrder::L : TupleOrder::R;

  EigData out;
  out.lam = lam;
  out.side = side;
  out.eigen = tensor_eps(ctx, lam, params);

  std::vector<PartitionTuple> slice = tuples_of(lam.slots(), n);
  std::vector<PartitionTuple> down;
  for (const PartitionTuple& t : slice) {
    if (t == lam) continue;
    if (tensor_eps(ctx, t, params) == out.eigen)
      throw EigenvalueCollision("spectral values collide: " + lam.to_string() +
                                " vs " + t.to_string());
    if (tuple_compare(ord, lam, t) == Cmp::Greater) down.push_back(t);
  }

  // X_0 m_src over the monomial basis, for the seed and the down-set.
  auto x0_row = [&](const PartitionTuple& src) {
    return tensor_to_m_basis(levelm_mode_apply(
        ctx, LevelMOp::x(1, 0, params), tensor_m_vector(src, params, side), n));
  };
  const size_t s = down.size();
  std::map<PartitionTuple, size_t> dpos;
  for (size_t i = 0; i < s; ++i) dpos.emplace(down[i], i);

  RVec c(s, RatFunc(0));
  if (s > 0) {
    RMat M(s, RVec(s, RatFunc(0)));
    RVec rhs(s, RatFunc(0));
    for (const auto& [tb, cb] : x0_row(lam)) {
      auto it = dpos.find(tb);
      if (it != dpos.end()) rhs[it->second] = -cb;
    }
    for (size_t i = 0; i < s; ++i) {
      for (const auto& [tb, cb] : x0_row(down[i])) {
        auto it = dpos.find(tb);
        if (it != dpos.end()) M[it->second][i] = cb;
      }
      M[i][i] -= out.eigen;
    }
    LinSolve ls = solve_linear(M, rhs);
    if (!ls.consistent || !ls.kernel.empty())
      throw InconsistentSystem("eigenvector system degenerate at " +
                               lam.to_string());
    c = ls.particular;
  }

  out.vec = tensor_m_vector(lam, params, side);
  out.in_m.emplace(lam, RatFunc(1));
  for (size_t i = 0; i < s; ++i) {
    if (c[i].is_zero()) continue;
    TensorFockVec term = tensor_m_vector(down[i], params, side);
    term.scale(c[i]);
    out.vec += term;
    out.in_m.emplace(down[i], c[i]);
  }

  // Assumption-free check over the full weight slice.
  TensorFockVec lhs =
      levelm_mode_apply(ctx, LevelMOp::x(1, 0, params), out.vec, n);
  TensorFockVec rhsv = out.vec;
  rhsv.scale(out.eigen);
  if (lhs.coeffs != rhsv.coeffs)
    throw InconsistentSystem("eigenvector fails the full-slice check at " +
                             lam.to_string());
  return out;
}

TensorFockVec pbw_tensor_vector(const Ctx& ctx, const PartitionTuple& mu,
                                Side side, const std::vector<RatFunc>& params,
                                int degree_cap) {
  if (mu.slots() != static_cast<int>(params.size()))
    throw IndexOutOfRange("tuple does not match the slot count");
  const int m = mu.slots();
  TensorFockVec v = tensor_vacuum(params, side);
  long twist = 0;
  for (int k = m; k >= 1; --k) {
    const std::vector<int>& parts = mu.slot(k).parts();
    twist += static_cast<long>(k - 1) * mu.slot(k).weight();
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      const int mode = side == Side::Ket ? -*it : *it;
      v = levelm_mode_apply(ctx, LevelMOp::x(k, mode, params), v, degree_cap);
    }
  }
  if (side == Side::Bra) v.scale(ctx.p_quarter(4 * twist));
  return v;
}

KVecData k_vec(const Ctx& ctx, const PartitionTuple& lam, Side side,
               const std::vector<RatFunc>& params) {
  const int n = lam.weight();
  const int m = lam.slots();
  EigData eig = eig_P(ctx, lam, side, params);

  std::vector<PartitionTuple> slice = tuples_of(m, n);
  const size_t nt = slice.size();
  std::map<PartitionTuple, size_t> pos;
  for (size_t i = 0; i < nt; ++i) pos.emplace(slice[i], i);

  RMat A(nt, RVec(nt, RatFunc(0)));
  RVec b(nt, RatFunc(0));
  for (size_t cix = 0; cix < nt; ++cix) {
    TensorFockVec w = pbw_tensor_vector(ctx, slice[cix], side, params, n);
    for (const auto& [t, cf] : w.coeffs) A[pos.at(t)][cix] = cf;
  }
  for (const auto& [t, cf] : eig.vec.coeffs) b[pos.at(t)] = cf;

  LinSolve ls = solve_linear(A, b);
  if (ls.rank < static_cast<int>(nt))
    throw PBWRankDefect("ladder words dependent at weight " +
                        std::to_string(n));
  if (!ls.consistent)
    throw PBWRankDefect("eigenvector escapes the ladder-word span at weight " +
                        std::to_string(n));

  std::vector<Partition> norm_comp(static_cast<size_t>(m));
  norm_comp[0] = Partition(std::vector<int>(static_cast<size_t>(n), 1));
  PartitionTuple norm_label{std::move(norm_comp)};
  RatFunc lead = ls.particular[pos.at(norm_label)];
  if (lead.is_zero())
    throw InconsistentSystem("leading ladder coefficient vanishes at " +
                             lam.to_string());

  KVecData out;
  out.lam = lam;
  out.side = side;
  out.eigen = eig.eigen;
  out.vec = eig.vec;
  out.vec.scale(lead.inverse());
  for (size_t i = 0; i < nt; ++i) {
    RatFunc cf = ls.particular[i] / lead;
    if (!cf.is_zero()) out.in_pbw.emplace(slice[i], cf);
  }
  out.pbw_rank = ls.rank;
  out.slice_dim = static_cast<int>(nt);
  return out;
}

RatFunc conjectured_k_norm(const Ctx& ctx, const PartitionTuple& lam,
                           const std::vector<RatFunc>& u) {
  if (lam.slots() != static_cast<int>(u.size()))
    throw IndexOutOfRange("tuple does not match the slot count");
  const int m = lam.slots();
  const long n = lam.weight();
  RatFunc em = elementary_sym(u, m);
  RatFunc out = (static_cast<long>(m) * n % 2 ? RatFunc(-1) : RatFunc(1)) *
                ctx.tq_quarter(4 * (m - 1) * n) * em.pow(n);
  for (int k = 1; k <= m; ++k) {
    const Partition& la = lam.slot(k);
    out *= u[static_cast<size_t>(k - 1)].pow(-(m - 2) *
                                             static_cast<long>(la.weight()));
    out *= ctx.qpow(-(m - 2) * la.conjugate().nstat());
    out *= ctx.tpow((m - 2) * la.nstat());
  }
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      out *= nekrasov_factor(ctx, lam.slot(i), lam.slot(j),
                             ctx.q() * u[static_cast<size_t>(i - 1)] /
                                 (ctx.t() * u[static_cast<size_t>(j - 1)]));
  return out;
}

LevelMNormReport levelm_norm_check(const Ctx& ctx, const PartitionTuple& lam,
                                   const std::vector<RatFunc>& params) {
  LevelMNormReport rep;
  rep.lam = lam;
  KVecData kb = k_vec(ctx, lam, Side::Bra, params);
  KVecData kk = k_vec(ctx, lam, Side::Ket, params);
  rep.computed = tensor_pairing(ctx, kb.vec, kk.vec);
  rep.conjectured = conjectured_k_norm(ctx, lam, params);
  rep.pass = (rep.computed == rep.conjectured);
  return rep;
}

// ---------------------------------------------------------------------------
// Vertex operator between tensor modules, solved from its exchange
// relations.  Unknowns are the reduced matrix entries M(a, d) = <p_a|Phi|p_d>
// for tuples of degree at most deg on each side; each relation row at a
// fixed mode is homogeneous in the vertex variable, so the implied power
// w^{|a| - |d|} never enters the linear algebra.

namespace {

struct RelTerm {
  LevelMOp::Tag tag;
  int shift;  // uses mode n - shift
  RatFunc coef;
};

struct RelFamily {
  std::vector<RelTerm> lhs, rhs;
  int n_lo, n_hi;
};

}  // namespace

LevelMPhi phi_m_solve(const Ctx& ctx, const std::vector<RatFunc>& source_u,
                      const std::vector<RatFunc>& target_v, int deg) {
  const int m = static_cast<int>(source_u.size());
  if (m < 1 || target_v.size() != source_u.size())
    throw IndexOutOfRange("vertex solve needs matching nonempty slot lists");
  if (deg < 0) throw IndexOutOfRange("vertex solve needs a nonnegative window");

  LevelMPhi phi;
  phi.source_u = source_u;
  phi.target_v = target_v;
  phi.deg = deg;

  std::vector<PartitionTuple> tup;
  for (int d = 0; d <= deg; ++d)
    for (PartitionTuple& t : tuples_of(m, d)) tup.push_back(std::move(t));
  const int nt = static_cast<int>(tup.size());
  std::map<PartitionTuple, int> idx;
  for (int i = 0; i < nt; ++i) idx.emplace(tup[i], i);
  const int nunk = nt * nt;
  auto unk = [&](int bi, int ki) { return bi * nt + ki; };

  // Basis applications, cached per (side, tag, mode, tuple).
  const int cap = 2 * deg + 8;
  std::map<std::tuple<int, int, int, int>, std::map<PartitionTuple, RatFunc>>
      cache;
  auto apply_side = [&](Side side, LevelMOp::Tag tag, int n, int ti)
      -> const std::map<PartitionTuple, RatFunc>& {
    auto key = std::make_tuple(side == Side::Bra ? 1 : 0,
                               static_cast<int>(tag), n, ti);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const std::vector<RatFunc>& params =
        side == Side::Bra ? target_v : source_u;
    LevelMOp op{tag, tag == LevelMOp::Tag::X ? 1 : 0, n, params};
    TensorFockVec res = levelm_mode_apply(
        ctx, op, tensor_basis(tup[static_cast<size_t>(ti)], params, side), cap);
    return cache.emplace(key, std::move(res.coeffs)).first->second;
  };

  const RatFunc one(1);
  const RatFunc em_u = elementary_sym(source_u, m);
  const RatFunc em_v = elementary_sym(target_v, m);
  const RatFunc qt = ctx.t() / ctx.q();  // t q^{-1}
  const RatFunc g_half = ctx.tq_quarter(m);
  const RatFunc g_full = ctx.tq_quarter(2 * m);
  const RatFunc g_mhalf = ctx.tq_quarter(-m);
  const RatFunc g_3half = ctx.tq_quarter(3 * m);
  const RatFunc quad = g_full * qt * em_u * em_v;

  using Tg = LevelMOp::Tag;
  std::vector<RelFamily> fams;
  fams.push_back({{{Tg::X, 0, one}, {Tg::X, 1, -em_v}},
                  {{Tg::X, 0, one}, {Tg::X, 1, -(qt * em_v)}},
                  -deg - 1,
                  deg + 1});
  fams.push_back(
      {{{Tg::PsiPlus, 0, one},
        {Tg::PsiPlus, 1, -(g_mhalf * em_v + g_3half * qt * em_u)},
        {Tg::PsiPlus, 2, quad}},
       {{Tg::PsiPlus, 0, one},
        {Tg::PsiPlus, 1, -(g_mhalf * qt * em_v + g_3half * em_u)},
        {Tg::PsiPlus, 2, quad}},
       0,
       deg + 2});
  fams.push_back({{{Tg::PsiMinus, 0, one},
                   {Tg::PsiMinus, 1, -(g_half * (em_v + qt * em_u))},
                   {Tg::PsiMinus, 2, quad}},
                  {{Tg::PsiMinus, 0, one},
                   {Tg::PsiMinus, 1, -(g_half * (qt * em_v + em_u))},
                   {Tg::PsiMinus, 2, quad}},
                  -deg - 2,
                  2});

  RMat rows;
  auto assemble = [&](const RelFamily& fam, int n, int bi, int ki,
                      RVec* row_out) -> bool {
    RVec row(static_cast<size_t>(nunk), RatFunc(0));
    for (const RelTerm& tm : fam.lhs) {
      const auto& res = apply_side(Side::Bra, tm.tag, n - tm.shift, bi);
      for (const auto& [a, ca] : res) {
        if (a.weight() > deg) return false;
        row[static_cast<size_t>(unk(idx.at(a), ki))] += tm.coef * ca;
      }
    }
    for (const RelTerm& tm : fam.rhs) {
      const auto& res = apply_side(Side::Ket, tm.tag, n - tm.shift, ki);
      for (const auto& [d, cd] : res) {
        if (d.weight() > deg) return false;
        row[static_cast<size_t>(unk(bi, idx.at(d)))] -= tm.coef * cd;
      }
    }
    bool nonzero = false;
    for (const RatFunc& e : row)
      if (!e.is_zero()) {
        nonzero = true;
        break;
      }
    if (nonzero && row_out) *row_out = std::move(row);
    return nonzero;
  };

  for (const RelFamily& fam : fams)
    for (int n = fam.n_lo; n <= fam.n_hi; ++n)
      for (int bi = 0; bi < nt; ++bi)
        for (int ki = 0; ki < nt; ++ki) {
          RVec row;
          if (assemble(fam, n, bi, ki, &row)) rows.push_back(std::move(row));
        }

  std::vector<RVec> kernel;
  if (rows.empty()) {
    kernel.assign(static_cast<size_t>(nunk), RVec(static_cast<size_t>(nunk),
                                                  RatFunc(0)));
    for (int i = 0; i < nunk; ++i) kernel[static_cast<size_t>(i)]
        [static_cast<size_t>(i)] = RatFunc(1);
  } else {
    kernel = kernel_basis(rows);
  }
  phi.kernel_dim = static_cast<int>(kernel.size());
  if (kernel.empty())
    throw InconsistentSystem("exchange relations admit only the zero operator");

  const int vac = unk(idx.at(tup[0]), idx.at(tup[0]));
  const RVec* pick = nullptr;
  for (const RVec& kv : kernel)
    if (!kv[static_cast<size_t>(vac)].is_zero()) {
      pick = &kv;
      break;
    }
  if (!pick)
    throw InconsistentSystem("no solution with a nonzero vacuum component");
  RVec sol = *pick;
  RatFunc scale = sol[static_cast<size_t>(vac)].inverse();
  for (RatFunc& e : sol) e *= scale;

  for (int bi = 0; bi < nt; ++bi)
    for (int ki = 0; ki < nt; ++ki)
      phi.mat.emplace(std::make_pair(tup[static_cast<size_t>(bi)],
                                     tup[static_cast<size_t>(ki)]),
                      sol[static_cast<size_t>(unk(bi, ki))]);

  // Solution-space dimension per bidegree block of the kernel.
  std::map<std::pair<int, int>, std::vector<int>> blocks;
  for (int bi = 0; bi < nt; ++bi)
    for (int ki = 0; ki < nt; ++ki)
      blocks[{tup[static_cast<size_t>(bi)].weight(),
              tup[static_cast<size_t>(ki)].weight()}]
          .push_back(unk(bi, ki));
  for (const auto& [bd, cols] : blocks) {
    RMat proj;
    for (const RVec& kv : kernel) {
      RVec r;
      r.reserve(cols.size());
      for (int cix : cols) r.push_back(kv[static_cast<size_t>(cix)]);
      proj.push_back(std::move(r));
    }
    phi.bidegree_dim[bd] =
        static_cast<int>(cols.size() - kernel_basis(proj).size());
  }

  // The lowering-current exchange relations are not imposed above; validate
  // the solved matrix against them.
  phi.x_minus_ok = true;
  const RatFunc lm_l = g_full * qt * em_u;
  const RatFunc lm_r = g_full * em_u;
  for (int n = -deg - 1; n <= deg + 1 && phi.x_minus_ok; ++n)
    for (int bi = 0; bi < nt && phi.x_minus_ok; ++bi)
      for (int ki = 0; ki < nt && phi.x_minus_ok; ++ki) {
        RatFunc resid(0);
        bool admissible = true;
        for (int tmix = 0; tmix < 2 && admissible; ++tmix) {
          const auto& res =
              apply_side(Side::Bra, Tg::XMinus, n - tmix, bi);
          const RatFunc coef = tmix == 0 ? one : -lm_l;
          for (const auto& [a, ca] : res) {
            if (a.weight() > deg) {
              admissible = false;
              break;
            }
            resid += coef * ca *
                     phi.mat.at({a, tup[static_cast<size_t>(ki)]});
          }
        }
        for (int tmix = 0; tmix < 2 && admissible; ++tmix) {
          const auto& res =
              apply_side(Side::Ket, Tg::XMinus, n - tmix, ki);
          const RatFunc coef = tmix == 0 ? one : -lm_r;
          for (const auto& [d, cd] : res) {
            if (d.weight() > deg) {
              admissible = false;
              break;
            }
            resid -= coef * cd *
                     phi.mat.at({tup[static_cast<size_t>(bi)], d});
          }
        }
        if (admissible && !resid.is_zero()) phi.x_minus_ok = false;
      }

  return phi;
}

RatFunc levelm_phi_element(const Ctx& ctx, const LevelMPhi& phi,
                           const TensorFockVec& bra, const TensorFockVec& ket,
                           const RatFunc& arg) {
  (void)ctx;
  if (bra.side != Side::Bra || ket.side != Side::Ket)
    throw IndexOutOfRange("matrix element takes a bra and a ket");
  check_params(bra.params, phi.target_v, "matrix element bra");
  check_params(ket.params, phi.source_u, "matrix element ket");
  RatFunc out(0);
  for (const auto& [a, ca] : bra.coeffs) {
    if (a.weight() > phi.deg)
      throw DegreeCapExceeded("bra leaves the solved degree window");
    for (const auto& [d, cd] : ket.coeffs) {
      if (d.weight() > phi.deg)
        throw DegreeCapExceeded("ket leaves the solved degree window");
      const RatFunc& mv = phi.mat.at({a, d});
      if (mv.is_zero()) continue;
      out += ca * cd * mv * arg.pow(a.weight() - d.weight());
    }
  }
  return out;
}

RatFunc conjectured_phi_element(const Ctx& ctx, const PartitionTuple& lam,
                                const PartitionTuple& mu,
                                const std::vector<RatFunc>& u,
                                const std::vector<RatFunc>& v) {
  if (lam.slots() != static_cast<int>(v.size()) ||
      mu.slots() != static_cast<int>(u.size()) || u.size() != v.size())
    throw IndexOutOfRange("tuples do not match the slot counts");
  const int m = static_cast<int>(u.size());
  const long dl = lam.weight(), dm = mu.weight();
  const RatFunc w = ctx.value(VarRegistry::instance().w());
  const RatFunc em_u = elementary_sym(u, m);
  const RatFunc em_v = elementary_sym(v, m);

  RatFunc out = (static_cast<long>(m) * dl % 2 ? RatFunc(-1) : RatFunc(1));
  out *= (ctx.tq_quarter(4 * m) * em_u * em_v * w).pow(dl);
  out *= (ctx.tq_quarter(4) * em_v * w).pow(-dm);
  for (int k = 1; k <= m; ++k) {
    const Partition& la = lam.slot(k);
    const Partition& nu = mu.slot(k);
    out *= v[static_cast<size_t>(k - 1)].pow(-(m - 1) *
                                             static_cast<long>(la.weight()));
    out *= u[static_cast<size_t>(k - 1)].pow(nu.weight());
    out *= ctx.qpow(-(m - 1) * la.conjugate().nstat() + nu.conjugate().nstat());
    out *= ctx.tpow((m - 1) * la.nstat() - nu.nstat());
  }
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      out *= nekrasov_factor(ctx, lam.slot(i), mu.slot(j),
                             ctx.q() * v[static_cast<size_t>(i - 1)] /
                                 (ctx.t() * u[static_cast<size_t>(j - 1)]));
  return out;
}

LevelMMatrixReport levelm_matrix_check(const Ctx& ctx, const LevelMPhi& phi,
                                       const PartitionTuple& lam,
                                       const PartitionTuple& mu) {
  LevelMMatrixReport rep;
  rep.lam = lam;
  rep.mu = mu;
  KVecData kb = k_vec(ctx, lam, Side::Bra, phi.target_v);
  KVecData kk = k_vec(ctx, mu, Side::Ket, phi.source_u);
  const RatFunc w = ctx.value(VarRegistry::instance().w());
  rep.solved = levelm_phi_element(ctx, phi, kb.vec, kk.vec, w);
  rep.conjectured =
      conjectured_phi_element(ctx, lam, mu, phi.source_u, phi.target_v);
  rep.pass = (rep.solved == rep.conjectured);
  return rep;
}

FourPointReport four_point_check(const Ctx& ctx, int m, int order,
                                 const std::vector<RatFunc>& u,
                                 const std::vector<RatFunc>& v,
                                 const std::vector<RatFunc>& w) {
  if (m < 1 || static_cast<int>(u.size()) != m ||
      static_cast<int>(v.size()) != m || static_cast<int>(w.size()) != m)
    throw IndexOutOfRange("composition needs three matching slot lists");
  FourPointReport rep;
  rep.order = order;
  LevelMPhi phi1 = phi_m_solve(ctx, u, v, order);  // F_u -> F_v
  LevelMPhi phi2 = phi_m_solve(ctx, v, w, order);  // F_v -> F_w
  TensorFockVec vac_bra = tensor_vacuum(w, Side::Bra);
  TensorFockVec vac_ket = tensor_vacuum(u, Side::Ket);

  U5dSeries gauge = z_5d_um(ctx, m, order, u, v, w);
  rep.rhs = gauge.middle;
  rep.lhs.assign(static_cast<size_t>(order) + 1, RatFunc(0));
  const RatFunc one(1);
  for (int k = 0; k <= order; ++k) {
    RatFunc acc(0);
    for (const PartitionTuple& t : tuples_of(m, k)) {
      KVecData kvb = k_vec(ctx, t, Side::Bra, v);
      KVecData kvk = k_vec(ctx, t, Side::Ket, v);
      RatFunc e2 = levelm_phi_element(ctx, phi2, vac_bra, kvk.vec, one);
      RatFunc e1 = levelm_phi_element(ctx, phi1, kvb.vec, vac_ket, one);
      acc += e2 * e1 / conjectured_k_norm(ctx, t, v);
    }
    rep.lhs[static_cast<size_t>(k)] = acc;
  }
  rep.pass = true;
  for (int k = 0; k <= order; ++k)
    if (rep.lhs[static_cast<size_t>(k)] != rep.rhs[static_cast<size_t>(k)])
      rep.pass = false;
  return rep;
}

}  // namespace qtfock
