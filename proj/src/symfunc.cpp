#include "qtfock/symfunc.hpp"

#include <algorithm>
#include <mutex>

#include "qtfock/errors.hpp"

namespace qtfock {

// ---------------------------------------------------------------------------
// SymFunc basics
// ---------------------------------------------------------------------------

SymFunc SymFunc::p(const Partition& la) {
  SymFunc f;
  f.c_.emplace(la, RatFunc(1));
  return f;
}

RatFunc SymFunc::coeff(const Partition& la) const {
  auto it = c_.find(la);
  return it == c_.end() ? RatFunc() : it->second;
}

int SymFunc::max_degree() const {
  int d = -1;
  for (const auto& [la, f] : c_) d = std::max(d, la.weight());
  return d;
}

SymFunc SymFunc::slice(int d) const {
  SymFunc out;
  for (const auto& [la, f] : c_)
    if (la.weight() == d) out.c_.emplace(la, f);
  return out;
}

SymFunc SymFunc::operator-() const {
  SymFunc out = *this;
  for (auto& [la, f] : out.c_) f = -f;
  return out;
}

void SymFunc::add_term(const Partition& la, const RatFunc& f) {
  if (f.is_zero()) return;
  auto [it, fresh] = c_.emplace(la, f);
  if (!fresh) {
    it->second += f;
    if (it->second.is_zero()) c_.erase(it);
  }
}

SymFunc& SymFunc::operator+=(const SymFunc& o) {
  for (const auto& [la, f] : o.c_) add_term(la, f);
  return *this;
}

SymFunc& SymFunc::operator-=(const SymFunc& o) {
  for (const auto& [la, f] : o.c_) add_term(la, -f);
  return *this;
}

SymFunc& SymFunc::scale(const RatFunc& f) {
  if (f.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& [la, g] : c_) g *= f;
  return *this;
}

namespace {
Partition merge_parts(const Partition& a, const Partition& b) {
  std::vector<int> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  std::sort(parts.rbegin(), parts.rend());
  return Partition(std::move(parts));
}
}  // namespace

SymFunc operator*(const SymFunc& a, const SymFunc& b) {
  SymFunc out;
  for (const auto& [la, f] : a.coeffs())
    for (const auto& [mu, g] : b.coeffs())
      out.add_term(merge_parts(la, mu), f * g);
  return out;
}

SymFunc SymFunc::mul_p(int n) const {
  if (n < 1) throw Error("SymFunc::mul_p: n must be positive");
  SymFunc out;
  for (const auto& [la, f] : c_) out.add_term(merge_parts(la, Partition{n}), f);
  return out;
}

SymFunc SymFunc::diff_p(int n) const {
  if (n < 1) throw Error("SymFunc::diff_p: n must be positive");
  SymFunc out;
  for (const auto& [la, f] : c_) {
    int m = la.mult(n);
    if (m == 0) continue;
    std::vector<int> parts;
    bool removed = false;
    for (int p : la.parts()) {
      if (!removed && p == n) {
        removed = true;
        continue;
      }
      parts.push_back(p);
    }
    out.add_term(Partition(std::move(parts)), RatFunc(m) * f);
  }
  return out;
}

std::string SymFunc::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  // Highest weight first; within a weight, reverse lexicographic.
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += "(" + it->second.to_string() + ")*p" + it->first.to_string();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Pairing and Heisenberg action
// ---------------------------------------------------------------------------

RatFunc p_inner_norm(const Ctx& ctx, const Partition& la) {
  RatFunc r(Rat(la.zfactor()));
  RatFunc one(1);
  for (int p : la.parts())
    r *= (one - ctx.qpow(p)) / (one - ctx.tpow(p));
  return r;
}

RatFunc inner(const Ctx& ctx, const SymFunc& a, const SymFunc& b) {
  RatFunc s;
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  for (const auto& [la, f] : ca) {
    auto it = cb.find(la);
    if (it == cb.end()) continue;
    s += f * it->second * p_inner_norm(ctx, la);
  }
  return s;
}

SymFunc heis_neg(int n, const SymFunc& f) { return f.mul_p(n); }

SymFunc heis_pos(const Ctx& ctx, int n, const SymFunc& f) {
  RatFunc factor = RatFunc(n) * (RatFunc(1) - ctx.qpow(n)) /
                   (RatFunc(1) - ctx.tpow(n));
  SymFunc out = f.diff_p(n);
  return out.scale(factor);
}

// ---------------------------------------------------------------------------
// Monomial basis tables
// ---------------------------------------------------------------------------

namespace {

struct MTables {
  std::vector<Partition> order;                    // descending lexicographic
  std::map<Partition, std::map<Partition, Rat>> p_to_m;  // p_la = sum R m_mu
  std::map<Partition, std::map<Partition, Rat>> m_to_p;  // m_la = sum Rinv p_mu
};

// Expand p_la in d concrete variables and group monomials by sorted
// exponent signature; the coefficient of m_mu is the coefficient of the
// dominant representative (mu_1, ..., mu_l, 0, ...).
std::map<Partition, Rat> expand_p_in_m(const Partition& la, int d) {
  std::map<std::vector<int>, Rat> mono{{std::vector<int>(static_cast<size_t>(d), 0), Rat(1)}};
  for (int part : la.parts()) {
    std::map<std::vector<int>, Rat> next;
    for (const auto& [e, c] : mono)
      for (int i = 0; i < d; ++i) {
        std::vector<int> e2 = e;
        e2[static_cast<size_t>(i)] += part;
        next[e2] += c;
      }
    mono = std::move(next);
  }
  std::map<Partition, Rat> out;
  for (const auto& [e, c] : mono) {
    std::vector<int> sig = e;
    std::sort(sig.rbegin(), sig.rend());
    if (sig != e) continue;  // keep only the dominant representative
    while (!sig.empty() && sig.back() == 0) sig.pop_back();
    out[Partition(std::move(sig))] = c;
  }
  return out;
}

const MTables& m_tables(int d) {
  static std::mutex mu;
  static std::map<int, MTables> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  if (d > VarRegistry::kMaxIndexed)
    throw DegreeCapExceeded("monomial tables capped at degree " +
                            std::to_string(VarRegistry::kMaxIndexed));
  MTables tab;
  tab.order = partitions_of(d);
  for (const auto& la : tab.order) tab.p_to_m[la] = expand_p_in_m(la, std::max(d, 1));
  // Invert the triangular change of basis by Gaussian elimination over Q.
  size_t n = tab.order.size();
  std::vector<std::vector<Rat>> M(n, std::vector<Rat>(2 * n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      auto& row = tab.p_to_m[tab.order[i]];
      auto f = row.find(tab.order[j]);
      M[i][j] = f == row.end() ? Rat(0) : f->second;
    }
    M[i][n + i] = 1;
  }
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && M[piv][c] == 0) ++piv;
    if (piv == n) throw Error("m_tables: singular change of basis");
    std::swap(M[piv], M[c]);
    Rat inv = 1 / M[c][c];
    for (size_t k = 0; k < 2 * n; ++k) M[c][k] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || M[r][c] == 0) continue;
      Rat f = M[r][c];
      for (size_t k = 0; k < 2 * n; ++k) M[r][k] -= f * M[c][k];
    }
  }
  // Rows of the inverse give m in terms of p: m_vec = R^{-1} p_vec.
  for (size_t i = 0; i < n; ++i) {
    std::map<Partition, Rat> row;
    for (size_t j = 0; j < n; ++j)
      if (M[i][n + j] != 0) row[tab.order[j]] = M[i][n + j];
    tab.m_to_p[tab.order[i]] = std::move(row);
  }
  return cache.emplace(d, std::move(tab)).first->second;
}

}  // namespace

SymFunc m_in_p(const Partition& la) {
  const MTables& tab = m_tables(la.weight());
  SymFunc f;
  for (const auto& [mu, c] : tab.m_to_p.at(la)) f.add_term(mu, RatFunc(c));
  return f;
}

std::map<Partition, RatFunc> to_m_basis(const SymFunc& f) {
  std::map<Partition, RatFunc> out;
  for (const auto& [la, coef] : f.coeffs()) {
    const MTables& tab = m_tables(la.weight());
    for (const auto& [mu, r] : tab.p_to_m.at(la)) {
      RatFunc add = RatFunc(r) * coef;
      auto [it, fresh] = out.emplace(mu, add);
      if (!fresh) {
        it->second += add;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Macdonald basis
// ---------------------------------------------------------------------------

RatFunc hook_c(const Ctx& ctx, const Partition& la) {
  RatFunc r(1), one(1);
  for (int i = 1; i <= la.length(); ++i)
    for (int j = 1; j <= la.row(i); ++j)
      r *= one - ctx.qpow(la.arm(i, j)) * ctx.tpow(la.leg(i, j) + 1);
  return r;
}

RatFunc hook_cprime(const Ctx& ctx, const Partition& la) {
  RatFunc r(1), one(1);
  for (int i = 1; i <= la.length(); ++i)
    for (int j = 1; j <= la.row(i); ++j)
      r *= one - ctx.qpow(la.arm(i, j) + 1) * ctx.tpow(la.leg(i, j));
  return r;
}

namespace {

std::string mode_cache_key(const Ctx& ctx) {
  return ctx.q4().to_string() + "|" + ctx.t4().to_string();
}

struct MacCache {
  std::mutex mu;
  // mode key -> weight -> (partition -> data)
  std::map<std::string, std::map<int, std::map<Partition, MacdonaldData>>> store;
};

MacCache& mac_cache() {
  static MacCache c;
  return c;
}

// Gram-Schmidt over a dominance-compatible total order (ascending reverse
// lexicographic) orthogonalizes the monomial basis into the Macdonald one.
std::map<Partition, MacdonaldData> build_weight(const Ctx& ctx, int d) {
  std::map<Partition, MacdonaldData> out;
  std::vector<Partition> asc = partitions_of(d);
  std::reverse(asc.begin(), asc.end());
  std::vector<Partition> done;
  for (const auto& la : asc) {
    SymFunc P = m_in_p(la);
    for (const auto& mu : done) {
      const MacdonaldData& prev = out.at(mu);
      RatFunc proj = inner(ctx, P, prev.P) / prev.norm;
      if (!proj.is_zero()) P -= proj * prev.P;
    }
    MacdonaldData data;
    data.norm = inner(ctx, P, P);
    if (data.norm.is_zero())
      throw EigenvalueCollision(
          "macdonald: degenerate pairing at this specialization");
    data.P = std::move(P);
    data.c = hook_c(ctx, la);
    data.cprime = hook_cprime(ctx, la);
    out.emplace(la, std::move(data));
    done.push_back(la);
  }
  return out;
}

}  // namespace

const MacdonaldData& macdonald(const Ctx& ctx, const Partition& la) {
  MacCache& cache = mac_cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  auto& per_mode = cache.store[mode_cache_key(ctx)];
  auto it = per_mode.find(la.weight());
  if (it == per_mode.end())
    it = per_mode.emplace(la.weight(), build_weight(ctx, la.weight())).first;
  return it->second.at(la);
}

SymFunc macdonald_P(const Ctx& ctx, const Partition& la) {
  return macdonald(ctx, la).P;
}

SymFunc macdonald_Q(const Ctx& ctx, const Partition& la) {
  const MacdonaldData& d = macdonald(ctx, la);
  SymFunc Q = d.P;
  return Q.scale(d.c / d.cprime);
}

SymFunc macdonald_J(const Ctx& ctx, const Partition& la) {
  const MacdonaldData& d = macdonald(ctx, la);
  SymFunc J = d.P;
  return J.scale(d.c);
}

// ---------------------------------------------------------------------------
// Evaluations
// ---------------------------------------------------------------------------

RatFunc eval_eps_u(const Ctx& ctx, const SymFunc& f, const RatFunc& u) {
  RatFunc s, one(1);
  for (const auto& [la, coef] : f.coeffs()) {
    RatFunc term = coef;
    for (int p : la.parts())
      term *= (one - u.pow(p)) / (one - ctx.tpow(p));
    s += term;
  }
  return s;
}

RatFunc eval_eps_ab(const Ctx& ctx, const SymFunc& f, const RatFunc& alpha,
                    const RatFunc& beta) {
  RatFunc s, one(1);
  for (const auto& [la, coef] : f.coeffs()) {
    RatFunc term = coef;
    for (int p : la.parts())
      term *= (beta.pow(p) - alpha.pow(p)) / (one - ctx.tpow(p));
    s += term;
  }
  return s;
}

RatFunc elementary_sym(const std::vector<RatFunc>& xs, int k) {
  if (k < 0 || k > static_cast<int>(xs.size())) return RatFunc();
  // Row of the elementary-symmetric DP: e[j] after absorbing each x.
  std::vector<RatFunc> e(static_cast<size_t>(k) + 1, RatFunc());
  e[0] = RatFunc(1);
  for (size_t i = 0; i < xs.size(); ++i)
    for (int j = std::min(k, static_cast<int>(i) + 1); j >= 1; --j)
      e[static_cast<size_t>(j)] += xs[i] * e[static_cast<size_t>(j - 1)];
  return e[static_cast<size_t>(k)];
}

}  // namespace qtfock
