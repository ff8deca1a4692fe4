#include "qtfock/mpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>

#include "qtfock/errors.hpp"

namespace qtfock {

// ---------------------------------------------------------------------------
// Mono
// ---------------------------------------------------------------------------

Mono Mono::var(VarId v, int exp) {
  Mono m;
  if (exp < 0) throw Error("Mono::var: negative exponent");
  if (exp > 0) m.e.emplace_back(v, exp);
  return m;
}

int Mono::total_degree() const {
  int d = 0;
  for (const auto& [v, k] : e) d += k;
  return d;
}

int Mono::deg(VarId v) const {
  for (const auto& [w, k] : e)
    if (w == v) return k;
  return 0;
}

Mono operator*(const Mono& a, const Mono& b) {
  Mono r;
  r.e.reserve(a.e.size() + b.e.size());
  size_t i = 0, j = 0;
  while (i < a.e.size() && j < b.e.size()) {
    if (a.e[i].first < b.e[j].first) {
      r.e.push_back(a.e[i++]);
    } else if (a.e[i].first > b.e[j].first) {
      r.e.push_back(b.e[j++]);
    } else {
      r.e.emplace_back(a.e[i].first, a.e[i].second + b.e[j].second);
      ++i, ++j;
    }
  }
  for (; i < a.e.size(); ++i) r.e.push_back(a.e[i]);
  for (; j < b.e.size(); ++j) r.e.push_back(b.e[j]);
  return r;
}

bool Mono::divides(const Mono& d) const {
  size_t j = 0;
  for (const auto& [v, k] : e) {
    while (j < d.e.size() && d.e[j].first < v) ++j;
    if (j == d.e.size() || d.e[j].first != v || d.e[j].second < k) return false;
  }
  return true;
}

Mono Mono::divide_by(const Mono& d) const {
  Mono r;
  size_t j = 0;
  for (const auto& [v, k] : e) {
    int sub = 0;
    while (j < d.e.size() && d.e[j].first < v)
      throw Error("Mono::divide_by: non-exact monomial division");
    if (j < d.e.size() && d.e[j].first == v) sub = d.e[j++].second;
    if (k < sub) throw Error("Mono::divide_by: non-exact monomial division");
    if (k > sub) r.e.emplace_back(v, k - sub);
  }
  if (j != d.e.size()) throw Error("Mono::divide_by: non-exact monomial division");
  return r;
}

Mono Mono::gcd(const Mono& a, const Mono& b) {
  Mono r;
  size_t i = 0, j = 0;
  while (i < a.e.size() && j < b.e.size()) {
    if (a.e[i].first < b.e[j].first) {
      ++i;
    } else if (a.e[i].first > b.e[j].first) {
      ++j;
    } else {
      r.e.emplace_back(a.e[i].first, std::min(a.e[i].second, b.e[j].second));
      ++i, ++j;
    }
  }
  return r;
}

bool mono_less(const Mono& a, const Mono& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  // Same degree: lexicographic with earlier variables weighing more.  Walk
  // both exponent lists in parallel; the first position where exponents on
  // the earliest variable differ decides.
  size_t i = 0, j = 0;
  while (i < a.e.size() && j < b.e.size()) {
    if (a.e[i].first < b.e[j].first) return false;  // a has the earlier var
    if (a.e[i].first > b.e[j].first) return true;
    if (a.e[i].second != b.e[j].second) return a.e[i].second < b.e[j].second;
    ++i, ++j;
  }
  if (i < a.e.size()) return false;
  if (j < b.e.size()) return true;
  return false;
}

// ---------------------------------------------------------------------------
// MPoly basics
// ---------------------------------------------------------------------------

MPoly MPoly::constant(const Rat& c) {
  MPoly p;
  if (c != 0) p.terms_.push_back({Mono::one(), c});
  return p;
}

MPoly MPoly::variable(VarId v, int exp) {
  MPoly p;
  if (exp == 0) return constant(1);
  p.terms_.push_back({Mono::var(v, exp), Rat(1)});
  return p;
}

MPoly MPoly::from_map(std::map<Mono, Rat, MonoLess>&& acc) {
  MPoly p;
  p.terms_.reserve(acc.size());
  for (auto it = acc.rbegin(); it != acc.rend(); ++it)
    if (it->second != 0) p.terms_.push_back({it->first, it->second});
  return p;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
}

Rat MPoly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) throw Error("MPoly::constant_value: not constant");
  return terms_[0].c;
}

int MPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return terms_[0].m.total_degree();
}

int MPoly::deg(VarId v) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.deg(v));
  return d;
}

std::vector<VarId> MPoly::variables() const {
  std::vector<VarId> vs;
  for (const auto& t : terms_)
    for (const auto& [v, k] : t.m.e) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

const MPoly::Term& MPoly::leading() const {
  if (terms_.empty()) throw Error("MPoly::leading: zero polynomial");
  return terms_[0];
}

MPoly MPoly::coeff_of(VarId v, int k) const {
  std::map<Mono, Rat, MonoLess> acc;
  Mono vk = Mono::var(v, k);
  for (const auto& t : terms_) {
    if (t.m.deg(v) != k) continue;
    acc[k == 0 ? t.m : t.m.divide_by(vk)] += t.c;
  }
  return from_map(std::move(acc));
}

MPoly MPoly::operator-() const {
  MPoly p = *this;
  for (auto& t : p.terms_) t.c = -t.c;
  return p;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i].m == o.terms_[j].m) {
      Rat c = terms_[i].c + o.terms_[j].c;
      if (c != 0) out.push_back({terms_[i].m, std::move(c)});
      ++i, ++j;
    } else if (mono_less(o.terms_[j].m, terms_[i].m)) {
      out.push_back(terms_[i++]);
    } else {
      out.push_back(o.terms_[j++]);
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
  terms_ = std::move(out);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.terms_.empty() || b.terms_.empty()) return MPoly();
  std::map<Mono, Rat, MonoLess> acc;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) acc[ta.m * tb.m] += ta.c * tb.c;
  return MPoly::from_map(std::move(acc));
}

MPoly& MPoly::scale(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.c *= c;
  return *this;
}

MPoly MPoly::mul_mono(const Mono& m) const {
  // Multiplying every term by the same monomial preserves graded-lex order.
  MPoly p = *this;
  for (auto& t : p.terms_) t.m = t.m * m;
  return p;
}

MPoly MPoly::pow(int e) const {
  if (e < 0) throw Error("MPoly::pow: negative exponent");
  MPoly r = constant(1);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = (e >>= 1) > 0 ? base * base : base;
  }
  return r;
}

bool MPoly::operator==(const MPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c)
      return false;
  return true;
}

MPoly MPoly::substitute(const std::map<VarId, Rat>& assignment) const {
  std::map<Mono, Rat, MonoLess> acc;
  for (const auto& t : terms_) {
    Rat c = t.c;
    Mono rest;
    for (const auto& [v, k] : t.m.e) {
      auto it = assignment.find(v);
      if (it == assignment.end()) {
        rest.e.emplace_back(v, k);
      } else {
        Rat pw(1);
        for (int r = 0; r < k; ++r) pw *= it->second;
        c *= pw;
      }
    }
    if (c != 0) acc[rest] += c;
  }
  return from_map(std::move(acc));
}

Rat MPoly::evaluate(const std::map<VarId, Rat>& assignment) const {
  MPoly r = substitute(assignment);
  if (!r.is_constant()) throw Error("MPoly::evaluate: unassigned variables remain");
  return r.constant_value();
}

Rat MPoly::rational_content() const {
  if (terms_.empty()) return Rat(1);
  Int num_gcd(0), den_lcm(1);
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            t.c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            t.c.get_den().get_mpz_t());
  }
  Rat c(num_gcd, den_lcm);
  c.canonicalize();
  if (terms_[0].c < 0) c = -c;
  return c;
}

MPoly MPoly::primitive_part(Rat* content_out) const {
  Rat c = rational_content();
  if (content_out) *content_out = c;
  if (terms_.empty()) return *this;
  MPoly p = *this;
  Rat inv = 1 / c;
  for (auto& t : p.terms_) t.c *= inv;
  return p;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

std::string rat_to_string(const Rat& r) { return r.get_str(); }

std::string mono_to_string(const Mono& m) {
  if (m.is_one()) return "1";
  const VarRegistry& reg = VarRegistry::instance();
  std::string s;
  for (const auto& [v, k] : m.e) {
    if (!s.empty()) s += "*";
    s += reg.name(v);
    if (k != 1) s += "^" + std::to_string(k);
  }
  return s;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    Rat c = t.c;
    if (first) {
      if (c < 0) {
        s += "-";
        c = -c;
      }
    } else {
      s += (c < 0) ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    if (t.m.is_one()) {
      s += rat_to_string(c);
    } else if (c == 1) {
      s += mono_to_string(t.m);
    } else {
      s += rat_to_string(c) + "*" + mono_to_string(t.m);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Exact division
// ---------------------------------------------------------------------------

MPoly exact_div(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw Error("exact_div: division by zero polynomial");
  if (a.is_zero()) return MPoly();
  if (b.is_constant()) {
    MPoly r = a;
    return r.scale(1 / b.constant_value());
  }
  if (b.num_terms() == 1) {
    const auto& lt = b.leading();
    std::map<Mono, Rat, MonoLess> acc;
    for (const auto& t : a.terms()) {
      if (!lt.m.divides(t.m)) throw Error("exact_div: not divisible");
      acc[t.m.divide_by(lt.m)] += t.c / lt.c;
    }
    return MPoly::from_map(std::move(acc));
  }
  MPoly r = a, q;
  const auto& ltb = b.leading();
  while (!r.is_zero()) {
    const auto& ltr = r.leading();
    if (!ltb.m.divides(ltr.m)) throw Error("exact_div: not divisible");
    MPoly qt = MPoly::constant(ltr.c / ltb.c).mul_mono(ltr.m.divide_by(ltb.m));
    q += qt;
    r -= qt * b;
  }
  return q;
}

// ---------------------------------------------------------------------------
// GCD machinery
// ---------------------------------------------------------------------------

namespace {

// --- univariate view: p as a coefficient vector in the variable x ----------

std::vector<MPoly> to_uni(const MPoly& p, VarId x) {
  std::vector<MPoly> c(static_cast<size_t>(std::max(p.deg(x), 0)) + 1);
  for (int k = 0; k <= p.deg(x); ++k) c[static_cast<size_t>(k)] = p.coeff_of(x, k);
  return c;
}

MPoly from_uni(const std::vector<MPoly>& c, VarId x) {
  MPoly p;
  for (size_t k = 0; k < c.size(); ++k)
    p += c[k] * MPoly::variable(x, static_cast<int>(k));
  return p;
}

int uni_deg(const std::vector<MPoly>& c) {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    if (!c[static_cast<size_t>(k)].is_zero()) return k;
  return -1;
}

MPoly poly_gcd_z(const MPoly& a, const MPoly& b);

MPoly vec_content(const std::vector<MPoly>& c) {
  MPoly g;
  for (const auto& p : c) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? p : poly_gcd_z(g, p);
    if (g.is_constant()) break;
  }
  return g;
}

void vec_divide(std::vector<MPoly>& c, const MPoly& d) {
  for (auto& p : c)
    if (!p.is_zero()) p = exact_div(p, d);
}

// Divides out the full content of a coefficient vector: the polynomial
// content (gcd of the coefficients) and the residual integer content.
// Keeping remainders fully primitive is what tames coefficient growth in
// the polynomial remainder sequence.
void vec_strip_content(std::vector<MPoly>& c) {
  MPoly g = vec_content(c);
  if (!g.is_constant()) vec_divide(c, g);
  Int ig(0);
  for (const auto& p : c)
    for (const auto& t : p.terms())
      mpz_gcd(ig.get_mpz_t(), ig.get_mpz_t(), t.c.get_num().get_mpz_t());
  if (ig > 1) {
    Rat inv = Rat(1) / Rat(ig);
    for (auto& p : c) p.scale(inv);
  }
}

// Pseudo-remainder of A by B in the main variable (both as coefficient
// vectors, deg A >= deg B >= 1): returns lc(B)^(degA-degB+1) * A mod B.
std::vector<MPoly> uni_prem(std::vector<MPoly> A, const std::vector<MPoly>& B) {
  int dB = uni_deg(B);
  const MPoly& lcB = B[static_cast<size_t>(dB)];
  int e = uni_deg(A) - dB + 1;
  while (true) {
    int dA = uni_deg(A);
    if (dA < dB) break;
    MPoly s = A[static_cast<size_t>(dA)];
    std::vector<MPoly> next(static_cast<size_t>(dA), MPoly());
    for (int k = 0; k < dA; ++k) {
      MPoly term = lcB * A[static_cast<size_t>(k)];
      int shift = k - (dA - dB);
      if (shift >= 0 && shift <= dB) term -= s * B[static_cast<size_t>(shift)];
      next[static_cast<size_t>(k)] = std::move(term);
    }
    A = std::move(next);
    --e;
  }
  if (e > 0) {
    MPoly f = lcB.pow(e);
    for (auto& p : A) p = p * f;
  }
  return A;
}

// --- fast path: both inputs univariate with integer coefficients -----------

Int int_content_vec(const std::vector<Int>& v) {
  Int g(0);
  for (const auto& z : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
  return g;
}

int zdeg(const std::vector<Int>& v) {
  for (int k = static_cast<int>(v.size()) - 1; k >= 0; --k)
    if (v[static_cast<size_t>(k)] != 0) return k;
  return -1;
}

std::vector<Int> z_prem(std::vector<Int> A, const std::vector<Int>& B) {
  int dB = zdeg(B);
  const Int& lcB = B[static_cast<size_t>(dB)];
  int e = zdeg(A) - dB + 1;
  while (true) {
    int dA = zdeg(A);
    if (dA < dB) break;
    Int s = A[static_cast<size_t>(dA)];
    std::vector<Int> next(static_cast<size_t>(dA), Int(0));
    for (int k = 0; k < dA; ++k) {
      Int term = lcB * A[static_cast<size_t>(k)];
      int shift = k - (dA - dB);
      if (shift >= 0 && shift <= dB) term -= s * B[static_cast<size_t>(shift)];
      next[static_cast<size_t>(k)] = std::move(term);
    }
    A = std::move(next);
    --e;
  }
  if (e > 0) {
    Int f;
    mpz_pow_ui(f.get_mpz_t(), lcB.get_mpz_t(), static_cast<unsigned long>(e));
    for (auto& z : A) z *= f;
  }
  return A;
}

std::vector<Int> z_primitive(std::vector<Int> v) {
  Int c = int_content_vec(v);
  if (c != 0 && c != 1)
    for (auto& z : v) z /= c;
  int d = zdeg(v);
  if (d >= 0 && v[static_cast<size_t>(d)] < 0)
    for (auto& z : v) z = -z;
  return v;
}

// Primitive PRS for integer univariate polynomials; inputs non-zero.
std::vector<Int> z_gcd_uni(std::vector<Int> A, std::vector<Int> B) {
  A = z_primitive(std::move(A));
  B = z_primitive(std::move(B));
  if (zdeg(A) < zdeg(B)) std::swap(A, B);
  while (true) {
    if (zdeg(B) == 0) return {Int(1)};
    std::vector<Int> R = z_prem(A, B);
    if (zdeg(R) < 0) return B;
    A = std::move(B);
    B = z_primitive(std::move(R));
  }
}

std::vector<Int> to_zuni(const MPoly& p, VarId x) {
  std::vector<Int> c(static_cast<size_t>(p.deg(x)) + 1, Int(0));
  for (const auto& t : p.terms()) {
    if (t.c.get_den() != 1) throw Error("poly_gcd: non-integer coefficient");
    c[static_cast<size_t>(t.m.deg(x))] += t.c.get_num();
  }
  return c;
}

// Content of p over ZZ[x]: the univariate gcd of the coefficients of p
// viewed in ZZ[x][all other variables].  Requires integer coefficients
// (p primitive).  Returns a primitive vector; degree 0 means trivial.
std::vector<Int> univariate_content(const MPoly& p, VarId x) {
  std::map<Mono, std::vector<Int>, MonoLess> groups;
  for (const auto& t : p.terms()) {
    if (t.c.get_den() != 1) throw Error("poly_gcd: non-integer coefficient");
    Mono key;
    int dx = 0;
    for (const auto& [v, k] : t.m.e) {
      if (v == x)
        dx = k;
      else
        key.e.emplace_back(v, k);
    }
    auto& vec = groups[key];
    if (static_cast<int>(vec.size()) <= dx) vec.resize(static_cast<size_t>(dx) + 1, Int(0));
    vec[static_cast<size_t>(dx)] += t.c.get_num();
  }
  std::vector<Int> g;
  for (auto& [key, vec] : groups) {
    if (zdeg(vec) < 0) continue;
    g = g.empty() ? z_primitive(std::move(vec))
                  : z_gcd_uni(std::move(g), std::move(vec));
    if (zdeg(g) == 0) break;
  }
  return g;
}

// --- modular degree probe ---------------------------------------------------

constexpr uint64_t kProbePrime = 2147483629ULL;  // < 2^31

uint64_t mulmod(uint64_t a, uint64_t b) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % kProbePrime);
}

uint64_t powmod(uint64_t a, int e) {
  uint64_t r = 1;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

// p reduced mod kProbePrime at `assign` for all variables except x, as a
// univariate coefficient array in x.
std::vector<uint64_t> eval_mod(const MPoly& p, VarId x,
                               const std::map<VarId, uint64_t>& assign) {
  std::vector<uint64_t> c(static_cast<size_t>(p.deg(x)) + 1, 0);
  for (const auto& t : p.terms()) {
    uint64_t v = mpz_fdiv_ui(t.c.get_num().get_mpz_t(), kProbePrime);
    for (const auto& [var, k] : t.m.e) {
      if (var == x) continue;
      v = mulmod(v, powmod(assign.at(var), k));
    }
    size_t slot = static_cast<size_t>(t.m.deg(x));
    c[slot] = (c[slot] + v) % kProbePrime;
  }
  return c;
}

int mod_deg(const std::vector<uint64_t>& v) {
  for (int k = static_cast<int>(v.size()) - 1; k >= 0; --k)
    if (v[static_cast<size_t>(k)] != 0) return k;
  return -1;
}

int mod_gcd_degree(std::vector<uint64_t> A, std::vector<uint64_t> B) {
  while (true) {
    int dB = mod_deg(B);
    if (dB < 0) return mod_deg(A);
    // A mod B over the prime field.
    int dA = mod_deg(A);
    uint64_t inv = powmod(B[static_cast<size_t>(dB)],
                          static_cast<int>(kProbePrime) - 2);
    while (dA >= dB) {
      uint64_t f = mulmod(A[static_cast<size_t>(dA)], inv);
      for (int k = 0; k <= dB; ++k) {
        size_t slot = static_cast<size_t>(dA - dB + k);
        uint64_t sub = mulmod(f, B[static_cast<size_t>(k)]);
        A[slot] = (A[slot] + kProbePrime - sub) % kProbePrime;
      }
      dA = mod_deg(A);
    }
    std::swap(A, B);
  }
}

// Degree in x of gcd(a, b), proven exact when the evaluation preserves the
// x-degrees of both inputs (returns -1 when no valid evaluation was found).
// If a = g*a' then lc_x(a) = lc_x(g)*lc_x(a'); an evaluation that keeps
// lc_x(a) and lc_x(b) non-zero mod p keeps the x-degree of g intact, and
// deg(g mod p at point) <= deg gcd(a mod p, b mod p), so a probe answer of
// zero certifies that x does not occur in the gcd.
int probe_gcd_degree(const MPoly& a, const MPoly& b, VarId x,
                     const std::vector<VarId>& other_vars) {
  std::mt19937_64 rng(0x9E3779B97F4A7C15ULL ^ static_cast<uint64_t>(x));
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::map<VarId, uint64_t> assign;
    for (VarId v : other_vars)
      assign[v] = 1 + rng() % (kProbePrime - 1);
    std::vector<uint64_t> ea = eval_mod(a, x, assign);
    std::vector<uint64_t> eb = eval_mod(b, x, assign);
    if (mod_deg(ea) != a.deg(x) || mod_deg(eb) != b.deg(x)) continue;
    return mod_gcd_degree(std::move(ea), std::move(eb));
  }
  return -1;
}

// --- main gcd over the integers --------------------------------------------

MPoly normalize_primitive(const MPoly& p) { return p.primitive_part(); }

MPoly poly_gcd_z(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return normalize_primitive(b);
  if (b.is_zero()) return normalize_primitive(a);

  // Strip monomial content first; the common part re-enters at the end.
  auto mono_content = [](const MPoly& p) {
    Mono m = p.terms()[0].m;
    for (const auto& t : p.terms()) {
      m = Mono::gcd(m, t.m);
      if (m.is_one()) break;
    }
    return m;
  };
  Mono ma = mono_content(a), mb = mono_content(b);
  Mono mg = Mono::gcd(ma, mb);
  MPoly pa = normalize_primitive(ma.is_one() ? a : exact_div(a, MPoly::constant(1).mul_mono(ma)));
  MPoly pb = normalize_primitive(mb.is_one() ? b : exact_div(b, MPoly::constant(1).mul_mono(mb)));

  MPoly g_mono = MPoly::constant(1).mul_mono(mg);
  if (pa.is_constant() || pb.is_constant()) return g_mono;

  std::vector<VarId> va = pa.variables(), vb = pb.variables();
  std::vector<VarId> common;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                        std::back_inserter(common));
  if (common.empty()) return g_mono;

  if (va.size() == 1 && vb.size() == 1 && va[0] == vb[0]) {
    std::vector<Int> g = z_gcd_uni(to_zuni(pa, va[0]), to_zuni(pb, va[0]));
    MPoly gp;
    for (size_t k = 0; k < g.size(); ++k)
      gp += MPoly::constant(Rat(g[k])) * MPoly::variable(va[0], static_cast<int>(k));
    return gp.mul_mono(mg);
  }

  // Modular probe: certify variables absent from the gcd, and use the probe
  // degrees to pick a cheap main variable for the PRS.
  VarId main = -1;
  int best_cost = 0;
  int undecided = 0;
  for (VarId x : common) {
    std::vector<VarId> others;
    for (VarId v : va)
      if (v != x) others.push_back(v);
    for (VarId v : vb)
      if (v != x && !std::binary_search(va.begin(), va.end(), v))
        others.push_back(v);
    int pd = probe_gcd_degree(pa, pb, x, others);
    if (pd == 0) continue;  // certified: gcd free of x
    ++undecided;
    int cost = std::min(pa.deg(x), pb.deg(x));
    if (main == -1 || cost < best_cost || (cost == best_cost && x < main)) {
      main = x;
      best_cost = cost;
    }
  }
  if (undecided == 0) return g_mono;

  // With every common variable but one certified absent, the remaining gcd
  // is a univariate polynomial g(main): g divides each ZZ[main]-coefficient
  // of an input viewed in ZZ[main][other vars], so g is exactly the gcd of
  // the two coefficient contents.  This stays in univariate arithmetic and
  // bypasses the multivariate remainder sequence, whose coefficient swell
  // dominates everything else on inputs of this shape.
  if (undecided == 1) {
    std::vector<Int> ca = univariate_content(pa, main);
    if (zdeg(ca) > 0) {
      std::vector<Int> cb = univariate_content(pb, main);
      if (zdeg(cb) > 0) {
        std::vector<Int> g = z_gcd_uni(std::move(ca), std::move(cb));
        if (zdeg(g) > 0) {
          MPoly gp;
          for (size_t k = 0; k < g.size(); ++k)
            if (g[k] != 0)
              gp += MPoly::constant(Rat(g[k])) *
                    MPoly::variable(main, static_cast<int>(k));
          return gp.mul_mono(mg);
        }
      }
    }
    return g_mono;
  }

  // Primitive PRS in the chosen main variable.
  std::vector<MPoly> A = to_uni(pa, main), B = to_uni(pb, main);
  MPoly contA = vec_content(A), contB = vec_content(B);
  vec_strip_content(A);
  vec_strip_content(B);
  MPoly cont_g = poly_gcd_z(contA, contB);
  if (uni_deg(A) < uni_deg(B)) std::swap(A, B);
  std::vector<MPoly> gpp;
  while (true) {
    if (uni_deg(B) == 0) {
      gpp = {MPoly::constant(1)};
      break;
    }
    std::vector<MPoly> R = uni_prem(A, B);
    if (uni_deg(R) < 0) {
      gpp = std::move(B);
      break;
    }
    vec_strip_content(R);
    A = std::move(B);
    B = std::move(R);
  }
  MPoly g = from_uni(gpp, main) * cont_g;
  return normalize_primitive(g).mul_mono(mg);
}

}  // namespace

MPoly poly_gcd(const MPoly& a, const MPoly& b) {
  MPoly g = poly_gcd_z(a.primitive_part(), b.primitive_part());
  return g.primitive_part();
}

}  // namespace qtfock
