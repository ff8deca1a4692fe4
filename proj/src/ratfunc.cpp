#include "qtfock/ratfunc.hpp"

#include <random>
#include <set>

#include "qtfock/errors.hpp"

namespace qtfock {

RatFunc::RatFunc(long n, long d) : RatFunc(Rat(n, d)) {
  if (d == 0) throw DivByZero("RatFunc: zero denominator");
}

RatFunc::RatFunc(const Rat& c)
    : pre_(c), num_(MPoly::constant(1)), den_(MPoly::constant(1)) {
  pre_.canonicalize();
}

RatFunc RatFunc::var(VarId v, int exp) {
  RatFunc r;
  r.pre_ = 1;
  if (exp >= 0) {
    r.num_ = MPoly::variable(v, exp);
    r.den_ = MPoly::constant(1);
  } else {
    r.num_ = MPoly::constant(1);
    r.den_ = MPoly::variable(v, -exp);
  }
  return r;
}

RatFunc RatFunc::from_poly(const MPoly& p) {
  RatFunc r;
  if (p.is_zero()) return r;
  Rat c;
  r.num_ = p.primitive_part(&c);
  r.pre_ = c;
  r.den_ = MPoly::constant(1);
  return r;
}

RatFunc RatFunc::fraction(const MPoly& num, const MPoly& den) {
  if (den.is_zero()) throw DivByZero("RatFunc::fraction: zero denominator");
  RatFunc r;
  if (num.is_zero()) return r;
  Rat cn, cd;
  r.num_ = num.primitive_part(&cn);
  r.den_ = den.primitive_part(&cd);
  r.pre_ = cn / cd;
  r.normalize_parts();
  return r;
}

void RatFunc::normalize_parts() {
  if (pre_ == 0) {
    num_ = MPoly::constant(1);
    den_ = MPoly::constant(1);
    return;
  }
  MPoly g = poly_gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = exact_div(num_, g);
    den_ = exact_div(den_, g);
  }
  Rat cn, cd;
  num_ = num_.primitive_part(&cn);
  den_ = den_.primitive_part(&cd);
  pre_ *= cn / cd;
  if (pre_ == 0) {
    num_ = MPoly::constant(1);
    den_ = MPoly::constant(1);
  }
}

bool RatFunc::is_one() const {
  return pre_ == 1 && num_.is_constant() && den_.is_constant();
}

bool RatFunc::is_constant() const {
  return pre_ == 0 || (num_.is_constant() && den_.is_constant());
}

Rat RatFunc::as_rational() const {
  if (!is_constant()) throw Error("RatFunc::as_rational: not constant");
  return pre_;
}

bool RatFunc::depends_on(VarId v) const {
  return !is_zero() && (num_.depends_on(v) || den_.depends_on(v));
}

std::vector<VarId> RatFunc::variables() const {
  std::vector<VarId> vs = num_.variables(), vd = den_.variables();
  vs.insert(vs.end(), vd.begin(), vd.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.pre_ = -r.pre_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  // With both fractions reduced, any cancellation in the sum happens
  // against the common part g of the denominators.
  MPoly g = poly_gcd(den_, o.den_);
  MPoly da = g.is_constant() ? den_ : exact_div(den_, g);
  MPoly db = g.is_constant() ? o.den_ : exact_div(o.den_, g);
  MPoly num = (pre_ * (num_ * db)) + (o.pre_ * (o.num_ * da));
  if (num.is_zero()) return *this = RatFunc();
  MPoly den = den_ * db;  // = g * da * db
  Rat cn;
  num = num.primitive_part(&cn);
  MPoly h = poly_gcd(num, g);
  if (!h.is_constant()) {
    num = exact_div(num, h);
    den = exact_div(den, h);
  }
  Rat cd;
  den = den.primitive_part(&cd);
  pre_ = cn / cd;
  num_ = std::move(num);
  den_ = std::move(den);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RatFunc();
  MPoly g1 = poly_gcd(num_, o.den_);
  MPoly g2 = poly_gcd(o.num_, den_);
  MPoly na = g1.is_constant() ? num_ : exact_div(num_, g1);
  MPoly db = g1.is_constant() ? o.den_ : exact_div(o.den_, g1);
  MPoly nb = g2.is_constant() ? o.num_ : exact_div(o.num_, g2);
  MPoly da = g2.is_constant() ? den_ : exact_div(den_, g2);
  Rat cn, cd;
  num_ = (na * nb).primitive_part(&cn);
  den_ = (da * db).primitive_part(&cd);
  pre_ *= o.pre_ * cn / cd;
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw DivByZero("RatFunc: division by zero");
  return *this *= o.inverse();
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivByZero("RatFunc::inverse of zero");
  RatFunc r;
  r.pre_ = 1 / pre_;
  r.num_ = den_;
  r.den_ = num_;
  return r;
}

RatFunc RatFunc::pow(long e) const {
  if (e == 0) return RatFunc(1);
  RatFunc base = e < 0 ? inverse() : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  // Coprime primitive parts stay coprime and primitive under powers, so the
  // canonical form survives part-wise exponentiation.
  RatFunc r;
  Int pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), base.pre_.get_num().get_mpz_t(), k);
  mpz_pow_ui(pd.get_mpz_t(), base.pre_.get_den().get_mpz_t(), k);
  r.pre_ = Rat(pn, pd);  // canonical: base.pre_ was canonical
  r.num_ = base.num_.pow(static_cast<int>(k));
  r.den_ = base.den_.pow(static_cast<int>(k));
  return r;
}

bool RatFunc::operator==(const RatFunc& o) const {
  return pre_ == o.pre_ && num_ == o.num_ && den_ == o.den_;
}

bool value_equal(const RatFunc& a, const RatFunc& b) {
  if (a.prefactor() == 0) return b.prefactor() == 0;
  if (b.prefactor() == 0) return false;
  MPoly lhs = (a.prefactor() * (a.num() * b.den()));
  MPoly rhs = (b.prefactor() * (b.num() * a.den()));
  return lhs == rhs;
}

RatFunc RatFunc::substitute(const std::map<VarId, Rat>& assignment) const {
  if (is_zero()) return *this;
  MPoly d = den_.substitute(assignment);
  if (d.is_zero())
    throw PoleAtPoint("RatFunc::substitute: denominator vanishes at point");
  MPoly n = num_.substitute(assignment);
  RatFunc r = fraction(n, d);
  r.pre_ *= pre_;
  if (r.pre_ == 0) return RatFunc();
  return r;
}

std::string RatFunc::to_string() const {
  if (is_zero()) return "0";
  // Fold the prefactor into the numerator for display; canonical data stays
  // untouched.
  MPoly shown = num_;
  shown.scale(pre_);
  if (den_.is_constant()) return shown.to_string();
  std::string s = "(" + shown.to_string() + ")/(" + den_.to_string() + ")";
  return s;
}

// ---------------------------------------------------------------------------
// FieldMode / Ctx
// ---------------------------------------------------------------------------

FieldMode FieldMode::make_symbolic() { return FieldMode{}; }

FieldMode FieldMode::make_specialized(uint64_t seed, const std::vector<VarId>& params) {
  FieldMode m;
  m.symbolic = false;
  m.seed = seed;
  // Raw modulo keeps the draw identical across standard library
  // implementations (distribution classes are not portable).
  std::mt19937_64 rng(seed);
  auto draw_small = [&rng]() { return static_cast<long>(2 + rng() % 96); };
  std::set<Rat> used;
  for (VarId v : params) {
    if (m.assignment.count(v)) continue;
    Rat val;
    do {
      val = Rat(draw_small(), draw_small());
      val.canonicalize();
    } while (used.count(val));
    used.insert(val);
    m.assignment[v] = val;
  }
  return m;
}

RatFunc Ctx::value(VarId v) const {
  if (mode_.symbolic) return RatFunc::var(v);
  auto it = mode_.assignment.find(v);
  if (it == mode_.assignment.end()) return RatFunc::var(v);
  return RatFunc(it->second);
}

}  // namespace qtfock
