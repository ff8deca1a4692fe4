#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "qtfock/errors.hpp"
#include "qtfock/vertex1.hpp"

using namespace qtfock;

namespace {

const VarRegistry& reg = VarRegistry::instance();
const Ctx ctx;  // symbolic

const RatFunc u = RatFunc::var(reg.u(1));
const RatFunc v = RatFunc::var(reg.v(1));
const RatFunc wp = RatFunc::var(reg.wv(1));  // target Fock parameter
const RatFunc w = RatFunc::var(reg.w());     // formal vertex argument

std::vector<Partition> all_partitions_up_to(int dmax) {
  std::vector<Partition> out;
  for (int d = 0; d <= dmax; ++d) {
    for (const Partition& la : partitions_of(d)) out.push_back(la);
  }
  return out;
}

FockVec p_bra(const Partition& la, const RatFunc& param) {
  return FockVec{SymFunc::p(la), param, Side::Bra};
}

FockVec p_ket(const Partition& la, const RatFunc& param) {
  return FockVec{SymFunc::p(la), param, Side::Ket};
}

}  // namespace

TEST_CASE("vacuum expectation and the first ladder matrix elements") {
  const VOSpec phi = phi_spec(ctx, u, v);
  const RatFunc q = ctx.q(), t = ctx.t();

  const FockVec vac_bra = p_bra(Partition(), v);
  const FockVec vac_ket = p_ket(Partition(), u);
  CHECK(vo_matrix_element(ctx, vac_bra, phi, vac_ket) == RatFunc(1));

  // Ladder words on either side of the vacuum.
  const FockVec x1_bra = pbw_vector(ctx, Partition{1}, Side::Bra, v, 4);
  const FockVec x1_ket = pbw_vector(ctx, Partition{1}, Side::Ket, u, 4);
  CHECK(vo_matrix_element(ctx, x1_bra, phi, vac_ket) ==
        v * w * (v - t * u / q));
  CHECK(vo_matrix_element(ctx, x1_bra, phi, x1_ket) ==
        -u * u * (RatFunc(1) - q * v / u) * (RatFunc(1) - v / (t * u)));
}

TEST_CASE("matrix elements grade by the degree difference") {
  const VOSpec phi = phi_spec(ctx, u, v);
  const RatFunc z1 = RatFunc::var(reg.z1());
  for (const Partition& b : all_partitions_up_to(3)) {
    for (const Partition& k : all_partitions_up_to(3)) {
      const RatFunc in_z = vo_matrix_element(ctx, p_bra(b, v), phi,
                                             p_ket(k, u), z1);
      const RatFunc scalar = vo_matrix_element(ctx, p_bra(b, v), phi,
                                               p_ket(k, u), RatFunc(1));
      CHECK(in_z == z1.pow(b.weight() - k.weight()) * scalar);
    }
  }
}

TEST_CASE("integral matrix elements factor into deformation products") {
  // Closed check on the smallest pair first.
  {
    const FactorizationReport r =
        verify_factorization(ctx, Partition{1}, Partition(), u, v);
    CHECK(r.pass);
    CHECK(r.lhs == w * (ctx.tpow(1) * u / ctx.qpow(1) - v));
  }
  {
    const FactorizationReport r =
        verify_factorization(ctx, Partition(), Partition(), u, v);
    CHECK(r.pass);
    CHECK(r.lhs == RatFunc(1));
    CHECK(r.k_lhs == RatFunc(1));
  }
  for (const Partition& la : all_partitions_up_to(3)) {
    for (const Partition& mu : all_partitions_up_to(3)) {
      const FactorizationReport r = verify_factorization(ctx, la, mu, u, v);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("substitution coefficients reproduce the current prefactors") {
  // Left side uses parameters (vw, q^{-1}t uw), right side (q^{-1}t vw, uw).
  const RatFunc shift = ctx.tpow(1) / ctx.qpow(1);
  const TTransform left{v * w, shift * u * w};
  const TTransform right{shift * v * w, u * w};

  // eta:  (1 - vw/z) ... = (1 - q^{-1}t vw/z) ...
  {
    const auto l = left.apply(ctx, ModeOp::x_plus(2));
    REQUIRE(l.size() == 2);
    CHECK(l[0].first == RatFunc(1));
    CHECK(l[1].first == -v * w);
    CHECK(l[1].second.n == 1);
    const auto r = right.apply(ctx, ModeOp::x_plus(2));
    CHECK(r[1].first == -shift * v * w);
  }
  // xi:  (1 - (t/q)^{3/2} uw/z) ... = (1 - (t/q)^{1/2} uw/z) ...
  {
    const auto l = left.apply(ctx, ModeOp::x_minus(0));
    REQUIRE(l.size() == 2);
    CHECK(l[1].first == -ctx.tq_quarter(6) * u * w);
    const auto r = right.apply(ctx, ModeOp::x_minus(0));
    CHECK(r[1].first == -ctx.tq_quarter(2) * u * w);
  }
  // phi+: roots (t/q)^{-1/4} vw, (t/q)^{7/4} uw on the left and
  //       (t/q)^{3/4} vw, (t/q)^{3/4} uw on the right.
  {
    const RatFunc r1 = ctx.tq_quarter(-1) * v * w;
    const RatFunc r2 = ctx.tq_quarter(7) * u * w;
    const auto l = left.apply(ctx, ModeOp::phi_plus(1));
    REQUIRE(l.size() == 3);
    CHECK(l[1].first == -(r1 + r2));
    CHECK(l[2].first == r1 * r2);
    const RatFunc s1 = ctx.tq_quarter(3) * v * w;
    const RatFunc s2 = ctx.tq_quarter(3) * u * w;
    const auto r = right.apply(ctx, ModeOp::phi_plus(1));
    CHECK(r[1].first == -(s1 + s2));
    CHECK(r[2].first == s1 * s2);
  }
  // phi-: roots (t/q)^{1/4} vw, (t/q)^{5/4} uw on the left and
  //       (t/q)^{5/4} vw, (t/q)^{1/4} uw on the right.
  {
    const RatFunc r1 = ctx.tq_quarter(1) * v * w;
    const RatFunc r2 = ctx.tq_quarter(5) * u * w;
    const auto l = left.apply(ctx, ModeOp::phi_minus(-1));
    REQUIRE(l.size() == 3);
    CHECK(l[1].first == -(r1 + r2));
    CHECK(l[2].first == r1 * r2);
    const RatFunc s1 = ctx.tq_quarter(5) * v * w;
    const RatFunc s2 = ctx.tq_quarter(1) * u * w;
    const auto r = right.apply(ctx, ModeOp::phi_minus(-1));
    CHECK(r[1].first == -(s1 + s2));
    CHECK(r[2].first == s1 * s2);
  }
  // Heisenberg modes are outside the substitution domain.
  CHECK_THROWS_AS(left.apply(ctx, ModeOp::a(1)), Error);
}

TEST_CASE("exchange relations between the currents and the intertwiner") {
  for (const std::string& id : {"eta", "xi", "phi_plus", "phi_minus"}) {
    const RelationReport rep = intertwine_check(ctx, id, -2, 2, 2, u, v);
    INFO(rep.id << " " << rep.witness);
    CHECK(rep.pass);
  }
  // Scalar case: on the vacua every side of the phi+ relation at mode 0
  // degenerates to the same constant.
  const RelationReport scalar = intertwine_check(ctx, "phi_plus", 0, 0, 0, u, v);
  CHECK(scalar.pass);
  const RelationReport bogus = intertwine_check(ctx, "nope", 0, 0, 0, u, v);
  CHECK_FALSE(bogus.pass);
}

TEST_CASE("two point composition matches the rank one instanton series") {
  const TwoPointReport rep = two_point_series(ctx, 3, u, v, wp);
  REQUIRE(rep.lhs.size() == 4);
  CHECK(rep.pass);
  CHECK(rep.lhs[0] == RatFunc(1));

  // The same numbers arise from the one-slot gauge series: its middle
  // convention carries coefficients (u/w)^k times the series above.
  const U5dSeries gauge = z_5d_um(ctx, 1, 3, {u}, {v}, {wp});
  for (int k = 0; k <= 3; ++k) {
    CHECK(gauge.middle[k] == (u / wp).pow(k) * rep.rhs[k]);
  }
}

TEST_CASE("the exchange relations pin the operator uniquely") {
  // Fully symbolic solve through D = 2; the D = 3 box (49 unknowns over a
  // five-variable function field) runs in the specialized regime below,
  // which is still exact arithmetic.
  for (int D = 1; D <= 2; ++D) {
    const UniquenessReport rep = phi_uniqueness(ctx, D, u, v);
    CHECK(rep.kernel_dim == 1);
    CHECK(rep.matches_phi);
    CHECK(rep.pass);
  }
}

TEST_CASE("four parameter operator: hand values and the special point") {
  const RatFunc al = RatFunc::var(reg.alpha(1));
  const RatFunc be = RatFunc::var(reg.beta(1));
  const RatFunc ka = RatFunc::var(reg.alpha(2));
  const RatFunc de = RatFunc::var(reg.beta(2));
  const VOSpec psi = psi_spec(ctx, al, be, ka, de);
  const RatFunc t = ctx.t(), q = ctx.q();

  // <0|psi|p_1> and <p_1|psi|0> from the degree-one slices.
  CHECK(vo_matrix_element(ctx, p_bra(Partition(), v), psi,
                          p_ket(Partition{1}, u)) ==
        (de - ka) / ((RatFunc(1) - t) * w));
  CHECK(vo_matrix_element(ctx, p_bra(Partition{1}, v), psi,
                          p_ket(Partition(), u)) ==
        w * (be - al) / (RatFunc(1) - t));

  // The intertwiner is the point (alpha, beta, kappa, delta)
  // = (v, tu/q, q/v, q/u) of the four-parameter family.
  const VOSpec phi = phi_spec(ctx, u, v);
  const VOSpec phi_pt = psi_spec(ctx, v, t * u / q, q / v, q / u);
  for (const Partition& b : all_partitions_up_to(3)) {
    for (const Partition& k : all_partitions_up_to(3)) {
      CHECK(vo_matrix_element(ctx, p_bra(b, v), phi, p_ket(k, u)) ==
            vo_matrix_element(ctx, p_bra(b, v), phi_pt, p_ket(k, u)));
    }
  }
}

TEST_CASE("specialized parameters reproduce the symbolic verdicts") {
  FieldMode fm = FieldMode::make_specialized(
      20240817, {reg.q4(), reg.t4(), reg.u(1), reg.v(1)});
  const Ctx sp(fm);
  const RatFunc su = sp.value(reg.u(1));
  const RatFunc sv = sp.value(reg.v(1));
  for (const Partition& la : all_partitions_up_to(2)) {
    for (const Partition& mu : all_partitions_up_to(2)) {
      CHECK(verify_factorization(sp, la, mu, su, sv).pass);
    }
  }
  CHECK(intertwine_check(sp, "eta", -1, 1, 1, su, sv).pass);
  const UniquenessReport rep = phi_uniqueness(sp, 3, su, sv);
  CHECK(rep.pass);
}
