#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "qtfock/errors.hpp"
#include "qtfock/nekrasov.hpp"

using namespace qtfock;

namespace {

const VarRegistry& reg = VarRegistry::instance();
const Ctx ctx;  // symbolic

std::vector<Partition> all_partitions_up_to(int dmax) {
  std::vector<Partition> out;
  for (int d = 0; d <= dmax; ++d) {
    for (const Partition& la : partitions_of(d)) out.push_back(la);
  }
  return out;
}

}  // namespace

TEST_CASE("factor on small partition pairs") {
  RatFunc u = RatFunc::var(reg.u(1));
  RatFunc q = ctx.q(), t = ctx.t();

  CHECK(nekrasov_factor(ctx, Partition(), Partition(), u) == RatFunc(1));
  CHECK(nekrasov_factor(ctx, Partition{1}, Partition(), u) ==
        RatFunc(1) - u);
  CHECK(nekrasov_factor(ctx, Partition{1}, Partition{1}, u) ==
        (RatFunc(1) - u / q) * (RatFunc(1) - u * t));
  CHECK(nekrasov_factor(ctx, Partition(), Partition{1}, u) ==
        RatFunc(1) - u * t / q);

  // A mixed pair worked by hand from the coordinate form: la = (2),
  // mu = (1).  Cells of la: (1,1) gives 1 - u q^{-1+1-1} t^{-1+1} = 1 - u/q,
  // (1,2) gives 1 - u q^{-1+2-1} t^{-1+1} = 1 - u.  Cell of mu: (1,1)
  // gives 1 - u q^{2-1} t^{1-1+1} = 1 - u q t.
  CHECK(nekrasov_factor(ctx, Partition{2}, Partition{1}, u) ==
        (RatFunc(1) - u / q) * (RatFunc(1) - u) *
            (RatFunc(1) - u * q * t));
}

TEST_CASE("coordinate and arm-leg forms agree") {
  RatFunc u = RatFunc::var(reg.u(1));
  for (const Partition& la : all_partitions_up_to(4)) {
    for (const Partition& mu : all_partitions_up_to(4)) {
      CHECK(nekrasov_factor(ctx, la, mu, u) ==
            nekrasov_factor_armleg(ctx, la, mu, u));
    }
  }
}

TEST_CASE("diagonal factors at argument one never vanish") {
  RatFunc one(1);
  for (const Partition& la : all_partitions_up_to(4)) {
    CHECK_FALSE(nekrasov_factor(ctx, la, la, one).is_zero());
  }
}

TEST_CASE("rank-two instanton series: low orders") {
  RatFunc Q = RatFunc::var(reg.bigq());
  RatFunc q = ctx.q(), t = ctx.t();
  std::vector<RatFunc> z = z_su2_series(ctx, 2, Q);

  REQUIRE(z.size() == 3);
  CHECK(z[0] == RatFunc(1));

  // Order 1 by direct evaluation of the four factors for each of the two
  // single-box pairs.
  RatFunc z10 = ((RatFunc(1) - q.inverse()) * (RatFunc(1) - t) *
                 (RatFunc(1) - Q) * (RatFunc(1) - t / (q * Q)))
                    .inverse();
  RatFunc z01 = ((RatFunc(1) - q.inverse()) * (RatFunc(1) - t) *
                 (RatFunc(1) - Q * t / q) * (RatFunc(1) - Q.inverse()))
                    .inverse();
  CHECK(z[1] == z10 + z01);
}

TEST_CASE("rank-two instanton series is reciprocal-symmetric in Q") {
  RatFunc Q = RatFunc::var(reg.bigq());
  std::vector<RatFunc> direct = z_su2_series(ctx, 2, Q);
  std::vector<RatFunc> mirrored = z_su2_series(ctx, 2, Q.inverse());
  REQUIRE(direct.size() == mirrored.size());
  for (size_t k = 0; k < direct.size(); ++k) {
    CHECK(direct[k] == mirrored[k]);
  }
}

TEST_CASE("5d series: rank one base cases") {
  std::vector<RatFunc> u = {RatFunc::var(reg.u(1))};
  std::vector<RatFunc> v = {RatFunc::var(reg.v(1))};
  std::vector<RatFunc> w = {RatFunc::var(reg.wv(1))};

  U5dSeries s = z_5d_um(ctx, 1, 2, u, v, w);
  REQUIRE(s.primary.size() == 3);
  CHECK(s.primary[0] == RatFunc(1));
  CHECK(s.middle[0] == RatFunc(1));

  // Order-1 oracle: single tuple ((1)).  The numerator factors evaluate to
  //   N_{0,(1)}(q w1 / t v1) = 1 - w1/v1   (single cell exponent is t/q),
  //   N_{(1),0}(q v1 / t u1) = 1 - q v1 / (t u1),
  // and the two denominator conventions give
  //   (t/q) / N_{(1),(1)}(1)   = (t/q) / [(1 - 1/q)(1 - t)]
  //        = 1 / N_{(1),(1)}(q/t) = 1 / [(1 - 1/t)(1 - q)].
  RatFunc q = ctx.q(), t = ctx.t();
  RatFunc numer = (RatFunc(1) - w[0] / v[0]) *
                  (RatFunc(1) - q * v[0] / (t * u[0]));
  RatFunc expect = (t / q) * (u[0] / w[0]) * numer /
                   ((RatFunc(1) - q.inverse()) * (RatFunc(1) - t));
  CHECK(s.primary[1] == expect);
  CHECK(s.middle[1] == expect);
  CHECK(s.middle[1] ==
        (u[0] / w[0]) * numer /
            ((RatFunc(1) - t.inverse()) * (RatFunc(1) - q)));
}

TEST_CASE("5d series: the two rank-two conventions agree at order one") {
  std::vector<RatFunc> u = {RatFunc::var(reg.u(1)), RatFunc::var(reg.u(2))};
  std::vector<RatFunc> v = {RatFunc::var(reg.v(1)), RatFunc::var(reg.v(2))};
  std::vector<RatFunc> w = {RatFunc::var(reg.wv(1)), RatFunc::var(reg.wv(2))};

  // Construction already asserts convention agreement per order and throws
  // on mismatch.
  U5dSeries s = z_5d_um(ctx, 2, 1, u, v, w);
  CHECK(s.primary[0] == RatFunc(1));
  CHECK(s.primary[1] == s.middle[1]);
  CHECK_FALSE(s.primary[1].is_zero());
}

TEST_CASE("cache transparency") {
  RatFunc u = RatFunc::var(reg.u(1));
  Partition la{3, 1}, mu{2, 2};
  RatFunc first = nekrasov_factor(ctx, la, mu, u);
  RatFunc second = nekrasov_factor(ctx, la, mu, u);
  CHECK(first == second);
  CHECK(first == nekrasov_factor_armleg(ctx, la, mu, u));
}
