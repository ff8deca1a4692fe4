#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <vector>

#include "qtfock/errors.hpp"
#include "qtfock/fock.hpp"
#include "qtfock/levelm.hpp"
#include "qtfock/symfunc.hpp"
#include "qtfock/vertex1.hpp"
#include "qtfock/whittaker.hpp"

using namespace qtfock;

namespace {

const VarRegistry& reg = VarRegistry::instance();
const Ctx ctx;  // symbolic

PartitionTuple tup1(const Partition& a) { return PartitionTuple{a}; }

std::map<Partition, RatFunc> one_slot(const TensorFockVec& v) {
  std::map<Partition, RatFunc> out;
  for (const auto& [t, c] : v.coeffs) out.emplace(t.slot(1), c);
  return out;
}

std::vector<RatFunc> vals(const Ctx& c, const std::vector<VarId>& ids) {
  std::vector<RatFunc> out;
  for (VarId v : ids) out.push_back(c.value(v));
  return out;
}

}  // namespace

TEST_CASE("coherent vector expands with hook-product coefficients") {
  RatFunc a = ctx.value(reg.alpha(1)), b = ctx.value(reg.beta(1));
  RatFunc u = ctx.value(reg.u(1));
  WhittakerL1 g = g_level1(ctx, a, b, u, 4);
  L1FactorReport rep = l1_factorization_check(ctx, g);
  CHECK(rep.pass);
  // the single-box coefficient directly
  FockVec dual{macdonald_Q(ctx, Partition{1}), u, Side::Bra};
  CHECK(fock_pairing(ctx, dual, g.slices[1]) ==
        (b - a) / (RatFunc(1) - ctx.q()));
  CHECK(l1_hook_coeff(ctx, Partition{1}, a, b) ==
        (b - a) / (RatFunc(1) - ctx.q()));
}

TEST_CASE("coherent vector satisfies the lowering conditions on all slices") {
  RatFunc a = ctx.value(reg.alpha(1)), b = ctx.value(reg.beta(1));
  RatFunc u = ctx.value(reg.u(1));
  WhittakerL1 g = g_level1(ctx, a, b, u, 4);
  CHECK(l1_condition_check(ctx, g, 3));
}

TEST_CASE("specialized charges turn the coherent vector into vertex slices") {
  RatFunc u = ctx.value(reg.u(1)), v = ctx.value(reg.v(1));
  RatFunc a = v, b = ctx.t() * u / ctx.q();
  WhittakerL1 g = g_level1(ctx, a, b, u, 3);
  VOSpec spec = phi_spec(ctx, u, v);
  FockVec vac{SymFunc::one(), u, Side::Ket};
  for (int d = 0; d <= 3; ++d) {
    for (const Partition& la : partitions_of(d)) {
      FockVec dual{macdonald_Q(ctx, la), v, Side::Bra};
      RatFunc via_vo = vo_matrix_element(ctx, dual, spec, vac, RatFunc(1));
      RatFunc via_g =
          fock_pairing(ctx, dual, g.slices[static_cast<size_t>(d)]);
      CHECK(via_vo == via_g);
    }
  }
}

TEST_CASE("ladder current exchanges with the coherent exponential") {
  RatFunc a = ctx.value(reg.alpha(1)), b = ctx.value(reg.beta(1));
  RatFunc u = ctx.value(reg.u(1));
  CHECK(l1_exchange_identity(ctx, a, b, u, 3));
}

TEST_CASE("one-slot closed coefficient matches the hook product dictionary") {
  RatFunc u = ctx.value(reg.u(1)), a = ctx.value(reg.alpha(1));
  RatFunc lam = ctx.value(reg.lambda());
  RatFunc s = ctx.p_quarter(2);
  for (int d = 0; d <= 4; ++d) {
    for (const Partition& la : partitions_of(d)) {
      CHECK(whittaker_C(ctx, tup1(la), lam, {u}, {a}) ==
            l1_hook_coeff(ctx, la, lam * s * u / a, lam));
      CHECK(whittaker_prefactor(ctx, tup1(la), Side::Ket) == RatFunc(1));
    }
  }
}

TEST_CASE("one-slot solved vector reduces to the closed coherent form") {
  RatFunc u = ctx.value(reg.u(1)), a = ctx.value(reg.alpha(1));
  RatFunc lam = ctx.value(reg.lambda());
  RatFunc s = ctx.p_quarter(2);
  WhittakerLM g = g_levelm(ctx, {u}, lam, {a}, 3, Side::Ket);
  WhittakerL1 ref = g_level1(ctx, lam * s * u / a, lam, u, 3);
  for (int d = 0; d <= 3; ++d)
    CHECK(one_slot(g.slices[static_cast<size_t>(d)]) ==
          ref.slices[static_cast<size_t>(d)].value.coeffs());
  for (int kd : g.kernel_dims) CHECK(kd == 0);
  LMCoeffReport rep = levelm_coeff_check(ctx, g);
  CHECK(rep.pass);
}

TEST_CASE("one-slot dual vector passes the duality chain") {
  RatFunc u = ctx.value(reg.u(1)), b = ctx.value(reg.beta(1));
  RatFunc lam = ctx.value(reg.lambda());
  WhittakerLM g = g_levelm(ctx, {u}, lam, {b}, 3, Side::Bra);
  for (int kd : g.kernel_dims) CHECK(kd == 0);
  CbarChainReport rep = cbar_chain_check(ctx, g);
  CHECK(rep.pass);
  LMCoeffReport crep = levelm_coeff_check(ctx, g);
  CHECK(crep.pass);
}

TEST_CASE("paired coherent vectors match the closed double-product sum") {
  RatFunc u = ctx.value(reg.u(1));
  RatFunc a = ctx.value(reg.alpha(1)), b = ctx.value(reg.beta(1));
  RatFunc lam = ctx.value(reg.lambda());
  WhittakerLM ket = g_levelm(ctx, {u}, lam, {a}, 3, Side::Ket);
  WhittakerLM bra = g_levelm(ctx, {u}, lam, {b}, 3, Side::Bra);
  GGReport rep = gg_pairing(ctx, bra, ket, 3);
  CHECK(rep.pass);
  CHECK(rep.lhs[0] == RatFunc(1));
  CHECK(rep.rhs[0] == RatFunc(1));
}

TEST_CASE("two-slot coherent vectors verify the coefficient conjecture") {
  Ctx c(FieldMode::make_specialized(
      1301, {reg.q4(), reg.t4(), reg.u(1), reg.u(2), reg.alpha(1),
             reg.alpha(2), reg.beta(1), reg.beta(2)}));
  std::vector<RatFunc> us = vals(c, {reg.u(1), reg.u(2)});
  std::vector<RatFunc> as = vals(c, {reg.alpha(1), reg.alpha(2)});
  std::vector<RatFunc> bs = vals(c, {reg.beta(1), reg.beta(2)});
  RatFunc lam = c.value(reg.lambda());

  WhittakerLM ket = g_levelm(c, us, lam, as, 2, Side::Ket);
  for (int kd : ket.kernel_dims) CHECK(kd == 0);
  LMCoeffReport krep = levelm_coeff_check(c, ket);
  CHECK(krep.pass);

  WhittakerLM bra = g_levelm(c, us, lam, bs, 2, Side::Bra);
  for (int kd : bra.kernel_dims) CHECK(kd == 0);
  CbarChainReport brep = cbar_chain_check(c, bra);
  CHECK(brep.pass);

  GGReport grep = gg_pairing(c, bra, ket, 2);
  CHECK(grep.pass);
}

TEST_CASE("coherent-vector guards reject malformed requests") {
  RatFunc u = ctx.value(reg.u(1)), a = ctx.value(reg.alpha(1));
  RatFunc lam = ctx.value(reg.lambda());
  CHECK_THROWS_AS(g_levelm(ctx, {u}, lam, {a, a}, 1, Side::Ket),
                  IndexOutOfRange);
  CHECK_THROWS_AS(g_levelm(ctx, {u}, lam, {a}, -1, Side::Ket),
                  IndexOutOfRange);
  WhittakerLM ket = g_levelm(ctx, {u}, lam, {a}, 1, Side::Ket);
  CHECK_THROWS_AS(cbar_chain_check(ctx, ket), IndexOutOfRange);
  WhittakerLM bra = g_levelm(ctx, {u}, lam, {a}, 1, Side::Bra);
  CHECK_THROWS_AS(gg_pairing(ctx, bra, ket, 2), IndexOutOfRange);
}
