#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "qtfock/errors.hpp"
#include "qtfock/partitions.hpp"

using namespace qtfock;

namespace {

// Independent oracle for partition counts: Euler's recurrence-free DP on
// the generating product prod_k (1 - x^k)^(-slots).
std::vector<long> tuple_counts(int slots, int maxn) {
  std::vector<long> dp(static_cast<size_t>(maxn) + 1, 0);
  dp[0] = 1;
  for (int s = 0; s < slots; ++s)
    for (int k = 1; k <= maxn; ++k)
      for (int n = k; n <= maxn; ++n)
        dp[static_cast<size_t>(n)] += dp[static_cast<size_t>(n - k)];
  return dp;
}

}  // namespace

TEST_CASE("partition enumeration counts and order") {
  auto counts = tuple_counts(1, 10);
  for (int n = 0; n <= 10; ++n)
    CHECK(partitions_of(n).size() == static_cast<size_t>(counts[static_cast<size_t>(n)]));
  auto p4 = partitions_of(4);
  REQUIRE(p4.size() == 5);
  CHECK(p4[0] == Partition{4});
  CHECK(p4[1] == Partition{3, 1});
  CHECK(p4[2] == Partition{2, 2});
  CHECK(p4[3] == Partition{2, 1, 1});
  CHECK(p4[4] == Partition{1, 1, 1, 1});
  CHECK(partitions_of(0) == std::vector<Partition>{Partition()});
  CHECK_THROWS_AS(Partition({1, 2}), Error);
  CHECK_THROWS_AS(Partition({0}), Error);
}

TEST_CASE("conjugate, arms, legs and the n statistic") {
  Partition la{4, 3, 1};
  CHECK(la.conjugate() == Partition{3, 2, 2, 1});
  CHECK(la.conjugate().conjugate() == la);
  CHECK(la.weight() == 8);
  // Cell (1,1): arm = 3, leg = 2; cell (2,3): arm = 0, leg = 0.
  CHECK(la.arm(1, 1) == 3);
  CHECK(la.leg(1, 1) == 2);
  CHECK(la.arm(2, 3) == 0);
  CHECK(la.leg(2, 3) == 0);
  // Generalized values outside the diagram go negative.
  CHECK(la.arm(4, 1) == -1);
  CHECK(la.leg(1, 5) == -1);
  CHECK(la.nstat() == 0 * 4 + 1 * 3 + 2 * 1);
  // n of the conjugate equals sum of binom(lambda_i, 2).
  CHECK(la.conjugate().nstat() == 6 + 3 + 0);
}

TEST_CASE("centralizer orders") {
  CHECK(Partition({3, 1, 1}).zfactor() == 6);
  CHECK(Partition({2, 2}).zfactor() == 8);
  CHECK(Partition({1, 1, 1}).zfactor() == 6);
  CHECK(Partition({5}).zfactor() == 5);
  CHECK(Partition().zfactor() == 1);
}

TEST_CASE("dominance order") {
  CHECK(dominates(Partition{3, 3}, Partition{3, 2, 1}));
  CHECK(dominates(Partition{3, 2, 1}, Partition{2, 2, 2}));
  CHECK_FALSE(dominates(Partition{2, 2, 2}, Partition{3, 1, 1, 1}));
  CHECK_FALSE(dominates(Partition{3, 1, 1, 1}, Partition{2, 2, 2}));
  CHECK(dominance_compare(Partition{3, 1, 1, 1}, Partition{2, 2, 2}) ==
        Cmp::Incomparable);
  CHECK(dominance_compare(Partition{4, 2}, Partition{3, 3}) == Cmp::Greater);
  CHECK(dominance_compare(Partition{3, 3}, Partition{4, 2}) == Cmp::Less);
  CHECK(dominance_compare(Partition{2, 1}, Partition{2, 1}) == Cmp::Equal);
  // Different weights never compare.
  CHECK_FALSE(dominates(Partition{3}, Partition{2}));
}

TEST_CASE("tuple orders on two slots") {
  PartitionTuple a{Partition(), Partition{1}};
  PartitionTuple b{Partition{1}, Partition()};
  CHECK(tuple_compare(TupleOrder::L, a, b) == Cmp::Greater);
  CHECK(tuple_compare(TupleOrder::L, b, a) == Cmp::Less);
  CHECK(tuple_compare(TupleOrder::R, b, a) == Cmp::Greater);
  CHECK(tuple_compare(TupleOrder::R, a, b) == Cmp::Less);

  // Weight-2 chain under the L order, top down.
  std::vector<PartitionTuple> chain = {
      PartitionTuple{Partition(), Partition{2}},
      PartitionTuple{Partition(), Partition{1, 1}},
      PartitionTuple{Partition{1}, Partition{1}},
      PartitionTuple{Partition{2}, Partition()},
      PartitionTuple{Partition{1, 1}, Partition()},
  };
  for (size_t i = 0; i < chain.size(); ++i)
    for (size_t j = i + 1; j < chain.size(); ++j)
      CHECK(tuple_compare(TupleOrder::L, chain[i], chain[j]) == Cmp::Greater);

  // A genuinely incomparable pair at weight 3.
  PartitionTuple c{Partition{1}, Partition{2}};
  PartitionTuple d{Partition(), Partition{1, 1, 1}};
  CHECK(tuple_compare(TupleOrder::L, c, d) == Cmp::Incomparable);
  CHECK(tuple_compare(TupleOrder::L, d, c) == Cmp::Incomparable);
}

TEST_CASE("tuple enumeration is a deterministic linear extension") {
  auto one3 = tuples_of(1, 3);
  REQUIRE(one3.size() == 3);
  CHECK(one3[0] == PartitionTuple{Partition{3}});
  CHECK(one3[1] == PartitionTuple{Partition{2, 1}});
  CHECK(one3[2] == PartitionTuple{Partition{1, 1, 1}});

  auto two2 = tuples_of(2, 2);
  REQUIRE(two2.size() == 5);
  CHECK(two2[0] == PartitionTuple{Partition(), Partition{2}});
  CHECK(two2[1] == PartitionTuple{Partition(), Partition{1, 1}});
  CHECK(two2[2] == PartitionTuple{Partition{1}, Partition{1}});
  CHECK(two2[3] == PartitionTuple{Partition{2}, Partition()});
  CHECK(two2[4] == PartitionTuple{Partition{1, 1}, Partition()});

  // Counts against the generating-function oracle.
  auto c2 = tuple_counts(2, 6);
  auto c3 = tuple_counts(3, 4);
  for (int n = 0; n <= 6; ++n)
    CHECK(tuples_of(2, n).size() == static_cast<size_t>(c2[static_cast<size_t>(n)]));
  for (int n = 0; n <= 4; ++n)
    CHECK(tuples_of(3, n).size() == static_cast<size_t>(c3[static_cast<size_t>(n)]));

  // Topological soundness: no tuple strictly exceeds an earlier one.
  auto lst = tuples_of(2, 4);
  for (size_t i = 0; i < lst.size(); ++i)
    for (size_t j = i + 1; j < lst.size(); ++j)
      CHECK(tuple_compare(TupleOrder::L, lst[j], lst[i]) != Cmp::Greater);

  // Determinism.
  CHECK(tuples_of(2, 4) == lst);
}
