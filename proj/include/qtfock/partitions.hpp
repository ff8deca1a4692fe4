#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "qtfock/mpoly.hpp"

namespace qtfock {

/// Integer partition: weakly decreasing positive parts.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int weight() const;
  bool empty() const { return parts_.empty(); }

  /// Row length at 1-based index i (0 beyond the last row).
  int row(int i) const;
  /// Column height at 1-based index j, i.e. the conjugate's row.
  int col(int j) const;
  Partition conjugate() const;

  /// Generalized arm and leg of the 1-based cell (i, j): row(i) - j and
  /// col(j) - i.  For cells inside the diagram these are the usual arm and
  /// leg; outside they go negative.
  int arm(int i, int j) const { return row(i) - j; }
  int leg(int i, int j) const { return col(j) - i; }

  /// n(lambda) = sum over rows of (i-1) * lambda_i.
  long nstat() const;
  /// Multiplicity of the part k.
  int mult(int k) const;
  /// z = prod_k k^{m_k} m_k!  (order of the centralizer of the cycle type).
  Int zfactor() const;

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return !(*this == o); }
  /// Total order for container keys: weight first, then lexicographic.
  bool operator<(const Partition& o) const;

  std::string to_string() const;

 private:
  std::vector<int> parts_;
};

/// All partitions of n in descending lexicographic order ((n) first,
/// (1,...,1) last); the empty partition for n = 0.
std::vector<Partition> partitions_of(int n);

/// Dominance order on partitions of equal weight: every prefix sum of a is
/// at least that of b.  False when the weights differ.
bool dominates(const Partition& a, const Partition& b);

/// Outcome of comparing under a partial order.
enum class Cmp { Less, Equal, Greater, Incomparable };

Cmp dominance_compare(const Partition& a, const Partition& b);

/// Tuple of partitions (one slot per tensor factor).
class PartitionTuple {
 public:
  PartitionTuple() = default;
  PartitionTuple(std::initializer_list<Partition> comp);
  explicit PartitionTuple(std::vector<Partition> comp);

  const std::vector<Partition>& comp() const { return comp_; }
  const Partition& slot(int k) const;  // 1-based
  int slots() const { return static_cast<int>(comp_.size()); }
  int weight() const;

  bool operator==(const PartitionTuple& o) const { return comp_ == o.comp_; }
  bool operator!=(const PartitionTuple& o) const { return !(*this == o); }
  /// Total order for container keys: slot count, weight, then slot-wise
  /// lexicographic on the part lists.
  bool operator<(const PartitionTuple& o) const;

  std::string to_string() const;

 private:
  std::vector<Partition> comp_;
};

/// The two partial orders on partition tuples of equal weight, defined via
/// cumulative box counts.  Writing S(j, i) for a running sum that includes
/// the first i parts of slot j:
///   order R adds the full weights of slots 1..j-1,
///   order L adds the full weights of slots j+1..m.
/// a >= b iff S_a(j, i) >= S_b(j, i) for every slot j and every i >= 1.
enum class TupleOrder { R, L };

Cmp tuple_compare(TupleOrder ord, const PartitionTuple& a, const PartitionTuple& b);

/// All tuples with the given number of slots and total weight, enumerated
/// deterministically: a topological sort of the strict L-order (greater
/// tuples first), breaking ties by picking the slot-wise lexicographically
/// smallest available tuple.
std::vector<PartitionTuple> tuples_of(int slots, int n);

}  // namespace qtfock
