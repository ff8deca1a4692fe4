#include "qtfock/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qtfock/errors.hpp"

namespace qtfock {

Partition::Partition(std::initializer_list<int> parts)
    : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw Error("Partition: parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw Error("Partition: parts must be weakly decreasing");
  }
}

int Partition::weight() const {
  return std::accumulate(parts_.begin(), parts_.end(), 0);
}

int Partition::row(int i) const {
  if (i < 1) throw Error("Partition::row: index is 1-based");
  return i <= length() ? parts_[static_cast<size_t>(i - 1)] : 0;
}

int Partition::col(int j) const {
  if (j < 1) throw Error("Partition::col: index is 1-based");
  int h = 0;
  for (int p : parts_)
    if (p >= j) ++h;
  return h;
}

Partition Partition::conjugate() const {
  if (parts_.empty()) return Partition();
  std::vector<int> c(static_cast<size_t>(parts_[0]));
  for (int j = 1; j <= parts_[0]; ++j) c[static_cast<size_t>(j - 1)] = col(j);
  return Partition(std::move(c));
}

long Partition::nstat() const {
  long n = 0;
  for (int i = 1; i <= length(); ++i) n += static_cast<long>(i - 1) * row(i);
  return n;
}

int Partition::mult(int k) const {
  int m = 0;
  for (int p : parts_)
    if (p == k) ++m;
  return m;
}

Int Partition::zfactor() const {
  Int z(1);
  int i = 0;
  while (i < length()) {
    int k = parts_[static_cast<size_t>(i)];
    int m = 0;
    while (i < length() && parts_[static_cast<size_t>(i)] == k) ++m, ++i;
    for (int r = 0; r < m; ++r) z *= k;
    Int fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
    z *= fact;
  }
  return z;
}

bool Partition::operator<(const Partition& o) const {
  if (weight() != o.weight()) return weight() < o.weight();
  return parts_ < o.parts_;
}

std::string Partition::to_string() const {
  if (parts_.empty()) return "()";
  std::string s = "(";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

namespace {
void gen_partitions(int n, int maxpart, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(Partition(cur));
    return;
  }
  for (int p = std::min(n, maxpart); p >= 1; --p) {
    cur.push_back(p);
    gen_partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw Error("partitions_of: negative weight");
  std::vector<Partition> out;
  std::vector<int> cur;
  gen_partitions(n, n, cur, out);
  if (n == 0) out = {Partition()};
  return out;
}

bool dominates(const Partition& a, const Partition& b) {
  if (a.weight() != b.weight()) return false;
  int sa = 0, sb = 0;
  int len = std::max(a.length(), b.length());
  for (int i = 1; i <= len; ++i) {
    sa += a.row(i);
    sb += b.row(i);
    if (sa < sb) return false;
  }
  return true;
}

Cmp dominance_compare(const Partition& a, const Partition& b) {
  if (a == b) return Cmp::Equal;
  bool ab = dominates(a, b), ba = dominates(b, a);
  if (ab) return Cmp::Greater;
  if (ba) return Cmp::Less;
  return Cmp::Incomparable;
}

PartitionTuple::PartitionTuple(std::initializer_list<Partition> comp)
    : comp_(comp) {}

PartitionTuple::PartitionTuple(std::vector<Partition> comp)
    : comp_(std::move(comp)) {}

const Partition& PartitionTuple::slot(int k) const {
  if (k < 1 || k > slots()) throw Error("PartitionTuple::slot: out of range");
  return comp_[static_cast<size_t>(k - 1)];
}

int PartitionTuple::weight() const {
  int w = 0;
  for (const auto& p : comp_) w += p.weight();
  return w;
}

bool PartitionTuple::operator<(const PartitionTuple& o) const {
  if (slots() != o.slots()) return slots() < o.slots();
  if (weight() != o.weight()) return weight() < o.weight();
  for (int k = 0; k < slots(); ++k) {
    if (comp_[static_cast<size_t>(k)].parts() != o.comp_[static_cast<size_t>(k)].parts())
      return comp_[static_cast<size_t>(k)].parts() < o.comp_[static_cast<size_t>(k)].parts();
  }
  return false;
}

std::string PartitionTuple::to_string() const {
  std::string s = "[";
  for (int k = 0; k < slots(); ++k) {
    if (k) s += ",";
    s += comp_[static_cast<size_t>(k)].to_string();
  }
  return s + "]";
}

namespace {

// Running sums S(j, i) for the two tuple orders, sampled at every i in
// [1, max needed]; returns false as soon as a sample of a falls below b.
bool tuple_geq(TupleOrder ord, const PartitionTuple& a, const PartitionTuple& b) {
  if (a.slots() != b.slots() || a.weight() != b.weight()) return false;
  int m = a.slots();
  for (int j = 1; j <= m; ++j) {
    int base_a = 0, base_b = 0;
    for (int k = 1; k <= m; ++k) {
      bool include = (ord == TupleOrder::R) ? (k < j) : (k > j);
      if (include) {
        base_a += a.slot(k).weight();
        base_b += b.slot(k).weight();
      }
    }
    int len = std::max({1, a.slot(j).length(), b.slot(j).length()});
    int pa = 0, pb = 0;
    for (int i = 1; i <= len; ++i) {
      pa += a.slot(j).row(i);
      pb += b.slot(j).row(i);
      if (base_a + pa < base_b + pb) return false;
    }
  }
  return true;
}

}  // namespace

Cmp tuple_compare(TupleOrder ord, const PartitionTuple& a, const PartitionTuple& b) {
  if (a == b) return Cmp::Equal;
  bool ab = tuple_geq(ord, a, b), ba = tuple_geq(ord, b, a);
  if (ab && ba) return Cmp::Equal;  // unreachable for valid inputs
  if (ab) return Cmp::Greater;
  if (ba) return Cmp::Less;
  return Cmp::Incomparable;
}

std::vector<PartitionTuple> tuples_of(int slots, int n) {
  if (slots < 1) throw Error("tuples_of: need at least one slot");
  if (n < 0) throw Error("tuples_of: negative weight");
  // All tuples first, in an arbitrary generation order.
  std::vector<PartitionTuple> all;
  std::vector<Partition> cur;
  auto rec = [&](auto&& self, int slot, int rem) -> void {
    if (slot == slots) {
      for (const auto& p : partitions_of(rem)) {
        cur.push_back(p);
        all.emplace_back(cur);
        cur.pop_back();
      }
      return;
    }
    for (int k = 0; k <= rem; ++k) {
      for (const auto& p : partitions_of(k)) {
        cur.push_back(p);
        self(self, slot + 1, rem - k);
        cur.pop_back();
      }
    }
  };
  rec(rec, 1, n);

  // Kahn topological sort of the strict L-order, greater tuples first.
  size_t N = all.size();
  std::vector<int> pending(N, 0);
  std::vector<std::vector<size_t>> below(N);
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j) {
      if (i == j) continue;
      if (tuple_compare(TupleOrder::L, all[i], all[j]) == Cmp::Greater) {
        below[i].push_back(j);  // i must precede j
        ++pending[j];
      }
    }
  auto lex_less = [&](size_t i, size_t j) { return all[i] < all[j]; };
  std::set<size_t, decltype(lex_less)> ready(lex_less);
  for (size_t i = 0; i < N; ++i)
    if (pending[i] == 0) ready.insert(i);
  std::vector<PartitionTuple> out;
  out.reserve(N);
  while (!ready.empty()) {
    size_t i = *ready.begin();
    ready.erase(ready.begin());
    out.push_back(all[i]);
    for (size_t j : below[i])
      if (--pending[j] == 0) ready.insert(j);
  }
  if (out.size() != N) throw Error("tuples_of: cycle in order (impossible)");
  return out;
}

}  // namespace qtfock
