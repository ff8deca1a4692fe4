#pragma once

#include <map>
#include <string>
#include <vector>

namespace qtfock {

using VarId = int;

/// Process-wide interning table for polynomial variable names.
///
/// Every variable the library can ever use is interned once, in a fixed
/// order, when the singleton is constructed.  VarIds are therefore stable
/// across runs, which keeps monomial orders — and hence every printed
/// polynomial — deterministic.  The table is immutable after construction,
/// so concurrent readers need no locking.
///
/// Convention: the deformation parameters enter through their quarter
/// roots `q4` and `t4`, with q = q4^4 and t = t4^4.  Nothing else in the
/// library ever introduces a fractional power.
class VarRegistry {
 public:
  static const VarRegistry& instance();

  /// Id of a known variable; throws Error for unknown names.
  VarId id(const std::string& name) const;
  const std::string& name(VarId v) const;
  int size() const { return static_cast<int>(names_.size()); }

  // Fixed parameters.
  VarId q4() const { return q4_; }
  VarId t4() const { return t4_; }
  VarId w() const { return w_; }       // vertex-operator variable
  VarId x() const { return x_; }       // generating variable (bra side)
  VarId y() const { return y_; }       // generating variable (ket side)
  VarId z1() const { return z1_; }     // first current variable
  VarId z2() const { return z2_; }     // second current variable
  VarId lambda() const { return la_; } // instanton expansion parameter
  VarId bigq() const { return q_; }    // gauge/mass ratio parameter

  // Indexed families, 1-based, interned up to kMaxIndexed at startup.
  static constexpr int kMaxIndexed = 8;
  VarId u(int i) const;
  VarId v(int i) const;
  VarId wv(int i) const;
  VarId alpha(int i) const;
  VarId beta(int i) const;
  VarId aux(int i) const;

 private:
  VarRegistry();
  VarId intern(const std::string& name);

  std::vector<std::string> names_;
  std::map<std::string, VarId> index_;
  VarId q4_, t4_, w_, x_, y_, z1_, z2_, la_, q_;
  std::vector<VarId> u_, v_, wv_, alpha_, beta_, aux_;
};

}  // namespace qtfock
