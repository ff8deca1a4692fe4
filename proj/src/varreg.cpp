#include "qtfock/varreg.hpp"

#include "qtfock/errors.hpp"

namespace qtfock {

const VarRegistry& VarRegistry::instance() {
  static const VarRegistry reg;
  return reg;
}

VarId VarRegistry::intern(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  VarId id = static_cast<VarId>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

VarRegistry::VarRegistry() {
  // The interning order below is part of the library's determinism
  // contract: it fixes the monomial order and therefore every canonical
  // form and every printed string.
  q4_ = intern("q4");
  t4_ = intern("t4");
  w_ = intern("w");
  x_ = intern("x");
  y_ = intern("y");
  z1_ = intern("z1");
  z2_ = intern("z2");
  la_ = intern("Lambda");
  q_ = intern("Q");
  auto family = [&](const char* stem, std::vector<VarId>& out) {
    out.reserve(kMaxIndexed);
    for (int i = 1; i <= kMaxIndexed; ++i)
      out.push_back(intern(std::string(stem) + std::to_string(i)));
  };
  family("u", u_);
  family("v", v_);
  family("w", wv_);
  family("alpha", alpha_);
  family("beta", beta_);
  family("aux", aux_);
}

VarId VarRegistry::id(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error("unknown variable name: " + name);
  return it->second;
}

const std::string& VarRegistry::name(VarId v) const {
  if (v < 0 || v >= size()) throw Error("variable id out of range");
  return names_[static_cast<size_t>(v)];
}

namespace {
VarId pick(const std::vector<VarId>& fam, int i, const char* stem) {
  if (i < 1 || i > VarRegistry::kMaxIndexed)
    throw Error(std::string("indexed variable ") + stem +
                " out of range: " + std::to_string(i));
  return fam[static_cast<size_t>(i - 1)];
}
}  // namespace

VarId VarRegistry::u(int i) const { return pick(u_, i, "u"); }
VarId VarRegistry::v(int i) const { return pick(v_, i, "v"); }
VarId VarRegistry::wv(int i) const { return pick(wv_, i, "w"); }
VarId VarRegistry::alpha(int i) const { return pick(alpha_, i, "alpha"); }
VarId VarRegistry::beta(int i) const { return pick(beta_, i, "beta"); }
VarId VarRegistry::aux(int i) const { return pick(aux_, i, "aux"); }

}  // namespace qtfock
