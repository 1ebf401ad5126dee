#include "refsem/names.hpp"

#include <stdexcept>

#include "refsem/types.hpp"

namespace refsem {

const char* kind_letter(NameKind k) {
  switch (k) {
    case NameKind::Loc: return "l";
    case NameKind::TVar: return "a";
    case NameKind::Fun: return "f";
    case NameKind::Pol: return "p";
  }
  return "?";
}

Name Name::loc(uint32_t id) { return Name{NameKind::Loc, id, nullptr, 0}; }
Name Name::tvar(uint32_t id) { return Name{NameKind::TVar, id, nullptr, 0}; }
Name Name::fun(uint32_t id, TypePtr tag) { return Name{NameKind::Fun, id, std::move(tag), 0}; }
Name Name::pol(uint32_t id, uint32_t alpha) { return Name{NameKind::Pol, id, nullptr, alpha}; }

int name_cmp(const Name& a, const Name& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.id != b.id) return a.id < b.id ? -1 : 1;
  if (a.kind == NameKind::Pol) {
    if (a.pol_tag != b.pol_tag) return a.pol_tag < b.pol_tag ? -1 : 1;
  }
  if (a.kind == NameKind::Fun) return type_cmp(a.fun_tag, b.fun_tag);
  return 0;
}

bool operator==(const Name& a, const Name& b) { return name_cmp(a, b) == 0; }

void Perm::set(NameKind k, uint32_t from, uint32_t to) {
  maps_[static_cast<int>(k)][from] = to;
}

uint32_t Perm::apply_id(NameKind k, uint32_t id) const {
  const auto& m = maps_[static_cast<int>(k)];
  auto it = m.find(id);
  return it == m.end() ? id : it->second;
}

Name Perm::apply(const Name& n) const {
  Name out = n;
  out.id = apply_id(n.kind, n.id);
  if (n.kind == NameKind::Pol) out.pol_tag = apply_id(NameKind::TVar, n.pol_tag);
  if (n.kind == NameKind::Fun) out.fun_tag = permute_type(*this, n.fun_tag);
  return out;
}

bool Perm::is_identity() const {
  for (const auto& m : maps_)
    for (const auto& [from, to] : m)
      if (from != to) return false;
  return true;
}

Perm Perm::swap(NameKind k, uint32_t a, uint32_t b) {
  Perm p;
  p.set(k, a, b);
  p.set(k, b, a);
  return p;
}

Perm Perm::compose(const Perm& other) const {
  Perm out;
  for (int k = 0; k < 4; ++k) {
    auto kind = static_cast<NameKind>(k);
    std::set<uint32_t> dom;
    for (const auto& [from, _] : other.maps_[k]) dom.insert(from);
    for (const auto& [from, _] : maps_[k]) dom.insert(from);
    for (uint32_t from : dom) {
      uint32_t to = apply_id(kind, other.apply_id(kind, from));
      if (to != from) out.set(kind, from, to);
      else out.set(kind, from, to);  // keep explicit entries so inverses compose
    }
  }
  return out;
}

void FreshSource::see_id(NameKind k, uint32_t id) {
  if (id >= kBinderBase) return;  // binder range does not consume fresh indices
  auto& n = next[static_cast<int>(k)];
  if (id + 1 > n) n = id + 1;
}

void FreshSource::see(const Name& n) {
  see_id(n.kind, n.id);
  if (n.kind == NameKind::Pol) see_id(NameKind::TVar, n.pol_tag);
  if (n.kind == NameKind::Fun && n.fun_tag) {
    NameSet s;
    collect_type_support(n.fun_tag, s);
    for (const auto& m : s) see(m);
  }
}

void FreshSource::see_all(const NameSet& s) {
  for (const auto& n : s) see(n);
}

uint32_t FreshSource::fresh_id(NameKind k) {
  auto& n = next[static_cast<int>(k)];
  n += gap;
  return n++;
}

}  // namespace refsem
