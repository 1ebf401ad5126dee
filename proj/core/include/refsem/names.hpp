#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace refsem {

struct Type;
using TypePtr = std::shared_ptr<const Type>;

enum class NameKind : uint8_t { Loc = 0, TVar = 1, Fun = 2, Pol = 3 };

const char* kind_letter(NameKind k);

// An atom of the semantic universe. Fun names carry the function type they
// abstract; Pol names carry the type variable they inhabit. Two names are
// equal iff kind, id and tag all agree.
struct Name {
  NameKind kind = NameKind::Loc;
  uint32_t id = 0;
  TypePtr fun_tag;       // Fun names only
  uint32_t pol_tag = 0;  // Pol names only: id of the type variable

  static Name loc(uint32_t id);
  static Name tvar(uint32_t id);
  static Name fun(uint32_t id, TypePtr tag);
  static Name pol(uint32_t id, uint32_t alpha);
};

int name_cmp(const Name& a, const Name& b);
bool operator==(const Name& a, const Name& b);
inline bool operator!=(const Name& a, const Name& b) { return !(a == b); }
inline bool operator<(const Name& a, const Name& b) { return name_cmp(a, b) < 0; }

using NameSet = std::set<Name>;

// A finite kind-preserving permutation, stored as per-kind id bijections.
// Applying it to a Fun/Pol name also renames the tag.
class Perm {
 public:
  Perm() = default;

  void set(NameKind k, uint32_t from, uint32_t to);
  uint32_t apply_id(NameKind k, uint32_t id) const;
  Name apply(const Name& n) const;
  bool is_identity() const;

  static Perm swap(NameKind k, uint32_t a, uint32_t b);
  // this after other: apply(x) == this(other(x))
  Perm compose(const Perm& other) const;

  const std::map<uint32_t, uint32_t>& table(NameKind k) const {
    return maps_[static_cast<int>(k)];
  }

 private:
  std::map<uint32_t, uint32_t> maps_[4];
};

// Deterministic fresh-name generation: per-kind monotone counters, advanced
// over every support set the source has seen. "Fresh for X" means an index
// above every index in the support of X. The gap field lets tests shift the
// drawn indices without changing anything up to permutation.
struct FreshSource {
  uint32_t next[4] = {0, 0, 0, 0};
  uint32_t gap = 0;

  void see_id(NameKind k, uint32_t id);
  void see(const Name& n);
  void see_all(const NameSet& s);
  uint32_t fresh_id(NameKind k);
};

}  // namespace refsem
