#pragma once

#include <set>
#include <string>
#include <vector>

#include "refsem/names.hpp"

namespace refsem {

enum class TypeKind : uint8_t { Unit, Int, Var, Ref, Prod, Arrow, Forall, Exists };

// Bound type variables are drawn from a reserved id range so that played
// names (small ids) can never collide with binders. Permutations only ever
// mention played ids.
constexpr uint32_t kBinderBase = 1u << 20;

struct Type {
  TypeKind kind = TypeKind::Unit;
  uint32_t var = 0;    // Var: the tyvar id; Forall/Exists: the binder id
  std::string label;   // binder display label; empty prints as a<id>
  TypePtr a, b;        // Ref: a; Prod/Arrow: a,b; quantifiers: a = body
};

TypePtr t_unit();
TypePtr t_int();
TypePtr t_var(uint32_t id);
TypePtr t_ref(TypePtr a);
TypePtr t_prod(TypePtr a, TypePtr b);
TypePtr t_arrow(TypePtr a, TypePtr b);
TypePtr t_forall(uint32_t binder, std::string label, TypePtr body);
TypePtr t_exists(uint32_t binder, std::string label, TypePtr body);

// Alpha-aware structural comparison; labels are ignored.
int type_cmp(const TypePtr& x, const TypePtr& y);
bool type_equal(const TypePtr& x, const TypePtr& y);

struct TypeLess {
  bool operator()(const TypePtr& x, const TypePtr& y) const { return type_cmp(x, y) < 0; }
};
using TypeSet = std::set<TypePtr, TypeLess>;

std::set<uint32_t> free_tyvars(const TypePtr& t);
bool type_closed(const TypePtr& t);
bool quantifier_free(const TypePtr& t);
bool is_function_type(const TypePtr& t);  // arrow or universal
size_t type_size(const TypePtr& t);

// Capture-avoiding [image/var]; safe because binder ids live above
// kBinderBase while substitutable variables live below it.
TypePtr type_subst(const TypePtr& t, uint32_t var, const TypePtr& image);

TypePtr permute_type(const Perm& p, const TypePtr& t);
void collect_type_support(const TypePtr& t, NameSet& out);

uint32_t fresh_binder_id();

// Argument/return types of a function type; the argument of a universal is
// the pseudo-type accepting a type abstraction.
bool is_universal(const TypePtr& t);
TypePtr arrow_arg(const TypePtr& t);
TypePtr arrow_ret(const TypePtr& t);
TypePtr universal_ret(const TypePtr& t, const TypePtr& witness);

}  // namespace refsem
