#include "refsem/types.hpp"

#include <atomic>
#include <map>
#include <stdexcept>

namespace refsem {

namespace {
TypePtr mk(TypeKind k, uint32_t var, std::string label, TypePtr a, TypePtr b) {
  auto t = std::make_shared<Type>();
  auto* p = const_cast<Type*>(t.get());
  p->kind = k;
  p->var = var;
  p->label = std::move(label);
  p->a = std::move(a);
  p->b = std::move(b);
  return t;
}
}  // namespace

TypePtr t_unit() {
  static TypePtr u = mk(TypeKind::Unit, 0, "", nullptr, nullptr);
  return u;
}
TypePtr t_int() {
  static TypePtr i = mk(TypeKind::Int, 0, "", nullptr, nullptr);
  return i;
}
TypePtr t_var(uint32_t id) { return mk(TypeKind::Var, id, "", nullptr, nullptr); }
TypePtr t_ref(TypePtr a) { return mk(TypeKind::Ref, 0, "", std::move(a), nullptr); }
TypePtr t_prod(TypePtr a, TypePtr b) { return mk(TypeKind::Prod, 0, "", std::move(a), std::move(b)); }
TypePtr t_arrow(TypePtr a, TypePtr b) { return mk(TypeKind::Arrow, 0, "", std::move(a), std::move(b)); }
TypePtr t_forall(uint32_t binder, std::string label, TypePtr body) {
  return mk(TypeKind::Forall, binder, std::move(label), std::move(body), nullptr);
}
TypePtr t_exists(uint32_t binder, std::string label, TypePtr body) {
  return mk(TypeKind::Exists, binder, std::move(label), std::move(body), nullptr);
}

uint32_t fresh_binder_id() {
  static std::atomic<uint32_t> next{kBinderBase};
  return next++;
}

namespace {

// Alpha-aware comparison: bound variables compare by binder depth.
int cmp_rec(const TypePtr& x, const TypePtr& y,
            std::map<uint32_t, int>& bx, std::map<uint32_t, int>& by, int depth) {
  if (x == y && bx.empty() && by.empty()) return 0;
  if (!x || !y) return !x ? (!y ? 0 : -1) : 1;
  if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
  switch (x->kind) {
    case TypeKind::Unit:
    case TypeKind::Int:
      return 0;
    case TypeKind::Var: {
      auto ix = bx.find(x->var);
      auto iy = by.find(y->var);
      bool fx = ix == bx.end(), fy = iy == by.end();
      if (fx != fy) return fx ? 1 : -1;  // bound sorts before free
      if (!fx) return ix->second == iy->second ? 0 : (ix->second < iy->second ? -1 : 1);
      return x->var == y->var ? 0 : (x->var < y->var ? -1 : 1);
    }
    case TypeKind::Ref:
      return cmp_rec(x->a, y->a, bx, by, depth);
    case TypeKind::Prod:
    case TypeKind::Arrow: {
      int c = cmp_rec(x->a, y->a, bx, by, depth);
      if (c) return c;
      return cmp_rec(x->b, y->b, bx, by, depth);
    }
    case TypeKind::Forall:
    case TypeKind::Exists: {
      auto sx = bx.find(x->var), sy = by.find(y->var);
      int ox = sx == bx.end() ? -1 : sx->second;
      int oy = sy == by.end() ? -1 : sy->second;
      bx[x->var] = depth;
      by[y->var] = depth;
      int c = cmp_rec(x->a, y->a, bx, by, depth + 1);
      if (ox >= 0) bx[x->var] = ox; else bx.erase(x->var);
      if (oy >= 0) by[y->var] = oy; else by.erase(y->var);
      return c;
    }
  }
  return 0;
}

}  // namespace

int type_cmp(const TypePtr& x, const TypePtr& y) {
  std::map<uint32_t, int> bx, by;
  return cmp_rec(x, y, bx, by, 0);
}

bool type_equal(const TypePtr& x, const TypePtr& y) { return type_cmp(x, y) == 0; }

namespace {
void ftv_rec(const TypePtr& t, std::set<uint32_t>& bound, std::set<uint32_t>& out) {
  if (!t) return;
  switch (t->kind) {
    case TypeKind::Var:
      if (!bound.count(t->var)) out.insert(t->var);
      break;
    case TypeKind::Ref:
      ftv_rec(t->a, bound, out);
      break;
    case TypeKind::Prod:
    case TypeKind::Arrow:
      ftv_rec(t->a, bound, out);
      ftv_rec(t->b, bound, out);
      break;
    case TypeKind::Forall:
    case TypeKind::Exists: {
      bool fresh = bound.insert(t->var).second;
      ftv_rec(t->a, bound, out);
      if (fresh) bound.erase(t->var);
      break;
    }
    default:
      break;
  }
}
}  // namespace

std::set<uint32_t> free_tyvars(const TypePtr& t) {
  std::set<uint32_t> bound, out;
  ftv_rec(t, bound, out);
  return out;
}

bool type_closed(const TypePtr& t) { return free_tyvars(t).empty(); }

bool quantifier_free(const TypePtr& t) {
  if (!t) return true;
  switch (t->kind) {
    case TypeKind::Forall:
    case TypeKind::Exists:
      return false;
    case TypeKind::Ref:
      return quantifier_free(t->a);
    case TypeKind::Prod:
    case TypeKind::Arrow:
      return quantifier_free(t->a) && quantifier_free(t->b);
    default:
      return true;
  }
}

bool is_function_type(const TypePtr& t) {
  return t && (t->kind == TypeKind::Arrow || t->kind == TypeKind::Forall);
}

size_t type_size(const TypePtr& t) {
  if (!t) return 0;
  return 1 + type_size(t->a) + type_size(t->b);
}

TypePtr type_subst(const TypePtr& t, uint32_t var, const TypePtr& image) {
  if (!t) return t;
  switch (t->kind) {
    case TypeKind::Var:
      return t->var == var ? image : t;
    case TypeKind::Ref: {
      auto a = type_subst(t->a, var, image);
      return a == t->a ? t : t_ref(a);
    }
    case TypeKind::Prod:
    case TypeKind::Arrow: {
      auto a = type_subst(t->a, var, image);
      auto b = type_subst(t->b, var, image);
      if (a == t->a && b == t->b) return t;
      return t->kind == TypeKind::Prod ? t_prod(a, b) : t_arrow(a, b);
    }
    case TypeKind::Forall:
    case TypeKind::Exists: {
      if (t->var == var) return t;  // shadowed
      auto a = type_subst(t->a, var, image);
      if (a == t->a) return t;
      return t->kind == TypeKind::Forall ? t_forall(t->var, t->label, a)
                                         : t_exists(t->var, t->label, a);
    }
    default:
      return t;
  }
}

TypePtr permute_type(const Perm& p, const TypePtr& t) {
  if (!t) return t;
  switch (t->kind) {
    case TypeKind::Var: {
      uint32_t v = p.apply_id(NameKind::TVar, t->var);
      return v == t->var ? t : t_var(v);
    }
    case TypeKind::Ref: {
      auto a = permute_type(p, t->a);
      return a == t->a ? t : t_ref(a);
    }
    case TypeKind::Prod:
    case TypeKind::Arrow: {
      auto a = permute_type(p, t->a);
      auto b = permute_type(p, t->b);
      if (a == t->a && b == t->b) return t;
      return t->kind == TypeKind::Prod ? t_prod(a, b) : t_arrow(a, b);
    }
    case TypeKind::Forall:
    case TypeKind::Exists: {
      // binder ids live above kBinderBase, outside any permutation
      auto a = permute_type(p, t->a);
      if (a == t->a) return t;
      return t->kind == TypeKind::Forall ? t_forall(t->var, t->label, a)
                                         : t_exists(t->var, t->label, a);
    }
    default:
      return t;
  }
}

void collect_type_support(const TypePtr& t, NameSet& out) {
  for (uint32_t v : free_tyvars(t))
    if (v < kBinderBase) out.insert(Name::tvar(v));
}

bool is_universal(const TypePtr& t) { return t && t->kind == TypeKind::Forall; }

TypePtr arrow_arg(const TypePtr& t) {
  if (!t || t->kind != TypeKind::Arrow) throw std::logic_error("arrow_arg: not an arrow");
  return t->a;
}

TypePtr arrow_ret(const TypePtr& t) {
  if (!t || t->kind != TypeKind::Arrow) throw std::logic_error("arrow_ret: not an arrow");
  return t->b;
}

TypePtr universal_ret(const TypePtr& t, const TypePtr& witness) {
  if (!is_universal(t)) throw std::logic_error("universal_ret: not a universal");
  return type_subst(t->a, t->var, witness);
}

}  // namespace refsem
