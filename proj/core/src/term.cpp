#include "refsem/term.hpp"

#include <atomic>
#include <stdexcept>

namespace refsem {

namespace {
std::shared_ptr<Term> raw(TermKind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}
}  // namespace

TermPtr t_unitv() {
  static TermPtr u = raw(TermKind::Unit);
  return u;
}
TermPtr t_lit(long n) {
  auto t = raw(TermKind::Lit);
  t->lit = n;
  return t;
}
TermPtr t_varref(std::string sym) {
  auto t = raw(TermKind::Var);
  t->sym = std::move(sym);
  return t;
}
TermPtr t_locref(Name l) {
  auto t = raw(TermKind::Loc);
  t->name = std::move(l);
  return t;
}
TermPtr t_lam(std::string sym, TypePtr ann, TermPtr body) {
  auto t = raw(TermKind::Lam);
  t->sym = std::move(sym);
  t->ty = std::move(ann);
  t->m = std::move(body);
  return t;
}
TermPtr t_tlam(uint32_t binder, std::string label, TermPtr body) {
  auto t = raw(TermKind::TLam);
  t->tyvar = binder;
  t->tylabel = std::move(label);
  t->m = std::move(body);
  return t;
}
TermPtr t_pack(TypePtr witness, TermPtr body, TypePtr as_ty) {
  auto t = raw(TermKind::Pack);
  t->ty = std::move(witness);
  t->m = std::move(body);
  t->ty2 = std::move(as_ty);
  return t;
}
TermPtr t_pairv(TermPtr a, TermPtr b) {
  auto t = raw(TermKind::Pair);
  t->m = std::move(a);
  t->n = std::move(b);
  return t;
}
TermPtr t_app(TermPtr f, TermPtr arg) {
  auto t = raw(TermKind::App);
  t->m = std::move(f);
  t->n = std::move(arg);
  return t;
}
TermPtr t_let(std::string sym, TermPtr bound, TermPtr body) {
  auto t = raw(TermKind::App);
  t->m = t_lam(std::move(sym), nullptr, std::move(body));
  t->n = std::move(bound);
  t->let_sugar = true;
  return t;
}
TermPtr t_seq(TermPtr first, TermPtr second) {
  return t_let("_", std::move(first), std::move(second));
}
TermPtr t_tapp(TermPtr f, TypePtr arg) {
  auto t = raw(TermKind::TApp);
  t->m = std::move(f);
  t->ty = std::move(arg);
  return t;
}
TermPtr t_op(OpKind op, TermPtr a, TermPtr b) {
  auto t = raw(TermKind::Op);
  t->op = op;
  t->m = std::move(a);
  t->n = std::move(b);
  return t;
}
TermPtr t_if(TermPtr g, TermPtr thn, TermPtr els) {
  auto t = raw(TermKind::If);
  t->m = std::move(g);
  t->n = std::move(thn);
  t->k = std::move(els);
  return t;
}
TermPtr t_proj(int idx, TermPtr m) {
  auto t = raw(TermKind::Proj);
  t->idx = idx;
  t->m = std::move(m);
  return t;
}
TermPtr t_omega(TypePtr ty) {
  auto t = raw(TermKind::Omega);
  t->ty = std::move(ty);
  return t;
}
TermPtr t_refalloc(TermPtr m) {
  auto t = raw(TermKind::RefAlloc);
  t->m = std::move(m);
  return t;
}
TermPtr t_deref(TermPtr m) {
  auto t = raw(TermKind::Deref);
  t->m = std::move(m);
  return t;
}
TermPtr t_assign(TermPtr dst, TermPtr src) {
  auto t = raw(TermKind::Assign);
  t->m = std::move(dst);
  t->n = std::move(src);
  return t;
}
TermPtr t_refeq(TermPtr a, TermPtr b) {
  auto t = raw(TermKind::RefEq);
  t->m = std::move(a);
  t->n = std::move(b);
  return t;
}
TermPtr t_unpack(TermPtr pkg, uint32_t tybinder, std::string tylabel, std::string sym, TermPtr body) {
  auto t = raw(TermKind::Unpack);
  t->m = std::move(pkg);
  t->tyvar = tybinder;
  t->tylabel = std::move(tylabel);
  t->sym = std::move(sym);
  t->n = std::move(body);
  return t;
}
TermPtr t_funname(Name f) {
  auto t = raw(TermKind::FunName);
  t->name = std::move(f);
  return t;
}
TermPtr t_polname(Name p) {
  auto t = raw(TermKind::PolName);
  t->name = std::move(p);
  return t;
}
TermPtr t_hole() {
  static TermPtr h = raw(TermKind::Hole);
  return h;
}

bool is_value(const TermPtr& t) {
  if (!t) return false;
  switch (t->kind) {
    case TermKind::Unit:
    case TermKind::Lit:
    case TermKind::Var:
    case TermKind::Loc:
    case TermKind::Lam:
    case TermKind::TLam:
    case TermKind::FunName:
    case TermKind::PolName:
      return true;
    case TermKind::Pack:
      return is_value(t->m);
    case TermKind::Pair:
      return is_value(t->m) && is_value(t->n);
    default:
      return false;
  }
}

namespace {

struct CmpCtx {
  std::map<std::string, int> va, vb;  // term binders -> depth
  std::map<uint32_t, int> ta, tb;     // type binders -> depth
  int depth = 0;
};

int cmp_ty(const TypePtr& x, const TypePtr& y, CmpCtx& c);

int cmp_ty_rec(const TypePtr& x, const TypePtr& y, CmpCtx& c) {
  if (!x || !y) return !x ? (!y ? 0 : -1) : 1;
  if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
  switch (x->kind) {
    case TypeKind::Unit:
    case TypeKind::Int:
      return 0;
    case TypeKind::Var: {
      auto ix = c.ta.find(x->var);
      auto iy = c.tb.find(y->var);
      bool fx = ix == c.ta.end(), fy = iy == c.tb.end();
      if (fx != fy) return fx ? 1 : -1;
      if (!fx) return ix->second == iy->second ? 0 : (ix->second < iy->second ? -1 : 1);
      return x->var == y->var ? 0 : (x->var < y->var ? -1 : 1);
    }
    case TypeKind::Ref:
      return cmp_ty_rec(x->a, y->a, c);
    case TypeKind::Prod:
    case TypeKind::Arrow: {
      int r = cmp_ty_rec(x->a, y->a, c);
      if (r) return r;
      return cmp_ty_rec(x->b, y->b, c);
    }
    case TypeKind::Forall:
    case TypeKind::Exists: {
      auto sx = c.ta.find(x->var), sy = c.tb.find(y->var);
      int ox = sx == c.ta.end() ? -1 : sx->second;
      int oy = sy == c.tb.end() ? -1 : sy->second;
      c.ta[x->var] = c.depth;
      c.tb[y->var] = c.depth;
      ++c.depth;
      int r = cmp_ty_rec(x->a, y->a, c);
      --c.depth;
      if (ox >= 0) c.ta[x->var] = ox; else c.ta.erase(x->var);
      if (oy >= 0) c.tb[y->var] = oy; else c.tb.erase(y->var);
      return r;
    }
  }
  return 0;
}

int cmp_ty(const TypePtr& x, const TypePtr& y, CmpCtx& c) { return cmp_ty_rec(x, y, c); }

int cmp_name(const Name& a, const Name& b) { return name_cmp(a, b); }

int cmp_term(const TermPtr& a, const TermPtr& b, CmpCtx& c) {
  if (!a || !b) return !a ? (!b ? 0 : -1) : 1;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case TermKind::Unit:
    case TermKind::Hole:
      return 0;
    case TermKind::Lit:
      return a->lit == b->lit ? 0 : (a->lit < b->lit ? -1 : 1);
    case TermKind::Var: {
      auto ia = c.va.find(a->sym);
      auto ib = c.vb.find(b->sym);
      bool fa = ia == c.va.end(), fb = ib == c.vb.end();
      if (fa != fb) return fa ? 1 : -1;
      if (!fa) return ia->second == ib->second ? 0 : (ia->second < ib->second ? -1 : 1);
      return a->sym.compare(b->sym);
    }
    case TermKind::Loc:
    case TermKind::FunName:
    case TermKind::PolName:
      return cmp_name(a->name, b->name);
    case TermKind::Lam: {
      int r = cmp_ty(a->ty, b->ty, c);
      if (r) return r;
      auto sa = c.va.find(a->sym), sb = c.vb.find(b->sym);
      int oa = sa == c.va.end() ? -1 : sa->second;
      int ob = sb == c.vb.end() ? -1 : sb->second;
      c.va[a->sym] = c.depth;
      c.vb[b->sym] = c.depth;
      ++c.depth;
      r = cmp_term(a->m, b->m, c);
      --c.depth;
      if (oa >= 0) c.va[a->sym] = oa; else c.va.erase(a->sym);
      if (ob >= 0) c.vb[b->sym] = ob; else c.vb.erase(b->sym);
      return r;
    }
    case TermKind::TLam: {
      auto sa = c.ta.find(a->tyvar), sb = c.tb.find(b->tyvar);
      int oa = sa == c.ta.end() ? -1 : sa->second;
      int ob = sb == c.tb.end() ? -1 : sb->second;
      c.ta[a->tyvar] = c.depth;
      c.tb[b->tyvar] = c.depth;
      ++c.depth;
      int r = cmp_term(a->m, b->m, c);
      --c.depth;
      if (oa >= 0) c.ta[a->tyvar] = oa; else c.ta.erase(a->tyvar);
      if (ob >= 0) c.tb[b->tyvar] = ob; else c.tb.erase(b->tyvar);
      return r;
    }
    case TermKind::Pack: {
      int r = cmp_ty(a->ty, b->ty, c);
      if (r) return r;
      r = cmp_term(a->m, b->m, c);
      if (r) return r;
      return cmp_ty(a->ty2, b->ty2, c);
    }
    case TermKind::Pair:
    case TermKind::App:
    case TermKind::Assign:
    case TermKind::RefEq: {
      int r = cmp_term(a->m, b->m, c);
      if (r) return r;
      return cmp_term(a->n, b->n, c);
    }
    case TermKind::TApp: {
      int r = cmp_term(a->m, b->m, c);
      if (r) return r;
      return cmp_ty(a->ty, b->ty, c);
    }
    case TermKind::Op: {
      if (a->op != b->op) return a->op < b->op ? -1 : 1;
      int r = cmp_term(a->m, b->m, c);
      if (r) return r;
      return cmp_term(a->n, b->n, c);
    }
    case TermKind::If: {
      int r = cmp_term(a->m, b->m, c);
      if (r) return r;
      r = cmp_term(a->n, b->n, c);
      if (r) return r;
      return cmp_term(a->k, b->k, c);
    }
    case TermKind::Proj: {
      if (a->idx != b->idx) return a->idx < b->idx ? -1 : 1;
      return cmp_term(a->m, b->m, c);
    }
    case TermKind::Omega:
      return cmp_ty(a->ty, b->ty, c);
    case TermKind::RefAlloc:
    case TermKind::Deref:
      return cmp_term(a->m, b->m, c);
    case TermKind::Unpack: {
      int r = cmp_term(a->m, b->m, c);
      if (r) return r;
      auto sa = c.ta.find(a->tyvar), sb = c.tb.find(b->tyvar);
      int oa = sa == c.ta.end() ? -1 : sa->second;
      int ob = sb == c.tb.end() ? -1 : sb->second;
      auto va = c.va.find(a->sym), vb = c.vb.find(b->sym);
      int pa = va == c.va.end() ? -1 : va->second;
      int pb = vb == c.vb.end() ? -1 : vb->second;
      c.ta[a->tyvar] = c.depth;
      c.tb[b->tyvar] = c.depth;
      c.va[a->sym] = c.depth + 1;
      c.vb[b->sym] = c.depth + 1;
      c.depth += 2;
      r = cmp_term(a->n, b->n, c);
      c.depth -= 2;
      if (oa >= 0) c.ta[a->tyvar] = oa; else c.ta.erase(a->tyvar);
      if (ob >= 0) c.tb[b->tyvar] = ob; else c.tb.erase(b->tyvar);
      if (pa >= 0) c.va[a->sym] = pa; else c.va.erase(a->sym);
      if (pb >= 0) c.vb[b->sym] = pb; else c.vb.erase(b->sym);
      return r;
    }
  }
  return 0;
}

}  // namespace

int term_cmp(const TermPtr& a, const TermPtr& b) {
  CmpCtx c;
  return cmp_term(a, b, c);
}
bool term_equal(const TermPtr& a, const TermPtr& b) { return term_cmp(a, b) == 0; }

namespace {
void support_name(const Name& n, NameSet& out) {
  out.insert(n);
  if (n.kind == NameKind::Pol && n.pol_tag < kBinderBase) out.insert(Name::tvar(n.pol_tag));
  if (n.kind == NameKind::Fun && n.fun_tag) collect_type_support(n.fun_tag, out);
}

void support_ty(const TypePtr& t, std::set<uint32_t>& bound, NameSet& out) {
  if (!t) return;
  for (uint32_t v : free_tyvars(t))
    if (v < kBinderBase && !bound.count(v)) out.insert(Name::tvar(v));
}

void support_rec(const TermPtr& t, std::set<uint32_t>& boundty, NameSet& out) {
  if (!t) return;
  switch (t->kind) {
    case TermKind::Loc:
    case TermKind::FunName:
    case TermKind::PolName:
      support_name(t->name, out);
      return;
    case TermKind::Lam:
      support_ty(t->ty, boundty, out);
      support_rec(t->m, boundty, out);
      return;
    case TermKind::TLam: {
      bool fresh = boundty.insert(t->tyvar).second;
      support_rec(t->m, boundty, out);
      if (fresh) boundty.erase(t->tyvar);
      return;
    }
    case TermKind::Unpack: {
      support_rec(t->m, boundty, out);
      bool fresh = boundty.insert(t->tyvar).second;
      support_rec(t->n, boundty, out);
      if (fresh) boundty.erase(t->tyvar);
      return;
    }
    case TermKind::Pack:
      support_ty(t->ty, boundty, out);
      support_ty(t->ty2, boundty, out);
      support_rec(t->m, boundty, out);
      return;
    case TermKind::TApp:
      support_rec(t->m, boundty, out);
      support_ty(t->ty, boundty, out);
      return;
    case TermKind::Omega:
      support_ty(t->ty, boundty, out);
      return;
    default:
      support_rec(t->m, boundty, out);
      support_rec(t->n, boundty, out);
      support_rec(t->k, boundty, out);
      return;
  }
}
}  // namespace

void collect_term_support(const TermPtr& t, NameSet& out) {
  std::set<uint32_t> bound;
  support_rec(t, bound, out);
}

NameSet support(const TermPtr& t) {
  NameSet s;
  collect_term_support(t, s);
  return s;
}

NameSet support(const TypePtr& t) {
  NameSet s;
  collect_type_support(t, s);
  return s;
}

NameSet filter_kind(const NameSet& s, NameKind k) {
  NameSet out;
  for (const auto& n : s)
    if (n.kind == k) out.insert(n);
  return out;
}

TermPtr permute_term(const Perm& p, const TermPtr& t) {
  if (!t) return t;
  auto cp = std::make_shared<Term>(*t);
  bool changed = false;
  auto upd_ty = [&](TypePtr& ty) {
    auto u = permute_type(p, ty);
    if (u != ty) { ty = u; changed = true; }
  };
  auto upd_tm = [&](TermPtr& tm) {
    auto u = permute_term(p, tm);
    if (u != tm) { tm = u; changed = true; }
  };
  switch (t->kind) {
    case TermKind::Loc:
    case TermKind::FunName:
    case TermKind::PolName: {
      Name n = p.apply(t->name);
      if (!(n == t->name)) { cp->name = n; changed = true; }
      break;
    }
    default:
      break;
  }
  upd_ty(cp->ty);
  upd_ty(cp->ty2);
  upd_tm(cp->m);
  upd_tm(cp->n);
  upd_tm(cp->k);
  return changed ? TermPtr(cp) : t;
}

namespace {
std::string fresh_sym(const std::string& base) {
  static std::atomic<uint64_t> ctr{0};
  return base + "$" + std::to_string(ctr++);
}

bool free_in(const TermPtr& t, const std::string& x) {
  if (!t) return false;
  switch (t->kind) {
    case TermKind::Var:
      return t->sym == x;
    case TermKind::Lam:
      return t->sym != x && free_in(t->m, x);
    case TermKind::Unpack:
      return free_in(t->m, x) || (t->sym != x && free_in(t->n, x));
    default:
      return free_in(t->m, x) || free_in(t->n, x) || free_in(t->k, x);
  }
}
}  // namespace

TermPtr subst_var(const TermPtr& m, const std::string& x, const TermPtr& v) {
  if (!m) return m;
  switch (m->kind) {
    case TermKind::Var:
      return m->sym == x ? v : m;
    case TermKind::Lam: {
      if (m->sym == x) return m;
      if (free_in(v, m->sym)) {
        std::string y = fresh_sym(m->sym);
        auto body = subst_var(m->m, m->sym, t_varref(y));
        auto r = t_lam(y, m->ty, subst_var(body, x, v));
        return r;
      }
      auto body = subst_var(m->m, x, v);
      if (body == m->m) return m;
      auto cp = std::make_shared<Term>(*m);
      cp->m = body;
      return cp;
    }
    case TermKind::Unpack: {
      auto pkg = subst_var(m->m, x, v);
      if (m->sym == x) {
        if (pkg == m->m) return m;
        auto cp = std::make_shared<Term>(*m);
        cp->m = pkg;
        return cp;
      }
      if (free_in(v, m->sym)) {
        std::string y = fresh_sym(m->sym);
        auto body = subst_var(m->n, m->sym, t_varref(y));
        return t_unpack(pkg, m->tyvar, m->tylabel, y, subst_var(body, x, v));
      }
      auto body = subst_var(m->n, x, v);
      if (pkg == m->m && body == m->n) return m;
      auto cp = std::make_shared<Term>(*m);
      cp->m = pkg;
      cp->n = body;
      return cp;
    }
    default: {
      auto a = subst_var(m->m, x, v);
      auto b = subst_var(m->n, x, v);
      auto c = subst_var(m->k, x, v);
      if (a == m->m && b == m->n && c == m->k) return m;
      auto cp = std::make_shared<Term>(*m);
      cp->m = a;
      cp->n = b;
      cp->k = c;
      return cp;
    }
  }
}

TermPtr subst_tyvar_term(const TermPtr& m, uint32_t var, const TypePtr& image) {
  if (!m) return m;
  if ((m->kind == TermKind::TLam || m->kind == TermKind::Unpack) && m->tyvar == var) {
    // shadowed binder: only the package part of unpack is in scope
    if (m->kind == TermKind::Unpack) {
      auto pkg = subst_tyvar_term(m->m, var, image);
      if (pkg == m->m) return m;
      auto cp = std::make_shared<Term>(*m);
      cp->m = pkg;
      return cp;
    }
    return m;
  }
  auto cp = std::make_shared<Term>(*m);
  bool changed = false;
  auto upd_ty = [&](TypePtr& ty) {
    if (!ty) return;
    auto u = type_subst(ty, var, image);
    if (u != ty) { ty = u; changed = true; }
  };
  auto upd_tm = [&](TermPtr& tm) {
    auto u = subst_tyvar_term(tm, var, image);
    if (u != tm) { tm = u; changed = true; }
  };
  upd_ty(cp->ty);
  upd_ty(cp->ty2);
  upd_tm(cp->m);
  upd_tm(cp->n);
  upd_tm(cp->k);
  return changed ? TermPtr(cp) : m;
}

TermPtr apply_env_once(const TermPtr& m, const SubstEnv& env) {
  if (!m) return m;
  switch (m->kind) {
    case TermKind::FunName:
    case TermKind::PolName: {
      auto it = env.vals.find(m->name);
      if (it != env.vals.end()) return it->second;
      // fall through to rename tag type variables
      Name n = m->name;
      if (n.kind == NameKind::Fun && n.fun_tag) {
        auto tag = apply_env(n.fun_tag, env);
        if (tag != n.fun_tag) {
          n.fun_tag = tag;
          return m->kind == TermKind::FunName ? t_funname(n) : t_polname(n);
        }
      }
      return m;
    }
    default: {
      auto cp = std::make_shared<Term>(*m);
      bool changed = false;
      auto upd_ty = [&](TypePtr& ty) {
        if (!ty) return;
        auto u = apply_env(ty, env);
        if (u != ty) { ty = u; changed = true; }
      };
      auto upd_tm = [&](TermPtr& tm) {
        auto u = apply_env_once(tm, env);
        if (u != tm) { tm = u; changed = true; }
      };
      upd_ty(cp->ty);
      upd_ty(cp->ty2);
      upd_tm(cp->m);
      upd_tm(cp->n);
      upd_tm(cp->k);
      return changed ? TermPtr(cp) : m;
    }
  }
}

TypePtr apply_env(const TypePtr& t, const SubstEnv& env) {
  TypePtr cur = t;
  for (int i = 0; i < 64; ++i) {
    TypePtr next = cur;
    for (const auto& [v, image] : env.tys) next = type_subst(next, v, image);
    if (next == cur || type_equal(next, cur)) return next;
    cur = next;
  }
  throw std::runtime_error("apply_env: cyclic type environment");
}

namespace {
bool mentions_domain(const TermPtr& m, const SubstEnv& env) {
  NameSet s = support(m);
  for (const auto& [n, _] : env.vals)
    if (s.count(n)) return true;
  for (const auto& [v, _] : env.tys)
    if (s.count(Name::tvar(v))) return true;
  return false;
}
}  // namespace

TermPtr apply_env(const TermPtr& m, const SubstEnv& env) {
  if (env.empty()) return m;
  TermPtr cur = m;
  size_t limit = env.vals.size() + env.tys.size() + 8;
  for (size_t i = 0; i < limit; ++i) {
    TermPtr next = apply_env_once(cur, env);
    if (next == cur) return cur;
    cur = next;
    if (!mentions_domain(cur, env)) return cur;
  }
  throw std::runtime_error("apply_env: cyclic environment");
}

TermPtr plug(const TermPtr& ctx, const TermPtr& m) {
  if (!ctx) return ctx;
  if (ctx->kind == TermKind::Hole) return m;
  auto cp = std::make_shared<Term>(*ctx);
  bool changed = false;
  auto upd = [&](TermPtr& t) {
    if (!t || changed) return;
    if (has_hole(t)) {
      t = plug(t, m);
      changed = true;
    }
  };
  upd(cp->m);
  upd(cp->n);
  upd(cp->k);
  return changed ? TermPtr(cp) : ctx;
}

bool has_hole(const TermPtr& t) {
  if (!t) return false;
  if (t->kind == TermKind::Hole) return true;
  return has_hole(t->m) || has_hole(t->n) || has_hole(t->k);
}

namespace {
// Wraps child position i of t with the decomposition of that child.
std::optional<std::pair<TermPtr, TermPtr>> descend(const TermPtr& t, const TermPtr& child, int which) {
  auto sub = decompose(child);
  if (!sub) return std::nullopt;
  auto cp = std::make_shared<Term>(*t);
  if (which == 0) cp->m = sub->first;
  else if (which == 1) cp->n = sub->first;
  else cp->k = sub->first;
  return std::make_pair(TermPtr(cp), sub->second);
}

std::pair<TermPtr, TermPtr> at_hole(const TermPtr& t) { return {t_hole(), t}; }
}  // namespace

std::optional<std::pair<TermPtr, TermPtr>> decompose(const TermPtr& m) {
  if (!m || is_value(m)) return std::nullopt;
  switch (m->kind) {
    case TermKind::App:
    case TermKind::Op:
    case TermKind::Assign:
    case TermKind::RefEq:
      if (!is_value(m->m)) return descend(m, m->m, 0);
      if (!is_value(m->n)) return descend(m, m->n, 1);
      return at_hole(m);
    case TermKind::TApp:
    case TermKind::Proj:
    case TermKind::RefAlloc:
    case TermKind::Deref:
      if (!is_value(m->m)) return descend(m, m->m, 0);
      return at_hole(m);
    case TermKind::If:
      if (!is_value(m->m)) return descend(m, m->m, 0);
      return at_hole(m);
    case TermKind::Pair:
      if (!is_value(m->m)) return descend(m, m->m, 0);
      if (!is_value(m->n)) return descend(m, m->n, 1);
      return std::nullopt;  // a pair of values is a value
    case TermKind::Pack:
      if (!is_value(m->m)) return descend(m, m->m, 0);
      return std::nullopt;
    case TermKind::Unpack:
      if (!is_value(m->m)) return descend(m, m->m, 0);
      return at_hole(m);
    case TermKind::Omega:
      return at_hole(m);
    case TermKind::Hole:
      return at_hole(m);
    default:
      return at_hole(m);
  }
}

// ---- Abstract values ----

AbsPtr av_unit() {
  static AbsPtr u = std::make_shared<AbsVal>();
  return u;
}
AbsPtr av_int(long n) {
  auto v = std::make_shared<AbsVal>();
  v->k = AbsVal::Int;
  v->n = n;
  return v;
}
AbsPtr av_name(const Name& n) {
  auto v = std::make_shared<AbsVal>();
  switch (n.kind) {
    case NameKind::Loc: v->k = AbsVal::Loc; break;
    case NameKind::Fun: v->k = AbsVal::Fun; break;
    case NameKind::Pol: v->k = AbsVal::Pol; break;
    case NameKind::TVar: v->k = AbsVal::TyVar; break;
  }
  v->name = n;
  return v;
}
AbsPtr av_pair(AbsPtr a, AbsPtr b) {
  auto v = std::make_shared<AbsVal>();
  v->k = AbsVal::Pair;
  v->a = std::move(a);
  v->b = std::move(b);
  return v;
}

int abs_cmp(const AbsPtr& a, const AbsPtr& b) {
  if (!a || !b) return !a ? (!b ? 0 : -1) : 1;
  if (a->k != b->k) return a->k < b->k ? -1 : 1;
  switch (a->k) {
    case AbsVal::Unit: return 0;
    case AbsVal::Int: return a->n == b->n ? 0 : (a->n < b->n ? -1 : 1);
    case AbsVal::Loc:
    case AbsVal::Fun:
    case AbsVal::Pol:
    case AbsVal::TyVar:
      return name_cmp(a->name, b->name);
    case AbsVal::Pair: {
      int r = abs_cmp(a->a, b->a);
      if (r) return r;
      return abs_cmp(a->b, b->b);
    }
  }
  return 0;
}
bool abs_equal(const AbsPtr& a, const AbsPtr& b) { return abs_cmp(a, b) == 0; }

void collect_abs_support(const AbsPtr& v, NameSet& out) {
  if (!v) return;
  switch (v->k) {
    case AbsVal::Unit:
    case AbsVal::Int:
      return;
    case AbsVal::Pair:
      collect_abs_support(v->a, out);
      collect_abs_support(v->b, out);
      return;
    default:
      support_name(v->name, out);
      return;
  }
}

AbsPtr permute_abs(const Perm& p, const AbsPtr& v) {
  if (!v) return v;
  switch (v->k) {
    case AbsVal::Unit:
    case AbsVal::Int:
      return v;
    case AbsVal::Pair:
      return av_pair(permute_abs(p, v->a), permute_abs(p, v->b));
    default:
      return av_name(p.apply(v->name));
  }
}

TermPtr abs_to_term(const AbsPtr& v) {
  if (!v) return nullptr;
  switch (v->k) {
    case AbsVal::Unit: return t_unitv();
    case AbsVal::Int: return t_lit(v->n);
    case AbsVal::Loc: return t_locref(v->name);
    case AbsVal::Fun: return t_funname(v->name);
    case AbsVal::Pol: return t_polname(v->name);
    case AbsVal::TyVar:
      throw std::runtime_error("abs_to_term: bare type variable has no term form");
    case AbsVal::Pair: return t_pairv(abs_to_term(v->a), abs_to_term(v->b));
  }
  return nullptr;
}

AbsPtr apply_env_abs(const AbsPtr& v, const SubstEnv& env) {
  if (!v) return v;
  switch (v->k) {
    case AbsVal::Pair:
      return av_pair(apply_env_abs(v->a, env), apply_env_abs(v->b, env));
    case AbsVal::TyVar: {
      auto it = env.tys.find(v->name.id);
      if (it == env.tys.end()) return v;
      if (it->second->kind == TypeKind::Var) return av_name(Name::tvar(it->second->var));
      return v;  // concrete types stay abstract in moves
    }
    default:
      return v;
  }
}

std::optional<Polarity> lambda_owner(const Lambda& l, const Name& n) {
  for (const auto& [a, pol] : l)
    if (a == n) return pol;
  return std::nullopt;
}
bool lambda_has(const Lambda& l, const Name& n) { return lambda_owner(l, n).has_value(); }

NameSet lambda_support(const Lambda& l) {
  NameSet s;
  for (const auto& [a, _] : l) support_name(a, s);
  return s;
}

SubstEnv env_of_gamma(const Gamma& g) {
  SubstEnv env;
  for (const auto& [n, gv] : g) {
    if (n.kind == NameKind::TVar) env.tys[n.id] = gv.ty;
    else env.vals[n] = gv.val;
  }
  return env;
}

void phi_insert(Phi& phi, uint32_t loc, const TypePtr& ty) {
  phi[loc].insert(ty);
}

bool phi_union(Phi& into, const Phi& more) {
  bool grew = false;
  for (const auto& [l, ts] : more)
    for (const auto& t : ts)
      grew |= into[l].insert(t).second;
  return grew;
}

NameSet phi_support(const Phi& phi) {
  NameSet s;
  for (const auto& [l, ts] : phi) {
    s.insert(Name::loc(l));
    for (const auto& t : ts) collect_type_support(t, s);
  }
  return s;
}

NameSet store_support(const Store& s) {
  NameSet out;
  for (const auto& [l, v] : s) {
    out.insert(Name::loc(l));
    collect_term_support(v, out);
  }
  return out;
}

NameSet abs_store_support(const AbsStore& s) {
  NameSet out;
  for (const auto& [l, v] : s) {
    out.insert(Name::loc(l));
    collect_abs_support(v, out);
  }
  return out;
}

NameSet rho_support(const Rho& r) {
  NameSet out;
  for (const auto& [p, v] : r) {
    support_name(p, out);
    collect_abs_support(v, out);
  }
  return out;
}

NameSet gamma_support(const Gamma& g) {
  NameSet out;
  for (const auto& [n, gv] : g) {
    support_name(n, out);
    if (gv.val) collect_term_support(gv.val, out);
    if (gv.ty) collect_type_support(gv.ty, out);
  }
  return out;
}

}  // namespace refsem
