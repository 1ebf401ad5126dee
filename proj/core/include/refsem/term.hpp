#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "refsem/types.hpp"

namespace refsem {

enum class TermKind : uint8_t {
  Unit, Lit, Var, Loc, Lam, TLam, Pack, Pair,
  App, TApp, Op, If, Proj, Omega,
  RefAlloc, Deref, Assign, RefEq, Unpack,
  FunName, PolName, Hole
};

enum class OpKind : uint8_t { Add, Sub, Mul, Eq };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind = TermKind::Unit;
  long lit = 0;          // Lit
  int idx = 0;           // Proj: 1 or 2
  OpKind op = OpKind::Add;
  std::string sym;       // Var; Lam binder; Unpack value binder
  uint32_t tyvar = 0;    // TLam binder; Unpack type binder
  std::string tylabel;   // display label of the bound type variable
  Name name;             // Loc, FunName, PolName
  TypePtr ty;            // Lam annotation (may be null), Omega, Pack witness, TApp argument
  TypePtr ty2;           // Pack "as" annotation
  TermPtr m, n, k;       // children; If uses all three
  bool let_sugar = false;  // App(Lam) printed as let/sequence
};

TermPtr t_unitv();
TermPtr t_lit(long n);
TermPtr t_varref(std::string sym);
TermPtr t_locref(Name l);
TermPtr t_lam(std::string sym, TypePtr ann, TermPtr body);
TermPtr t_tlam(uint32_t binder, std::string label, TermPtr body);
TermPtr t_pack(TypePtr witness, TermPtr body, TypePtr as_ty);
TermPtr t_pairv(TermPtr a, TermPtr b);
TermPtr t_app(TermPtr f, TermPtr arg);
TermPtr t_let(std::string sym, TermPtr bound, TermPtr body);  // App(Lam) with sugar flag
TermPtr t_seq(TermPtr first, TermPtr second);
TermPtr t_tapp(TermPtr f, TypePtr arg);
TermPtr t_op(OpKind op, TermPtr a, TermPtr b);
TermPtr t_if(TermPtr g, TermPtr thn, TermPtr els);
TermPtr t_proj(int idx, TermPtr m);
TermPtr t_omega(TypePtr ty);
TermPtr t_refalloc(TermPtr m);
TermPtr t_deref(TermPtr m);
TermPtr t_assign(TermPtr dst, TermPtr src);
TermPtr t_refeq(TermPtr a, TermPtr b);
TermPtr t_unpack(TermPtr pkg, uint32_t tybinder, std::string tylabel, std::string sym, TermPtr body);
TermPtr t_funname(Name f);
TermPtr t_polname(Name p);
TermPtr t_hole();

bool is_value(const TermPtr& t);

// Alpha-aware comparison (term variables and bound type variables).
int term_cmp(const TermPtr& a, const TermPtr& b);
bool term_equal(const TermPtr& a, const TermPtr& b);

void collect_term_support(const TermPtr& t, NameSet& out);
NameSet support(const TermPtr& t);
NameSet support(const TypePtr& t);
NameSet filter_kind(const NameSet& s, NameKind k);

TermPtr permute_term(const Perm& p, const TermPtr& t);

// Capture-avoiding substitutions.
TermPtr subst_var(const TermPtr& m, const std::string& x, const TermPtr& v);
TermPtr subst_tyvar_term(const TermPtr& m, uint32_t var, const TypePtr& image);

// Environment application Z{delta}: recursively applies the maps until no
// domain name occurs in the result. Throws on cyclic environments.
struct SubstEnv {
  std::map<Name, TermPtr> vals;       // Fun/Pol name constants -> values
  std::map<uint32_t, TypePtr> tys;    // type variables -> types
  bool empty() const { return vals.empty() && tys.empty(); }
};
TermPtr apply_env(const TermPtr& m, const SubstEnv& env);
TypePtr apply_env(const TypePtr& t, const SubstEnv& env);
TermPtr apply_env_once(const TermPtr& m, const SubstEnv& env);  // single parallel pass

// Evaluation contexts are terms with exactly one Hole.
TermPtr plug(const TermPtr& ctx, const TermPtr& m);
bool has_hole(const TermPtr& t);
// Splits a non-value term into (context, redex-position subterm).
std::optional<std::pair<TermPtr, TermPtr>> decompose(const TermPtr& m);

// ---- Abstract values ----

struct AbsVal;
using AbsPtr = std::shared_ptr<const AbsVal>;

struct AbsVal {
  enum K : uint8_t { Unit, Int, Loc, Fun, Pol, TyVar, Pair } k = Unit;
  long n = 0;
  Name name;
  AbsPtr a, b;
};

AbsPtr av_unit();
AbsPtr av_int(long n);
AbsPtr av_name(const Name& n);  // Loc, Fun, Pol or TyVar by kind
AbsPtr av_pair(AbsPtr a, AbsPtr b);

int abs_cmp(const AbsPtr& a, const AbsPtr& b);
bool abs_equal(const AbsPtr& a, const AbsPtr& b);
void collect_abs_support(const AbsPtr& v, NameSet& out);
AbsPtr permute_abs(const Perm& p, const AbsPtr& v);
TermPtr abs_to_term(const AbsPtr& v);
AbsPtr apply_env_abs(const AbsPtr& v, const SubstEnv& env);

// ---- Shared aliases ----

using Store = std::map<uint32_t, TermPtr>;     // concrete stores
using AbsStore = std::map<uint32_t, AbsPtr>;   // abstract stores
using Phi = std::map<uint32_t, TypeSet>;       // typing functions
using Rho = std::map<Name, AbsPtr>;            // value disclosures

enum class Polarity : uint8_t { O, P };
inline Polarity dual(Polarity p) { return p == Polarity::O ? Polarity::P : Polarity::O; }
using Lambda = std::vector<std::pair<Name, Polarity>>;

std::optional<Polarity> lambda_owner(const Lambda& l, const Name& n);
bool lambda_has(const Lambda& l, const Name& n);
NameSet lambda_support(const Lambda& l);

struct GammaVal {
  TermPtr val;  // Fun/Pol names
  TypePtr ty;   // TVar names
};
using Gamma = std::map<Name, GammaVal>;

SubstEnv env_of_gamma(const Gamma& g);
void phi_insert(Phi& phi, uint32_t loc, const TypePtr& ty);
bool phi_union(Phi& into, const Phi& more);  // returns false on nothing new
NameSet phi_support(const Phi& phi);
NameSet store_support(const Store& s);
NameSet abs_store_support(const AbsStore& s);
NameSet rho_support(const Rho& r);
NameSet gamma_support(const Gamma& g);

}  // namespace refsem
