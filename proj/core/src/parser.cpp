#include "refsem/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace refsem {

// ---------------------------------------------------------------- printing

namespace {

struct Scope {
  std::vector<std::pair<uint32_t, std::string>> stack;

  std::string lookup(uint32_t id) const {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      if (it->first == id) return it->second;
    return {};
  }
  bool taken(const std::string& s) const {
    for (const auto& [_, n] : stack)
      if (n == s) return true;
    return false;
  }
  std::string push(uint32_t id, const std::string& want) {
    std::string base = want.empty() ? "a" : want;
    std::string name = base;
    while (taken(name)) name += "'";
    stack.emplace_back(id, name);
    return name;
  }
  void pop() { stack.pop_back(); }
};

void pr_type(std::ostringstream& o, const TypePtr& t, int level, Scope& sc);

std::string tyvar_text(uint32_t id, const Scope& sc) {
  std::string bound = sc.lookup(id);
  if (!bound.empty()) return bound;
  if (id >= kBinderBase) return "b<" + std::to_string(id - kBinderBase) + ">";
  return "a<" + std::to_string(id) + ">";
}

// levels: 0 top (quantifiers, arrow), 1 product, 2 ref, 3 atom
void pr_type(std::ostringstream& o, const TypePtr& t, int level, Scope& sc) {
  if (!t) {
    o << "?";
    return;
  }
  switch (t->kind) {
    case TypeKind::Unit: o << "unit"; return;
    case TypeKind::Int: o << "int"; return;
    case TypeKind::Var: o << tyvar_text(t->var, sc); return;
    case TypeKind::Ref:
      if (level > 2) o << "(";
      o << "ref ";
      pr_type(o, t->a, 3, sc);
      if (level > 2) o << ")";
      return;
    case TypeKind::Prod: {
      if (level > 1) o << "(";
      pr_type(o, t->a, 1, sc);
      o << " * ";
      pr_type(o, t->b, 2, sc);
      if (level > 1) o << ")";
      return;
    }
    case TypeKind::Arrow: {
      if (level > 0) o << "(";
      pr_type(o, t->a, 1, sc);
      o << " -> ";
      pr_type(o, t->b, 0, sc);
      if (level > 0) o << ")";
      return;
    }
    case TypeKind::Forall:
    case TypeKind::Exists: {
      if (level > 0) o << "(";
      std::string name = sc.push(t->var, t->label);
      o << (t->kind == TypeKind::Forall ? "forall " : "exists ") << name << ". ";
      pr_type(o, t->a, 0, sc);
      sc.pop();
      if (level > 0) o << ")";
      return;
    }
  }
}

std::string atomic_type_text(const TypePtr& t) {
  Scope sc;
  std::ostringstream o;
  pr_type(o, t, 3, sc);
  return o.str();
}

std::string name_text(const Name& n) {
  std::ostringstream o;
  o << kind_letter(n.kind) << "<" << n.id << ">";
  if (n.kind == NameKind::Fun) o << ":" << atomic_type_text(n.fun_tag);
  if (n.kind == NameKind::Pol) o << ":a<" << n.pol_tag << ">";
  return o.str();
}

// term levels: 0 statement, 1 seq-left, 2 assign-left, 3 compare, 4 additive,
// 5 multiplicative, 6 application, 7 prefix, 8 atom
void pr_term(std::ostringstream& o, const TermPtr& t, int level, Scope& sc);

void pr_paren(std::ostringstream& o, const TermPtr& t, int level, int mine, Scope& sc,
              const std::function<void()>& body) {
  if (level > mine) o << "(";
  body();
  if (level > mine) o << ")";
}

void pr_term(std::ostringstream& o, const TermPtr& t, int level, Scope& sc) {
  if (!t) {
    o << "?";
    return;
  }
  switch (t->kind) {
    case TermKind::Unit: o << "()"; return;
    case TermKind::Lit:
      if (t->lit < 0 && level > 7) o << "(" << t->lit << ")";
      else o << t->lit;
      return;
    case TermKind::Var: o << t->sym; return;
    case TermKind::Loc: o << name_text(t->name); return;
    case TermKind::FunName: o << name_text(t->name); return;
    case TermKind::PolName: o << name_text(t->name); return;
    case TermKind::Hole: o << "@"; return;
    case TermKind::Lam:
      pr_paren(o, t, level, 0, sc, [&] {
        o << "fun (" << t->sym;
        if (t->ty) {
          o << ": ";
          pr_type(o, t->ty, 0, sc);
        }
        o << ") -> ";
        pr_term(o, t->m, 0, sc);
      });
      return;
    case TermKind::TLam:
      pr_paren(o, t, level, 0, sc, [&] {
        std::string name = sc.push(t->tyvar, t->tylabel);
        o << "tfun " << name << " -> ";
        pr_term(o, t->m, 0, sc);
        sc.pop();
      });
      return;
    case TermKind::Pack:
      pr_paren(o, t, level, 0, sc, [&] {
        o << "pack (";
        pr_type(o, t->ty, 0, sc);
        o << ", ";
        pr_term(o, t->m, 0, sc);
        o << ") as ";
        pr_type(o, t->ty2, 0, sc);
      });
      return;
    case TermKind::Pair:
      o << "(";
      pr_term(o, t->m, 0, sc);
      o << ", ";
      pr_term(o, t->n, 0, sc);
      o << ")";
      return;
    case TermKind::App:
      if (t->let_sugar && t->m && t->m->kind == TermKind::Lam && !t->m->ty) {
        if (t->m->sym == "_") {
          pr_paren(o, t, level, 0, sc, [&] {
            pr_term(o, t->n, 1, sc);
            o << "; ";
            pr_term(o, t->m->m, 0, sc);
          });
        } else {
          pr_paren(o, t, level, 0, sc, [&] {
            o << "let " << t->m->sym << " = ";
            pr_term(o, t->n, 1, sc);
            o << " in ";
            pr_term(o, t->m->m, 0, sc);
          });
        }
        return;
      }
      pr_paren(o, t, level, 6, sc, [&] {
        pr_term(o, t->m, 6, sc);
        o << " ";
        pr_term(o, t->n, 7, sc);
      });
      return;
    case TermKind::TApp:
      pr_paren(o, t, level, 6, sc, [&] {
        pr_term(o, t->m, 6, sc);
        o << " [";
        pr_type(o, t->ty, 0, sc);
        o << "]";
      });
      return;
    case TermKind::Op: {
      const char* sym = t->op == OpKind::Add ? "+" : t->op == OpKind::Sub ? "-"
                        : t->op == OpKind::Mul ? "*" : "=";
      int mine = t->op == OpKind::Mul ? 5 : t->op == OpKind::Eq ? 3 : 4;
      pr_paren(o, t, level, mine, sc, [&] {
        pr_term(o, t->m, mine, sc);
        o << " " << sym << " ";
        pr_term(o, t->n, mine + 1, sc);
      });
      return;
    }
    case TermKind::If:
      pr_paren(o, t, level, 0, sc, [&] {
        o << "if ";
        pr_term(o, t->m, 1, sc);
        o << " then ";
        pr_term(o, t->n, 1, sc);
        o << " else ";
        pr_term(o, t->k, 0, sc);
      });
      return;
    case TermKind::Proj:
      pr_paren(o, t, level, 7, sc, [&] {
        o << (t->idx == 1 ? "fst " : "snd ");
        pr_term(o, t->m, 7, sc);
      });
      return;
    case TermKind::Omega:
      o << "omega[";
      pr_type(o, t->ty, 0, sc);
      o << "]";
      return;
    case TermKind::RefAlloc:
      pr_paren(o, t, level, 7, sc, [&] {
        o << "ref ";
        pr_term(o, t->m, 7, sc);
      });
      return;
    case TermKind::Deref:
      pr_paren(o, t, level, 7, sc, [&] {
        o << "!";
        pr_term(o, t->m, 7, sc);
      });
      return;
    case TermKind::Assign:
      pr_paren(o, t, level, 2, sc, [&] {
        pr_term(o, t->m, 3, sc);
        o << " := ";
        pr_term(o, t->n, 2, sc);
      });
      return;
    case TermKind::RefEq:
      pr_paren(o, t, level, 3, sc, [&] {
        pr_term(o, t->m, 4, sc);
        o << " == ";
        pr_term(o, t->n, 4, sc);
      });
      return;
    case TermKind::Unpack:
      pr_paren(o, t, level, 0, sc, [&] {
        o << "unpack ";
        pr_term(o, t->m, 1, sc);
        std::string name = sc.push(t->tyvar, t->tylabel);
        o << " as (" << name << ", " << t->sym << ") in ";
        pr_term(o, t->n, 0, sc);
        sc.pop();
      });
      return;
  }
}

}  // namespace

std::string print_type(const TypePtr& t) {
  Scope sc;
  std::ostringstream o;
  pr_type(o, t, 0, sc);
  return o.str();
}

std::string print_term(const TermPtr& t) {
  Scope sc;
  std::ostringstream o;
  pr_term(o, t, 0, sc);
  return o.str();
}

std::string print_name(const Name& n) { return name_text(n); }

std::string print_abs(const AbsPtr& v) {
  if (!v) return "?";
  switch (v->k) {
    case AbsVal::Unit: return "()";
    case AbsVal::Int: return std::to_string(v->n);
    case AbsVal::Pair: return "(" + print_abs(v->a) + ", " + print_abs(v->b) + ")";
    case AbsVal::TyVar: return "a<" + std::to_string(v->name.id) + ">";
    default: return name_text(v->name);
  }
}

std::string print_store(const Store& s) {
  std::ostringstream o;
  o << "{";
  bool first = true;
  for (const auto& [l, v] : s) {
    if (!first) o << ", ";
    first = false;
    o << "l<" << l << "> = " << print_term(v);
  }
  o << "}";
  return o.str();
}

std::string print_abs_store(const AbsStore& s) {
  std::ostringstream o;
  o << "{";
  bool first = true;
  for (const auto& [l, v] : s) {
    if (!first) o << ", ";
    first = false;
    o << "l<" << l << ">=" << print_abs(v);
  }
  o << "}";
  return o.str();
}

std::string print_phi(const Phi& phi) {
  std::ostringstream o;
  o << "{";
  bool first = true;
  for (const auto& [l, ts] : phi) {
    if (!first) o << ", ";
    first = false;
    o << "l<" << l << "> = {";
    bool f2 = true;
    for (const auto& t : ts) {
      if (!f2) o << ", ";
      f2 = false;
      o << print_type(t);
    }
    o << "}";
  }
  o << "}";
  return o.str();
}

std::string print_rho(const Rho& rho) {
  std::ostringstream o;
  o << "[";
  bool first = true;
  for (const auto& [p, v] : rho) {
    if (!first) o << ", ";
    first = false;
    o << name_text(p) << "=" << print_abs(v);
  }
  o << "]";
  return o.str();
}

// ---------------------------------------------------------------- lexing

namespace {

enum class Tok {
  End, Ident, Int, NameTok,  // NameTok: l<i>, f<i>, p<i>, a<i>, b<i>
  LParen, RParen, LBrack, RBrack, LBrace, RBrace,
  Comma, Semi, Colon, Dot, Arrow, SquigArrow, Assign, EqEq, Eq,
  Plus, Minus, Star, Bang, At, Pipe
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long num = 0;
  NameKind name_kind = NameKind::Loc;
  uint32_t name_id = 0;
  SourceSpan span;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  explicit Lexer(const std::string& s) : src(s) {}

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        break;
      }
    }
  }

  Token next() {
    skip_ws();
    Token t;
    t.span.start = pos;
    if (pos >= src.size()) {
      t.kind = Tok::End;
      t.span.end = pos;
      return t;
    }
    char c = src[pos];
    auto two = [&](char a, char b) {
      return c == a && pos + 1 < src.size() && src[pos + 1] == b;
    };
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
      t.kind = Tok::Int;
      t.num = std::stol(src.substr(start, pos - start));
      t.span.end = pos;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
              src[pos] == '\''))
        ++pos;
      std::string word = src.substr(start, pos - start);
      // name literal forms: l<i>, f<i>, p<i>, a<i>, b<i>
      if (word.size() == 1 && pos < src.size() && src[pos] == '<' &&
          (word == "l" || word == "f" || word == "p" || word == "a" || word == "b")) {
        size_t save = pos;
        ++pos;
        size_t dstart = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos > dstart && pos < src.size() && src[pos] == '>') {
          t.kind = Tok::NameTok;
          t.name_id = static_cast<uint32_t>(std::stoul(src.substr(dstart, pos - dstart)));
          ++pos;
          if (word == "l") t.name_kind = NameKind::Loc;
          else if (word == "f") t.name_kind = NameKind::Fun;
          else if (word == "p") t.name_kind = NameKind::Pol;
          else t.name_kind = NameKind::TVar;
          if (word == "b") t.name_id += kBinderBase;
          t.span.end = pos;
          return t;
        }
        pos = save;
      }
      t.kind = Tok::Ident;
      t.text = word;
      t.span.end = pos;
      return t;
    }
    if (two('-', '>')) { pos += 2; t.kind = Tok::Arrow; }
    else if (two('~', '>')) { pos += 2; t.kind = Tok::SquigArrow; }
    else if (two(':', '=')) { pos += 2; t.kind = Tok::Assign; }
    else if (two('=', '=')) { pos += 2; t.kind = Tok::EqEq; }
    else {
      ++pos;
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '[': t.kind = Tok::LBrack; break;
        case ']': t.kind = Tok::RBrack; break;
        case '{': t.kind = Tok::LBrace; break;
        case '}': t.kind = Tok::RBrace; break;
        case ',': t.kind = Tok::Comma; break;
        case ';': t.kind = Tok::Semi; break;
        case ':': t.kind = Tok::Colon; break;
        case '.': t.kind = Tok::Dot; break;
        case '=': t.kind = Tok::Eq; break;
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '!': t.kind = Tok::Bang; break;
        case '@': t.kind = Tok::At; break;
        case '|': t.kind = Tok::Pipe; break;
        default:
          throw ParseError("unexpected character '" + std::string(1, c) + "'",
                           {t.span.start, pos});
      }
    }
    t.span.end = pos;
    return t;
  }
};

struct Parser {
  std::vector<Token> toks;
  size_t at = 0;
  std::vector<std::pair<std::string, uint32_t>> tyscope;  // bound tyvars

  explicit Parser(const std::string& src) {
    Lexer lx(src);
    for (;;) {
      Token t = lx.next();
      toks.push_back(t);
      if (t.kind == Tok::End) break;
    }
  }

  const Token& peek(size_t k = 0) const {
    size_t i = at + k;
    return i < toks.size() ? toks[i] : toks.back();
  }
  Token take() { return toks[at < toks.size() - 1 ? at++ : at]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      take();
      return true;
    }
    return false;
  }
  bool accept_word(const char* w) {
    if (peek().kind == Tok::Ident && peek().text == w) {
      take();
      return true;
    }
    return false;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) throw ParseError(std::string("expected ") + what, peek().span);
  }
  void expect_word(const char* w) {
    if (!accept_word(w)) throw ParseError(std::string("expected '") + w + "'", peek().span);
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, peek().span); }

  uint32_t lookup_tyvar(const std::string& s) {
    for (auto it = tyscope.rbegin(); it != tyscope.rend(); ++it)
      if (it->first == s) return it->second;
    fail("unbound type variable '" + s + "' (free variables are written a<i>)");
  }

  // ------------------------------ types

  TypePtr ty() {
    if (peek().kind == Tok::Ident && (peek().text == "forall" || peek().text == "exists")) {
      bool uni = take().text == "forall";
      if (peek().kind != Tok::Ident) fail("expected type variable binder");
      std::string label = take().text;
      expect(Tok::Dot, "'.'");
      uint32_t id = fresh_binder_id();
      tyscope.emplace_back(label, id);
      TypePtr body = ty();
      tyscope.pop_back();
      return uni ? t_forall(id, label, body) : t_exists(id, label, body);
    }
    TypePtr left = ty_prod();
    if (accept(Tok::Arrow)) return t_arrow(left, ty());
    return left;
  }

  TypePtr ty_prod() {
    TypePtr left = ty_atom();
    while (peek().kind == Tok::Star) {
      take();
      left = t_prod(left, ty_atom());
    }
    return left;
  }

  TypePtr ty_atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      take();
      TypePtr inner = ty();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::NameTok && t.name_kind == NameKind::TVar) {
      take();
      return t_var(t.name_id);
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "unit") { take(); return t_unit(); }
      if (t.text == "int") { take(); return t_int(); }
      if (t.text == "ref") { take(); return t_ref(ty_atom()); }
      if (t.text == "forall" || t.text == "exists") return ty();
      std::string word = take().text;
      return t_var(lookup_tyvar(word));
    }
    fail("expected a type");
  }

  // ------------------------------ terms

  TermPtr term() { return tm_seq(); }

  TermPtr tm_seq() {
    TermPtr left = tm_assign();
    if (accept(Tok::Semi)) return t_seq(left, tm_seq());
    return left;
  }

  TermPtr tm_assign() {
    TermPtr left = tm_cmp();
    if (accept(Tok::Assign)) return t_assign(left, tm_assign());
    return left;
  }

  TermPtr tm_cmp() {
    TermPtr left = tm_add();
    if (accept(Tok::EqEq)) return t_refeq(left, tm_add());
    if (accept(Tok::Eq)) return t_op(OpKind::Eq, left, tm_add());
    return left;
  }

  TermPtr tm_add() {
    TermPtr left = tm_mul();
    for (;;) {
      if (accept(Tok::Plus)) left = t_op(OpKind::Add, left, tm_mul());
      else if (accept(Tok::Minus)) left = t_op(OpKind::Sub, left, tm_mul());
      else return left;
    }
  }

  TermPtr tm_mul() {
    TermPtr left = tm_app();
    while (peek().kind == Tok::Star) {
      take();
      left = t_op(OpKind::Mul, left, tm_app());
    }
    return left;
  }

  bool starts_prefix() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Bang:
      case Tok::LParen:
      case Tok::Int:
      case Tok::NameTok:
      case Tok::At:
        return true;
      case Tok::Minus:
        return peek(1).kind == Tok::Int;
      case Tok::Ident:
        // identifiers that begin a statement-like or atomic term
        return t.text != "then" && t.text != "else" && t.text != "in" && t.text != "as" &&
               t.text != "int" && t.text != "forall" && t.text != "exists";
      default:
        return false;
    }
  }

  TermPtr tm_app() {
    TermPtr left = tm_prefix();
    for (;;) {
      if (peek().kind == Tok::LBrack) {
        take();
        TypePtr arg = ty();
        expect(Tok::RBrack, "']'");
        left = t_tapp(left, arg);
      } else if (starts_prefix()) {
        left = t_app(left, tm_prefix());
      } else {
        return left;
      }
    }
  }

  TermPtr tm_prefix() {
    if (accept(Tok::Bang)) return t_deref(tm_prefix());
    if (peek().kind == Tok::Ident) {
      if (peek().text == "fst") { take(); return t_proj(1, tm_prefix()); }
      if (peek().text == "snd") { take(); return t_proj(2, tm_prefix()); }
      if (peek().text == "ref") { take(); return t_refalloc(tm_prefix()); }
    }
    return tm_atom();
  }

  TermPtr tm_atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      take();
      if (accept(Tok::RParen)) return t_unitv();
      TermPtr first = term();
      if (accept(Tok::Comma)) {
        TermPtr second = term();
        expect(Tok::RParen, "')'");
        return t_pairv(first, second);
      }
      expect(Tok::RParen, "')'");
      return first;
    }
    if (t.kind == Tok::Int) {
      take();
      return t_lit(t.num);
    }
    if (t.kind == Tok::Minus && peek(1).kind == Tok::Int) {
      take();
      return t_lit(-take().num);
    }
    if (t.kind == Tok::At) {
      take();
      return t_hole();
    }
    if (t.kind == Tok::NameTok) {
      Name n = name_tok();
      switch (n.kind) {
        case NameKind::Loc: return t_locref(n);
        case NameKind::Fun: return t_funname(n);
        case NameKind::Pol: return t_polname(n);
        default: fail("a type variable is not a term");
      }
    }
    if (t.kind == Tok::Ident) {
      const std::string& w = t.text;
      if (w == "fun") {
        take();
        expect(Tok::LParen, "'('");
        if (peek().kind != Tok::Ident) fail("expected binder");
        std::string x = take().text;
        TypePtr ann;
        if (accept(Tok::Colon)) ann = ty();
        expect(Tok::RParen, "')'");
        expect(Tok::Arrow, "'->'");
        return t_lam(x, ann, term());
      }
      if (w == "tfun") {
        take();
        if (peek().kind != Tok::Ident) fail("expected type binder");
        std::string label = take().text;
        expect(Tok::Arrow, "'->'");
        uint32_t id = fresh_binder_id();
        tyscope.emplace_back(label, id);
        TermPtr body = term();
        tyscope.pop_back();
        return t_tlam(id, label, body);
      }
      if (w == "if") {
        take();
        TermPtr g = tm_seq();
        expect_word("then");
        TermPtr a = tm_seq();
        expect_word("else");
        TermPtr b = term();
        return t_if(g, a, b);
      }
      if (w == "let") {
        take();
        if (peek().kind != Tok::Ident) fail("expected binder");
        std::string x = take().text;
        expect(Tok::Eq, "'='");
        TermPtr bound = tm_seq();
        expect_word("in");
        TermPtr body = term();
        return t_let(x, bound, body);
      }
      if (w == "pack") {
        take();
        expect(Tok::LParen, "'('");
        TypePtr witness = ty();
        expect(Tok::Comma, "','");
        TermPtr body = term();
        expect(Tok::RParen, "')'");
        expect_word("as");
        TypePtr as_ty = ty();
        return t_pack(witness, body, as_ty);
      }
      if (w == "unpack") {
        take();
        TermPtr pkg = tm_seq();
        expect_word("as");
        expect(Tok::LParen, "'('");
        if (peek().kind != Tok::Ident) fail("expected type binder");
        std::string label = take().text;
        expect(Tok::Comma, "','");
        if (peek().kind != Tok::Ident) fail("expected binder");
        std::string x = take().text;
        expect(Tok::RParen, "')'");
        expect_word("in");
        uint32_t id = fresh_binder_id();
        tyscope.emplace_back(label, id);
        TermPtr body = term();
        tyscope.pop_back();
        return t_unpack(pkg, id, label, x, body);
      }
      if (w == "omega") {
        take();
        expect(Tok::LBrack, "'['");
        TypePtr ot = ty();
        expect(Tok::RBrack, "']'");
        return t_omega(ot);
      }
      take();
      return t_varref(w);
    }
    fail("expected a term");
  }

  Name name_tok() {
    const Token& t = peek();
    if (t.kind != Tok::NameTok) fail("expected a name literal");
    take();
    switch (t.name_kind) {
      case NameKind::Loc:
        return Name::loc(t.name_id);
      case NameKind::TVar:
        return Name::tvar(t.name_id);
      case NameKind::Fun: {
        expect(Tok::Colon, "':' before function name type");
        TypePtr tag = ty_atom();
        return Name::fun(t.name_id, tag);
      }
      case NameKind::Pol: {
        expect(Tok::Colon, "':' before polymorphic name type");
        const Token& a = peek();
        if (a.kind != Tok::NameTok || a.name_kind != NameKind::TVar)
          fail("polymorphic name type must be a type variable a<i>");
        take();
        return Name::pol(t.name_id, a.name_id);
      }
    }
    fail("bad name token");
  }

  // ------------------------------ files

  Store store() {
    Store s;
    expect(Tok::LBrace, "'{'");
    if (accept(Tok::RBrace)) return s;
    for (;;) {
      const Token& t = peek();
      if (t.kind != Tok::NameTok || t.name_kind != NameKind::Loc) fail("expected l<i>");
      uint32_t l = take().name_id;
      expect(Tok::Eq, "'='");
      s[l] = term();
      if (accept(Tok::RBrace)) return s;
      expect(Tok::Comma, "','");
    }
  }

  Phi phi() {
    Phi p;
    expect(Tok::LBrace, "'{'");
    if (accept(Tok::RBrace)) return p;
    for (;;) {
      const Token& t = peek();
      if (t.kind != Tok::NameTok || t.name_kind != NameKind::Loc) fail("expected l<i>");
      uint32_t l = take().name_id;
      expect(Tok::Eq, "'='");
      expect(Tok::LBrace, "'{'");
      TypeSet ts;
      if (!accept(Tok::RBrace)) {
        for (;;) {
          ts.insert(ty());
          if (accept(Tok::RBrace)) break;
          expect(Tok::Comma, "','");
        }
      }
      if (ts.empty()) fail("typing function entries must be nonempty");
      p[l] = ts;
      if (accept(Tok::RBrace)) return p;
      expect(Tok::Comma, "','");
    }
  }

  Judgment judgment() {
    Judgment j;
    for (;;) {
      if (accept_word("tyvar")) {
        const Token& t = peek();
        if (t.kind != Tok::NameTok || t.name_kind != NameKind::TVar) fail("expected a<i>");
        j.delta.push_back(take().name_id);
        continue;
      }
      if (accept_word("loc")) {
        const Token& t = peek();
        if (t.kind != Tok::NameTok || t.name_kind != NameKind::Loc) fail("expected l<i>");
        uint32_t l = take().name_id;
        expect(Tok::Colon, "':'");
        j.sigma.emplace_back(l, ty());
        continue;
      }
      if (accept_word("arg")) {
        if (peek().kind != Tok::Ident) fail("expected argument name");
        std::string x = take().text;
        expect(Tok::Colon, "':'");
        j.args.emplace_back(x, ty());
        continue;
      }
      break;
    }
    accept_word("term") && accept(Tok::Colon);
    j.term = term();
    if (peek().kind != Tok::End) fail("trailing input after term");
    return j;
  }
};

}  // namespace

TypePtr parse_type(const std::string& text) {
  Parser p(text);
  TypePtr t = p.ty();
  if (p.peek().kind != Tok::End) p.fail("trailing input after type");
  return t;
}

TermPtr parse_term(const std::string& text) {
  Parser p(text);
  TermPtr t = p.term();
  if (p.peek().kind != Tok::End) p.fail("trailing input after term");
  return t;
}

Store parse_store(const std::string& text) {
  Parser p(text);
  Store s = p.store();
  if (p.peek().kind != Tok::End) p.fail("trailing input after store");
  return s;
}

Phi parse_phi(const std::string& text) {
  Parser p(text);
  Phi f = p.phi();
  if (p.peek().kind != Tok::End) p.fail("trailing input after typing function");
  return f;
}

Judgment parse_judgment(const std::string& text) {
  Parser p(text);
  return p.judgment();
}

Name parse_name(const std::string& text) {
  Parser p(text);
  Name n = p.name_tok();
  if (p.peek().kind != Tok::End) p.fail("trailing input after name");
  return n;
}

}  // namespace refsem
