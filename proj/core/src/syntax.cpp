#include "systemt/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace systemt {

// ---------------------------------------------------------------------------
// Nat helpers
// ---------------------------------------------------------------------------

std::string seq_to_string(const Seq& a) {
  std::string out = "<";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ",";
    out += a[i].str();
  }
  out += ">";
  return out;
}

Seq seq_from_string(const std::string& text) {
  Seq out;
  if (text.empty() || text == "-" || text == "<>") return out;
  std::string body = text;
  if (body.front() == '<' && body.back() == '>') body = body.substr(1, body.size() - 2);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) throw Error("empty entry in sequence literal '" + text + "'");
    if (!std::all_of(item.begin(), item.end(), ::isdigit))
      throw Error("bad sequence entry '" + item + "'");
    out.emplace_back(item);
  }
  return out;
}

bool fits_u64(const Nat& n) { return n >= 0 && n <= Nat(UINT64_MAX); }

std::uint64_t to_u64(const Nat& n) { return n.convert_to<std::uint64_t>(); }

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

Type Type::nat() {
  static const Type t{std::make_shared<const Node>(Node{TypeKind::Nat, nullptr, nullptr})};
  return t;
}

Type Type::seq() {
  static const Type t{std::make_shared<const Node>(Node{TypeKind::Seq, nullptr, nullptr})};
  return t;
}

Type Type::arrow(Type dom, Type cod) {
  return Type{std::make_shared<const Node>(Node{TypeKind::Arrow, dom.node_, cod.node_})};
}

Type Type::dom() const { return Type{node_->dom}; }

Type Type::cod() const { return Type{node_->cod}; }

bool Type::operator==(const Type& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  if (node_->kind != TypeKind::Arrow) return true;
  return Type{node_->dom} == Type{other.node_->dom} && Type{node_->cod} == Type{other.node_->cod};
}

bool Type::contains_seq() const {
  switch (node_->kind) {
    case TypeKind::Nat: return false;
    case TypeKind::Seq: return true;
    case TypeKind::Arrow: return Type{node_->dom}.contains_seq() || Type{node_->cod}.contains_seq();
  }
  return false;
}

std::string Type::to_string() const {
  switch (node_->kind) {
    case TypeKind::Nat: return "Nat";
    case TypeKind::Seq: return "Seq";
    case TypeKind::Arrow: {
      Type d{node_->dom};
      Type c{node_->cod};
      std::string ds = d.to_string();
      if (d.is_arrow()) ds = "(" + ds + ")";
      return ds + "->" + c.to_string();
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

Term Term::var(std::size_t level) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Var;
  n->level = level;
  return Term{std::move(n)};
}

Term Term::lam(Type dom, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Lam;
  n->ty = std::move(dom);
  n->sub1 = std::move(body);
  return Term{std::move(n)};
}

Term Term::lam(Type dom, Term body, NativeOp hint) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Lam;
  n->ty = std::move(dom);
  n->sub1 = std::move(body);
  n->hint = hint;
  return Term{std::move(n)};
}

Term Term::app(Term fn, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->sub1 = std::move(fn);
  n->sub2 = std::move(arg);
  return Term{std::move(n)};
}

Term Term::constant(TermKind k) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  return Term{std::move(n)};
}

Term Term::zero() {
  static const Term t = constant(TermKind::Zero);
  return t;
}
Term Term::succ() {
  static const Term t = constant(TermKind::Succ);
  return t;
}
Term Term::omega() {
  static const Term t = constant(TermKind::Omega);
  return t;
}
Term Term::empty_seq() {
  static const Term t = constant(TermKind::EmptySeq);
  return t;
}
Term Term::snoc_c() {
  static const Term t = constant(TermKind::Snoc);
  return t;
}
Term Term::len_c() {
  static const Term t = constant(TermKind::Len);
  return t;
}
Term Term::get_c() {
  static const Term t = constant(TermKind::Get);
  return t;
}

Term Term::rec(Type at) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Rec;
  n->ty = std::move(at);
  return Term{std::move(n)};
}

std::size_t Term::var_level() const { return node_->level; }
const Type& Term::lam_dom() const { return *node_->ty; }
const Term& Term::lam_body() const { return *node_->sub1; }
const Term& Term::app_fn() const { return *node_->sub1; }
const Term& Term::app_arg() const { return *node_->sub2; }
const Type& Term::rec_type() const { return *node_->ty; }
std::optional<NativeOp> Term::native_hint() const { return node_->hint; }

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case TermKind::Var: return node_->level == other.node_->level;
    case TermKind::Lam:
      return lam_dom() == other.lam_dom() && lam_body() == other.lam_body();
    case TermKind::App:
      return app_fn() == other.app_fn() && app_arg() == other.app_arg();
    case TermKind::Rec: return rec_type() == other.rec_type();
    default: return true;
  }
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok { Lambda, Ident, Numeral, Colon, Dot, Arrow, LParen, RParen, LBracket, RBracket, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string text, int l, int c) {
    out.push_back(Token{k, std::move(text), l, c});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    int l = line, co = col;
    if (c == '\\') {
      push(Tok::Lambda, "\\", l, co);
      ++i;
      ++col;
      continue;
    }
    if (c == ':') {
      push(Tok::Colon, ":", l, co);
      ++i;
      ++col;
      continue;
    }
    if (c == '.') {
      push(Tok::Dot, ".", l, co);
      ++i;
      ++col;
      continue;
    }
    if (c == '(') {
      push(Tok::LParen, "(", l, co);
      ++i;
      ++col;
      continue;
    }
    if (c == ')') {
      push(Tok::RParen, ")", l, co);
      ++i;
      ++col;
      continue;
    }
    if (c == '[') {
      push(Tok::LBracket, "[", l, co);
      ++i;
      ++col;
      continue;
    }
    if (c == ']') {
      push(Tok::RBracket, "]", l, co);
      ++i;
      ++col;
      continue;
    }
    if (c == '-') {
      if (i + 1 < src.size() && src[i + 1] == '>') {
        push(Tok::Arrow, "->", l, co);
        i += 2;
        col += 2;
        continue;
      }
      throw SyntaxError("stray '-'", l, co);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        num += src[i];
        ++i;
        ++col;
      }
      push(Tok::Numeral, num, l, co);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        id += src[i];
        ++i;
        ++col;
      }
      push(Tok::Ident, id, l, co);
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", l, co);
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

constexpr std::uint64_t kMaxNumeral = 1u << 20;

struct Parser {
  const std::vector<Token>& toks;
  std::size_t pos = 0;
  std::vector<std::string> binders;  // binder at index i has level i

  const Token& peek() const { return toks[pos]; }
  Token take() { return toks[pos++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + " (got '" + (peek().kind == Tok::End ? "<eof>" : peek().text) + "')",
                      peek().line, peek().col);
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos;
  }

  Type parse_type() {
    Type lhs = parse_type_atom();
    if (peek().kind == Tok::Arrow) {
      take();
      return Type::arrow(lhs, parse_type());
    }
    return lhs;
  }

  Type parse_type_atom() {
    if (peek().kind == Tok::LParen) {
      take();
      Type t = parse_type();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (peek().kind == Tok::Ident) {
      Token t = take();
      if (t.text == "Nat") return Type::nat();
      if (t.text == "Seq") return Type::seq();
      throw SyntaxError("expected a type, found '" + t.text + "'", t.line, t.col);
    }
    fail("expected a type");
  }

  Term parse_term() {
    if (peek().kind == Tok::Lambda) {
      take();
      if (peek().kind != Tok::Ident) fail("expected binder name after '\\'");
      Token name = take();
      if (is_reserved(name.text))
        throw SyntaxError("reserved word '" + name.text + "' cannot be a binder", name.line,
                          name.col);
      expect(Tok::Colon, "':'");
      Type dom = parse_type();
      expect(Tok::Dot, "'.'");
      binders.push_back(name.text);
      Term body = parse_term();
      binders.pop_back();
      return Term::lam(dom, body);
    }
    return parse_appseq();
  }

  Term parse_appseq() {
    Term head = parse_atom();
    while (starts_atom(peek().kind)) {
      head = Term::app(head, parse_atom());
    }
    return head;
  }

  static bool starts_atom(Tok k) {
    return k == Tok::Ident || k == Tok::Numeral || k == Tok::LParen;
  }

  static bool is_reserved(const std::string& s) {
    return s == "Succ" || s == "Rec" || s == "Omega" || s == "empty" || s == "snoc" ||
           s == "len" || s == "get" || s == "Nat" || s == "Seq";
  }

  Term parse_atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      take();
      Term inner = parse_term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Numeral) {
      Token num = take();
      Nat n(num.text);
      if (n > kMaxNumeral)
        throw SyntaxError("numeral too large to desugar to Succ^n 0", num.line, num.col);
      return nat_literal(n);
    }
    if (t.kind == Tok::Ident) {
      Token id = take();
      if (id.text == "Succ") return Term::succ();
      if (id.text == "Omega") return Term::omega();
      if (id.text == "empty") return Term::empty_seq();
      if (id.text == "snoc") return Term::snoc_c();
      if (id.text == "len") return Term::len_c();
      if (id.text == "get") return Term::get_c();
      if (id.text == "Rec") {
        expect(Tok::LBracket, "'[' after Rec");
        Type at = parse_type();
        expect(Tok::RBracket, "']'");
        return Term::rec(at);
      }
      // innermost binder wins on shadowing
      for (std::size_t i = binders.size(); i-- > 0;) {
        if (binders[i] == id.text) return Term::var(i);
      }
      throw UnknownIdentifier(id.text, id.line, id.col);
    }
    fail("expected a term");
  }
};

}  // namespace

Term parse_term(const std::string& text) {
  auto toks = lex(text);
  Parser p{toks, 0, {}};
  Term t = p.parse_term();
  if (p.peek().kind != Tok::End) p.fail("trailing input");
  return t;
}

// ---------------------------------------------------------------------------
// Pretty-printer
// ---------------------------------------------------------------------------

namespace {

// prec: 0 = top (lambda ok), 1 = application spine, 2 = atom position
void pp(const Term& t, std::size_t depth, int prec, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var:
      out += "x" + std::to_string(t.var_level());
      return;
    case TermKind::Lam: {
      bool paren = prec > 0;
      if (paren) out += "(";
      out += "\\x" + std::to_string(depth) + ":" + t.lam_dom().to_string() + ". ";
      pp(t.lam_body(), depth + 1, 0, out);
      if (paren) out += ")";
      return;
    }
    case TermKind::App: {
      bool paren = prec > 1;
      if (paren) out += "(";
      pp(t.app_fn(), depth, 1, out);
      out += " ";
      pp(t.app_arg(), depth, 2, out);
      if (paren) out += ")";
      return;
    }
    case TermKind::Zero: out += "0"; return;
    case TermKind::Succ: out += "Succ"; return;
    case TermKind::Rec: out += "Rec[" + t.rec_type().to_string() + "]"; return;
    case TermKind::Omega: out += "Omega"; return;
    case TermKind::EmptySeq: out += "empty"; return;
    case TermKind::Snoc: out += "snoc"; return;
    case TermKind::Len: out += "len"; return;
    case TermKind::Get: out += "get"; return;
  }
}

}  // namespace

std::string pretty(const Term& t) {
  std::string out;
  pp(t, 0, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Typechecker
// ---------------------------------------------------------------------------

namespace {

std::string describe(const Term& t) {
  std::string s = pretty(t);
  if (s.size() > 60) s = s.substr(0, 57) + "...";
  return "in " + s;
}

Type rec_constant_type(const Type& rho) {
  // rho -> (Nat -> rho -> rho) -> Nat -> rho
  Type nat = Type::nat();
  return Type::arrow(rho, Type::arrow(Type::arrow(nat, Type::arrow(rho, rho)),
                                      Type::arrow(nat, rho)));
}

Type check(Context& ctx, const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: {
      if (t.var_level() >= ctx.size()) throw UnboundVariable(t.var_level());
      return ctx[t.var_level()];
    }
    case TermKind::Lam: {
      ctx.push_back(t.lam_dom());
      Type body = check(ctx, t.lam_body());
      ctx.pop_back();
      return Type::arrow(t.lam_dom(), body);
    }
    case TermKind::App: {
      Type fn = check(ctx, t.app_fn());
      Type arg = check(ctx, t.app_arg());
      if (!fn.is_arrow())
        throw TypeMismatch("a function type", fn.to_string(), describe(t));
      if (fn.dom() != arg)
        throw TypeMismatch(fn.dom().to_string(), arg.to_string(), describe(t));
      return fn.cod();
    }
    case TermKind::Zero: return Type::nat();
    case TermKind::Succ: return Type::arrow(Type::nat(), Type::nat());
    case TermKind::Rec: return rec_constant_type(t.rec_type());
    case TermKind::Omega: return Type::arrow(Type::nat(), Type::nat());
    case TermKind::EmptySeq: return Type::seq();
    case TermKind::Snoc:
      return Type::arrow(Type::seq(), Type::arrow(Type::nat(), Type::seq()));
    case TermKind::Len: return Type::arrow(Type::seq(), Type::nat());
    case TermKind::Get:
      return Type::arrow(Type::seq(), Type::arrow(Type::nat(), Type::nat()));
  }
  throw TypeError("unreachable term kind");
}

}  // namespace

Type typecheck(const Context& ctx, const Term& t) {
  Context scratch = ctx;
  return check(scratch, t);
}

bool well_scoped(const Context& ctx, const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return t.var_level() < ctx.size();
    case TermKind::Lam: {
      Context inner = ctx;
      inner.push_back(t.lam_dom());
      return well_scoped(inner, t.lam_body());
    }
    case TermKind::App: return well_scoped(ctx, t.app_fn()) && well_scoped(ctx, t.app_arg());
    default: return true;
  }
}

bool contains_omega(const Term& t) {
  switch (t.kind()) {
    case TermKind::Omega: return true;
    case TermKind::Lam: return contains_omega(t.lam_body());
    case TermKind::App: return contains_omega(t.app_fn()) || contains_omega(t.app_arg());
    default: return false;
  }
}

bool mentions_seq(const Term& t) {
  switch (t.kind()) {
    case TermKind::EmptySeq:
    case TermKind::Snoc:
    case TermKind::Len:
    case TermKind::Get: return true;
    case TermKind::Lam: return t.lam_dom().contains_seq() || mentions_seq(t.lam_body());
    case TermKind::App: return mentions_seq(t.app_fn()) || mentions_seq(t.app_arg());
    case TermKind::Rec: return t.rec_type().contains_seq();
    default: return false;
  }
}

std::size_t term_size(const Term& t) {
  switch (t.kind()) {
    case TermKind::Lam: return 1 + term_size(t.lam_body());
    case TermKind::App: return 1 + term_size(t.app_fn()) + term_size(t.app_arg());
    default: return 1;
  }
}

std::size_t term_depth(const Term& t) {
  switch (t.kind()) {
    case TermKind::Lam: return 1 + term_depth(t.lam_body());
    case TermKind::App: return 1 + std::max(term_depth(t.app_fn()), term_depth(t.app_arg()));
    default: return 1;
  }
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {

Term shift_vars(const Term& t, std::size_t by) {
  if (by == 0) return t;
  switch (t.kind()) {
    case TermKind::Var: return Term::var(t.var_level() + by);
    case TermKind::Lam: return Term::lam(t.lam_dom(), shift_vars(t.lam_body(), by));
    case TermKind::App:
      return Term::app(shift_vars(t.app_fn(), by), shift_vars(t.app_arg(), by));
    default: return t;
  }
}

Term subst(const Term& t, const Term& closed, std::size_t depth) {
  switch (t.kind()) {
    case TermKind::Var: {
      if (t.var_level() == 0) return shift_vars(closed, depth);
      return Term::var(t.var_level() - 1);
    }
    case TermKind::Lam: return Term::lam(t.lam_dom(), subst(t.lam_body(), closed, depth + 1));
    case TermKind::App:
      return Term::app(subst(t.app_fn(), closed, depth), subst(t.app_arg(), closed, depth));
    default: return t;
  }
}

}  // namespace

Term substitute_closed(const Term& body, const Term& closed) { return subst(body, closed, 0); }

Term nat_literal(const Nat& n) {
  Term t = Term::zero();
  for (Nat i = 0; i < n; ++i) t = Term::app(Term::succ(), t);
  return t;
}

Term nat_literal(std::uint64_t n) { return nat_literal(Nat(n)); }

Term seq_literal(const Seq& a) {
  Term t = Term::empty_seq();
  for (const Nat& x : a) t = Term::app(Term::app(Term::snoc_c(), t), nat_literal(x));
  return t;
}

}  // namespace systemt
