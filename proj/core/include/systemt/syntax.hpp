#ifndef SYSTEMT_SYNTAX_HPP
#define SYSTEMT_SYNTAX_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "systemt/errors.hpp"
#include "systemt/nat.hpp"

namespace systemt {

enum class TypeKind { Nat, Seq, Arrow };

/// Simple types over Nat and the primitive finite-sequence type Seq.
/// Immutable, cheap to copy; equality is structural.
class Type {
 public:
  static Type nat();
  static Type seq();
  static Type arrow(Type dom, Type cod);

  TypeKind kind() const { return node_->kind; }
  bool is_nat() const { return node_->kind == TypeKind::Nat; }
  bool is_seq() const { return node_->kind == TypeKind::Seq; }
  bool is_arrow() const { return node_->kind == TypeKind::Arrow; }

  Type dom() const;  // Arrow only
  Type cod() const;  // Arrow only

  bool operator==(const Type& other) const;
  bool operator!=(const Type& other) const { return !(*this == other); }

  bool contains_seq() const;

  /// "Nat", "Nat->Nat", "(Nat->Nat)->Nat"; arrows right-associative.
  std::string to_string() const;

 private:
  struct Node {
    TypeKind kind;
    std::shared_ptr<const Node> dom;
    std::shared_ptr<const Node> cod;
  };
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class TermKind { Var, Lam, App, Zero, Succ, Rec, Omega, EmptySeq, Snoc, Len, Get };

/// Fast-path hint for the evaluator: closed generated terms whose meaning is
/// a fixed arithmetic function can be tagged so evaluation computes them
/// natively. Hints never affect parsing, printing, typing or equality, and
/// reparsed terms carry none.
enum class NativeOp { Sg, Pred, Monus, Plus, Times, NbhEta, NbhEtaSucc, NbhKe, NbhAt };

/// Object-language terms. Variables are de Bruijn levels: Var(i) refers to
/// the i-th entry of the context, counted from the outermost binder.
/// Immutable with shared subterms; equality is structural.
class Term {
 public:
  static Term var(std::size_t level);
  static Term lam(Type dom, Term body);
  static Term lam(Type dom, Term body, NativeOp hint);
  static Term app(Term fn, Term arg);
  static Term zero();
  static Term succ();
  static Term rec(Type at);
  static Term omega();
  static Term empty_seq();
  static Term snoc_c();
  static Term len_c();
  static Term get_c();

  TermKind kind() const;

  std::size_t var_level() const;
  const Type& lam_dom() const;
  const Term& lam_body() const;
  const Term& app_fn() const;
  const Term& app_arg() const;
  const Type& rec_type() const;
  std::optional<NativeOp> native_hint() const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term constant(TermKind k);
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  TermKind kind;
  std::size_t level = 0;
  std::optional<Type> ty;    // Lam domain or Rec instance type
  std::optional<Term> sub1;  // Lam body or App fn
  std::optional<Term> sub2;  // App arg
  std::optional<NativeOp> hint;
};

inline TermKind Term::kind() const { return node_->kind; }

/// Typing context: ordered list of types, indexed by de Bruijn level.
using Context = std::vector<Type>;

/// Parses the concrete syntax. Numerals desugar to Succ^n 0.
/// Throws SyntaxError (with line/column) or UnknownIdentifier.
Term parse_term(const std::string& text);

/// Prints with generated binder names x0, x1, ... (x<level>).
/// parse_term(pretty(t)) is de-Bruijn-equal to t for well-scoped t.
std::string pretty(const Term& t);

/// Returns the unique type of t in ctx.
/// Throws TypeMismatch or UnboundVariable.
Type typecheck(const Context& ctx, const Term& t);

bool well_scoped(const Context& ctx, const Term& t);
bool contains_omega(const Term& t);

/// True if the term mentions Seq anywhere: a Seq constant, or a Seq inside
/// a Lam or Rec type annotation.
bool mentions_seq(const Term& t);

std::size_t term_size(const Term& t);
std::size_t term_depth(const Term& t);

/// Substitutes a closed term for the outermost context entry (level 0):
/// body must be well-scoped in [rho, ...locals]; the result is well-scoped
/// in the context without that entry. Precondition: `closed` has no free
/// variables.
Term substitute_closed(const Term& body, const Term& closed);

/// Succ^n 0.
Term nat_literal(const Nat& n);
Term nat_literal(std::uint64_t n);

/// snoc (snoc ... empty x0 ...) xn — the evident Seq literal.
Term seq_literal(const Seq& a);

}  // namespace systemt

#endif
