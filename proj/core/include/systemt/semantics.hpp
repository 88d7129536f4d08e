#ifndef SYSTEMT_SEMANTICS_HPP
#define SYSTEMT_SEMANTICS_HPP

#include <functional>
#include <memory>
#include <vector>

#include "systemt/errors.hpp"
#include "systemt/syntax.hpp"

namespace systemt {

/// Interpretation of the object language in the type structure over a base
/// structure Model, which supplies
///
///   using TN = ...;              // interpretation of Nat
///   static TN eta(const Nat&);   // embed a literal result
///   static TN ke(std::function<TN(const Nat&)>, const TN&);  // Kleisli ext.
///   static TN at(const Nat&);    // read one input position
///
/// Nat maps to TN, arrows map to host functions, and the constants follow
/// the fixed table: 0 to eta(0), Succ to ke(\x. eta(x+1)), Omega to
/// gen = ke(at), Rec to its lifted recursor. Branch construction stays lazy
/// inside the Model, so interpreting a term never forces infinite work.
template <class Model>
class NonStandard {
 public:
  using TN = typename Model::TN;

  class Sem {
   public:
    using Fn = std::function<Sem(const Sem&)>;
    explicit Sem(TN base) : base_(std::make_shared<TN>(std::move(base))) {}
    explicit Sem(Fn fn) : fn_(std::make_shared<Fn>(std::move(fn))) {}

    bool is_base() const { return base_ != nullptr; }
    const TN& base() const {
      if (!base_) throw Error("semantic value is not of base type");
      return *base_;
    }
    Sem apply(const Sem& arg) const {
      if (!fn_) throw Error("semantic value is not a function");
      return (*fn_)(arg);
    }

   private:
    std::shared_ptr<TN> base_;
    std::shared_ptr<Fn> fn_;
  };

  using Env = std::vector<Sem>;

  /// Interprets a well-typed term over Nat-only types. Seq anywhere in the
  /// term raises SeqInSource.
  static Sem interpret(const Term& t, const Env& env) {
    switch (t.kind()) {
      case TermKind::Var: {
        if (t.var_level() >= env.size()) throw Error("ill-scoped variable in interpretation");
        return env[t.var_level()];
      }
      case TermKind::Lam: {
        if (t.lam_dom().contains_seq())
          throw SeqInSource("Seq-typed binder in non-standard interpretation");
        Term body = t.lam_body();
        Env captured = env;
        return Sem(typename Sem::Fn([body, captured](const Sem& x) {
          Env inner = captured;
          inner.push_back(x);
          return interpret(body, inner);
        }));
      }
      case TermKind::App:
        return interpret(t.app_fn(), env).apply(interpret(t.app_arg(), env));
      case TermKind::Zero: return Sem(Model::eta(Nat(0)));
      case TermKind::Succ:
        return Sem(typename Sem::Fn([](const Sem& x) {
          return Sem(Model::ke([](const Nat& n) { return Model::eta(Nat(n + 1)); }, x.base()));
        }));
      case TermKind::Omega: return gen();
      case TermKind::Rec: {
        if (t.rec_type().contains_seq())
          throw SeqInSource("Seq-typed Rec in non-standard interpretation");
        Type rho = t.rec_type();
        return Sem(typename Sem::Fn([rho](const Sem& u) {
          return Sem(typename Sem::Fn([rho, u](const Sem& step) {
            return Sem(typename Sem::Fn([rho, u, step](const Sem& n) {
              auto unfold = [u, step](const Nat& count) {
                Sem acc = u;
                for (Nat k = 0; k < count; ++k)
                  acc = step.apply(Sem(Model::eta(k))).apply(acc);
                return acc;
              };
              return ke_at_type(rho, unfold, n.base());
            }));
          }));
        }));
      }
      default: throw SeqInSource("Seq primitive in non-standard interpretation");
    }
  }

  /// gen — the interpretation of Omega.
  static Sem gen() {
    return Sem(typename Sem::Fn([](const Sem& x) {
      return Sem(Model::ke([](const Nat& n) { return Model::at(n); }, x.base()));
    }));
  }

  /// KE at an arbitrary Nat-only type, by recursion on the type:
  /// at Nat it is the Model's ke, at arrows KE(f)(u)(v) = KE(\x. f x v)(u).
  static Sem ke_at_type(const Type& rho, std::function<Sem(const Nat&)> f, const TN& u) {
    if (rho.is_nat())
      return Sem(Model::ke([f](const Nat& n) { return TN(f(n).base()); }, u));
    if (rho.is_seq()) throw SeqInSource("Seq under KE in non-standard interpretation");
    Type cod = rho.cod();
    return Sem(typename Sem::Fn([cod, f, u](const Sem& v) {
      return ke_at_type(cod, [f, v](const Nat& n) { return f(n).apply(v); }, u);
    }));
  }

  /// Interprets a closed, Omega-free Y : (Nat->Nat)->Nat and applies it to
  /// gen, yielding the base-type object representing Y.
  static TN of_functional(const Term& y) {
    Type expected = Type::arrow(Type::arrow(Type::nat(), Type::nat()), Type::nat());
    Type actual = typecheck({}, y);
    if (actual != expected)
      throw TypeError("expected a closed term of type (Nat->Nat)->Nat, found " +
                      actual.to_string());
    if (contains_omega(y)) throw Error("term must be Omega-free");
    if (mentions_seq(y)) throw SeqInSource("Seq is not supported by this interpretation");
    return interpret(y, {}).apply(gen()).base();
  }
};

}  // namespace systemt

#endif
