#ifndef SYSTEMT_NBHD_HPP
#define SYSTEMT_NBHD_HPP

#include <functional>
#include <memory>
#include <string>

#include "systemt/eval.hpp"
#include "systemt/syntax.hpp"

namespace systemt {

/// Handle to a neighbourhood-function candidate gamma : Seq -> Nat, backed
/// either by a closed object-language term or by a host function. Queried
/// only through query(); whether it actually satisfies the neighbourhood
/// laws is asserted by tests (see analysis), not by construction.
class NbhFn {
 public:
  using HostFn = std::function<Nat(const Seq&)>;

  static NbhFn from_host(HostFn fn, std::string label = "host");

  /// Requires a closed, Omega-free term of type Seq->Nat.
  static NbhFn from_term(Term gamma);

  Nat query(const Seq& a) const;

  bool term_backed() const;
  const Term& term() const;  // throws HostBacked when host-backed
  const std::string& label() const;

 private:
  struct Impl;
  explicit NbhFn(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Type translation: Nat maps to Seq->Nat, arrows map structurally.
/// Source types must not mention Seq (SeqInSource otherwise).
Type dagger_type(const Type& rho);

/// The generated closed combinators of the Seq->Nat model:
///   eta_term    : Nat -> Seq -> Nat            \x. \a. Succ x
///   ke_nat_term : (Nat->Seq->Nat) -> (Seq->Nat) -> Seq -> Nat
///   at_term     : Nat -> Seq -> Nat            0 when |a| <= n, else Succ a_n
/// sg, multiplication, cut-off subtraction and the length test are expanded
/// into Rec-defined arithmetic over the Seq primitives.
Term eta_term();
Term ke_nat_term();
Term at_term();

/// Fixed Rec-defined arithmetic macros used by the combinators above.
Term sg_term();
Term pred_term();
Term monus_term();
Term plus_term();
Term times_term();

/// KE at an arbitrary Nat-only source type, monomorphized by recursion on
/// the type: at Nat it is ke_nat_term(), at rho->sigma it is
/// \f. \u. \v. KE_sigma (\x. f x v) u.
Term ke_at_type(const Type& rho);

/// Term translation. Accepts terms containing Omega (translated to gen);
/// rejects any Seq in the source (SeqInSource). The result typechecks at
/// dagger_type of the source type in the translated context.
Term dagger_term(const Term& t, const Context& ctx = {});

Context dagger_context(const Context& ctx);

/// gen — the translation of Omega: KE_Nat (\x. At x).
Term gen_term();

/// Emits the neighbourhood-function term gamma = dagger(Y Omega) of a
/// closed, Omega-free Y : (Nat->Nat)->Nat, wrapped as a term-backed NbhFn
/// with query(a) = eval(gamma a).
NbhFn neighbourhood_term(const Term& y);

/// Pretty-prints the backing term. Throws HostBacked for host-backed
/// handles.
std::string emit_source(const NbhFn& n);

}  // namespace systemt

#endif
