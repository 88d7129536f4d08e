#ifndef SYSTEMT_BROUWER_HPP
#define SYSTEMT_BROUWER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "systemt/dialogue.hpp"  // kDefaultTreeFuel
#include "systemt/nbhd.hpp"
#include "systemt/oracle.hpp"
#include "systemt/syntax.hpp"

namespace systemt {

/// Inductively built neighbourhood function: a leaf is an answer, a sup
/// reads the next input entry and continues in the branch for its value.
/// Branches are lazy, total, and may be forced from any thread.
class BrouwerOp {
 public:
  using Branch = std::function<BrouwerOp(const Nat&)>;

  static BrouwerOp leaf(Nat n);
  static BrouwerOp sup(Branch branch);

  bool is_leaf() const { return rep_->is_leaf; }
  const Nat& leaf_value() const;
  BrouwerOp branch(const Nat& entry) const;

 private:
  struct Rep {
    bool is_leaf;
    Nat n;
    Branch branch;
  };
  explicit BrouwerOp(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

/// Interprets a closed, Omega-free Y : (Nat->Nat)->Nat as a Brouwer
/// operation.
BrouwerOp brouwer_of(const Term& y);

/// Runs against an oracle: leaf n returns n, sup phi continues in
/// phi(alpha(0)) against the shifted oracle \x. alpha(x+1).
Nat beval(const BrouwerOp& t, const Oracle& alpha, std::uint64_t fuel = kDefaultTreeFuel);

/// skip(gamma, <>) = gamma; skip(leaf n, <x>*a) = skip(leaf n, a);
/// skip(sup phi, <x>*a) = skip(phi(x), a).
BrouwerOp skip(const BrouwerOp& t, const Seq& a);

/// aux(f, leaf n, a) = skip(f n, a);
/// aux(f, sup phi, a) = sup (\x. aux(f, phi x, a*<x>)).
BrouwerOp aux(const std::function<BrouwerOp(const Nat&)>& f, const BrouwerOp& t, const Seq& a);

/// Kleisli extension at the base type: aux(f, t, <>).
BrouwerOp ke_brouwer(const std::function<BrouwerOp(const Nat&)>& f, const BrouwerOp& t);

/// At(0) = sup leaf; At(n+1) = sup (\x. At(n)).
BrouwerOp at_bt(const Nat& n);

/// The neighbourhood function a Brouwer operation determines:
/// delta(leaf n)(a) = n+1; delta(sup phi)(<>) = 0;
/// delta(sup phi)(<x>*a) = delta(phi x)(a). Host-backed.
NbhFn delta(const BrouwerOp& t);

BrouwerOp memoize_branches(const BrouwerOp& t);

/// {"leaf": n} | {"sup": {"0": ..., "...": "truncated"}}.
std::string brouwer_json(const BrouwerOp& t, std::size_t width = 3, std::size_t depth = 8);

/// Model structure for the shared interpretation engine.
struct BrouwerModel {
  using TN = BrouwerOp;
  static TN eta(const Nat& n) { return BrouwerOp::leaf(n); }
  static TN at(const Nat& n) { return at_bt(n); }
  static TN ke(std::function<TN(const Nat&)> f, const TN& t) { return ke_brouwer(f, t); }
};

}  // namespace systemt

#endif
