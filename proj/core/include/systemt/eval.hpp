#ifndef SYSTEMT_EVAL_HPP
#define SYSTEMT_EVAL_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "systemt/oracle.hpp"
#include "systemt/syntax.hpp"

namespace systemt {

/// Semantic values of the standard call-by-value interpretation.
/// Immutable and freely shareable across threads. Function values are
/// closures dispatched internally by kind (term closures, primitives, and
/// host functions).
class Value {
 public:
  using Fun = std::function<Value(const Value&)>;

  explicit Value(Nat n) : tag_(0), nat_(std::move(n)) {}
  explicit Value(Seq s) : tag_(1), ptr_(std::make_shared<const Seq>(std::move(s))) {}
  explicit Value(std::shared_ptr<const Seq> s) : tag_(1), ptr_(std::move(s)) {}
  explicit Value(Fun f);  // host function

  bool is_nat() const { return tag_ == 0; }
  bool is_seq() const { return tag_ == 1; }
  bool is_fun() const { return tag_ == 2; }

  const Nat& nat() const;
  const Seq& seq() const;
  Value apply(const Value& arg) const;

 private:
  struct FunRep;
  explicit Value(std::shared_ptr<const FunRep> f) : tag_(2), ptr_(std::move(f)) {}
  std::uint8_t tag_;
  Nat nat_;
  std::shared_ptr<const void> ptr_;
  friend struct ValueInternal;
};

/// Ordered record of oracle interactions: (index, answer) pairs, duplicates
/// allowed, in query order.
struct OracleTrace {
  std::vector<std::pair<Nat, Nat>> queries;

  /// Indices only, deduplicated.
  std::vector<Nat> index_set() const;

  /// Partial oracle defined exactly on the traced indices; throws Error on
  /// any other index. Used to test replay determinism.
  Oracle as_partial_oracle() const;
};

/// Evaluates a closed term. An oracle must be supplied iff Omega occurs.
/// `fuel`, when set, bounds the number of applications plus Rec steps;
/// exceeding it throws FuelExhausted.
Value eval(const Term& t);
Value eval(const Term& t, const Oracle& oracle);
Value eval(const Term& t, const Oracle* oracle, std::optional<std::uint64_t> fuel);

/// Evaluates a closed Nat-valued term and returns the natural.
Nat eval_nat(const Term& t, const Oracle* oracle = nullptr,
             std::optional<std::uint64_t> fuel = std::nullopt);

/// Applies a closed Y : (Nat->Nat)->Nat to the oracle and records every
/// oracle query made during the evaluation.
std::pair<Nat, OracleTrace> eval_nat_traced(const Term& y, const Oracle& oracle,
                                            std::optional<std::uint64_t> fuel = std::nullopt);

}  // namespace systemt

#endif
