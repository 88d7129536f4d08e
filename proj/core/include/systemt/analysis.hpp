#ifndef SYSTEMT_ANALYSIS_HPP
#define SYSTEMT_ANALYSIS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "systemt/errors.hpp"
#include "systemt/eval.hpp"
#include "systemt/nbhd.hpp"
#include "systemt/oracle.hpp"
#include "systemt/syntax.hpp"

namespace systemt {

// ---------------------------------------------------------------------------
// Moduli of continuity
// ---------------------------------------------------------------------------

struct ContinuityReport {
  Nat modulus;         // least prefix length securing gamma along the oracle
  Nat induced_value;   // gamma(prefix) - 1
  std::vector<Nat> trace_indices;  // sorted, deduplicated; empty without Y
  bool consistent;     // all trace indices < modulus and induced == traced eval
};

/// Least n <= fuel with gamma(alpha-prefix of length n) > 0, plus the value
/// it induces. Throws FuelExhausted when never secured within fuel.
ContinuityReport modulus(const NbhFn& gamma, const Oracle& alpha, std::uint64_t fuel);

/// Same, additionally cross-checking against a traced standard evaluation
/// of Y (closed, Omega-free, (Nat->Nat)->Nat).
ContinuityReport modulus(const NbhFn& gamma, const Term& y, const Oracle& alpha,
                         std::uint64_t fuel);

/// Least n <= fuel such that every binary sequence of length n has a prefix
/// secured by gamma. Breadth-first over the unsecured binary frontier.
std::uint64_t uc_modulus_cantor(const NbhFn& gamma, std::uint64_t fuel);

// ---------------------------------------------------------------------------
// Neighbourhood-function laws
// ---------------------------------------------------------------------------

struct NbhdLawViolation {
  int condition;  // 1: never secured along an input; 2: value not stable
  Seq a;
  Seq b;
  Nat value_a;
  Nat value_ab;
  std::string note;
};

struct NbhdLawReport {
  std::uint64_t seed = 0;
  std::vector<NbhdLawViolation> violations;
  std::uint64_t condition2_comparisons = 0;   // pairs with gamma(a) > 0 actually compared
  std::uint64_t random_pairs_checked = 0;
  std::vector<std::uint64_t> securing_depths;  // per alpha sample, condition 1
  bool ok() const { return violations.empty(); }
};

/// Condition (2) exhaustively over all a, b with |a|,|b| <= max_len and
/// entries < alphabet, plus `random_pairs` random longer pairs; condition
/// (1) on `alpha_samples` seeded random inputs, each secured within `fuel`
/// prefix length. Violations are report entries, never exceptions.
/// `threads` 0 picks the hardware count.
NbhdLawReport check_nbhd_laws(const NbhFn& gamma, std::size_t max_len, std::uint64_t fuel,
                              std::size_t alpha_samples, std::uint64_t seed = 1,
                              unsigned alphabet = 4, std::size_t random_pairs = 1000,
                              unsigned threads = 0);

// ---------------------------------------------------------------------------
// Bar-induction fold
// ---------------------------------------------------------------------------

/// F(a) = secured(a) when gamma(a) > 0, else step(a, \x. F(a*<x>)).
/// The step function must query its children at finitely many points; fuel
/// bounds the recursion depth below `start`.
template <class R>
R bar_fold(const NbhFn& gamma, const std::function<R(const Seq&)>& secured,
           const std::function<R(const Seq&, const std::function<R(const Nat&)>&)>& step,
           const Seq& start, std::uint64_t fuel) {
  if (gamma.query(start) > 0) return secured(start);
  if (fuel == 0)
    throw FuelExhausted("bar_fold: path from " + seq_to_string(start) +
                        " exceeded fuel without securing");
  std::function<R(const Nat&)> children = [&](const Nat& x) {
    return bar_fold<R>(gamma, secured, step, snoc(start, x), fuel - 1);
  };
  return step(start, children);
}

// ---------------------------------------------------------------------------
// Bar recursion at the lowest type
// ---------------------------------------------------------------------------

/// BR(a) = base(a) when stop(a) < |a|, else combine(a, \x. BR(a*<x>)),
/// where stop(a) evaluates the stopping function on "a then zeros".
/// The result type is opaque to the engine.
template <class R>
struct BarRecConfig {
  std::function<Nat(const Seq&)> stop;
  std::function<R(const Seq&)> base;                                          // G
  std::function<R(const Seq&, const std::function<R(const Nat&)>&)> combine;  // H
};

/// Stopping function from a closed Y : (Nat->Nat)->Nat, evaluated on the
/// oracle "entries of a, then zeros".
std::function<Nat(const Seq&)> stopping_from_term(const Term& y);

template <class R>
R bar_recursor(const BarRecConfig<R>& cfg, const Seq& a, std::uint64_t fuel) {
  if (cfg.stop(a) < Nat(a.size())) return cfg.base(a);
  if (fuel == 0)
    throw FuelExhausted("bar_recursor: depth budget exhausted at " + seq_to_string(a));
  std::function<R(const Nat&)> rest = [&](const Nat& x) {
    return bar_recursor<R>(cfg, snoc(a, x), fuel - 1);
  };
  return cfg.combine(a, rest);
}

template <class R>
struct BarRecNode {
  Seq a;
  Nat stop_value;
  bool stopped;
  R value;
  std::vector<Nat> queried;  // child indices the combine step asked for
};

template <class R>
struct BarRecRun {
  R result;
  std::vector<BarRecNode<R>> nodes;  // post-order
};

namespace detail {
template <class R>
R barrec_traced_go(const BarRecConfig<R>& cfg, const Seq& a, std::uint64_t fuel,
                   std::vector<BarRecNode<R>>& nodes) {
  Nat sv = cfg.stop(a);
  if (sv < Nat(a.size())) {
    R v = cfg.base(a);
    nodes.push_back(BarRecNode<R>{a, sv, true, v, {}});
    return v;
  }
  if (fuel == 0)
    throw FuelExhausted("bar_recursor: depth budget exhausted at " + seq_to_string(a));
  std::vector<Nat> queried;
  std::function<R(const Nat&)> rest = [&](const Nat& x) {
    queried.push_back(x);
    return barrec_traced_go<R>(cfg, snoc(a, x), fuel - 1, nodes);
  };
  R v = cfg.combine(a, rest);
  nodes.push_back(BarRecNode<R>{a, sv, false, v, std::move(queried)});
  return v;
}
}  // namespace detail

template <class R>
BarRecRun<R> bar_recursor_traced(const BarRecConfig<R>& cfg, const Seq& a, std::uint64_t fuel) {
  BarRecRun<R> run{R{}, {}};
  run.result = detail::barrec_traced_go<R>(cfg, a, fuel, run.nodes);
  return run;
}

/// Re-verifies the defining equation at every visited node of a traced run:
/// stopped nodes must equal base(a), others must equal combine recomputed
/// from the recorded child values. Requires deterministic base/combine and
/// R equality.
template <class R>
bool barrec_equation_verified(const BarRecConfig<R>& cfg, const BarRecRun<R>& run,
                              std::string* why = nullptr) {
  std::map<Seq, R> value_at;
  for (const auto& n : run.nodes) value_at.emplace(n.a, n.value);
  auto complain = [&](const Seq& a, const std::string& msg) {
    if (why) *why = "at " + seq_to_string(a) + ": " + msg;
    return false;
  };
  for (const auto& n : run.nodes) {
    bool guard = n.stop_value < Nat(n.a.size());
    if (guard != n.stopped) return complain(n.a, "guard and branch disagree");
    if (n.stopped) {
      if (!(n.value == cfg.base(n.a))) return complain(n.a, "value differs from G(a)");
      continue;
    }
    bool missing_child = false;
    std::function<R(const Nat&)> lookup = [&](const Nat& x) -> R {
      auto it = value_at.find(snoc(n.a, x));
      if (it == value_at.end()) {
        missing_child = true;
        return R{};
      }
      return it->second;
    };
    R rhs = cfg.combine(n.a, lookup);
    if (missing_child) return complain(n.a, "combine queried a child outside the recorded run");
    if (!(rhs == n.value)) return complain(n.a, "value differs from H(a, children)");
  }
  return true;
}

// ---------------------------------------------------------------------------
// Cross-model differential harness
// ---------------------------------------------------------------------------

struct DifferentialMismatch {
  std::size_t trial;
  Seq alpha_prefix;
  std::string detail;
};

struct DifferentialReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<DifferentialMismatch> mismatches;
  // delta(brouwer) and the emitted gamma both induce Y but need not agree
  // pointwise; disagreements are counted, not asserted.
  std::uint64_t delta_gamma_pointwise_diffs = 0;
  bool ok() const { return mismatches.empty(); }
};

/// For `trials` seeded random inputs, asserts agreement of the five routes:
/// standard evaluation, dialogue tree, Brouwer operation, the emitted gamma
/// term's induced value, and delta of the Brouwer operation.
DifferentialReport differential_check(const Term& y, std::size_t trials, std::uint64_t seed,
                                      std::uint64_t fuel = 10000, unsigned max_entry = 8);

}  // namespace systemt

#endif
