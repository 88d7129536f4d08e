#include "systemt/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "systemt/brouwer.hpp"
#include "systemt/dialogue.hpp"

namespace systemt {

ContinuityReport modulus(const NbhFn& gamma, const Oracle& alpha, std::uint64_t fuel) {
  Seq prefix;
  for (std::uint64_t n = 0;; ++n) {
    Nat q = gamma.query(prefix);
    if (q > 0) return ContinuityReport{Nat(n), monus(q, 1), {}, true};
    if (n >= fuel)
      throw FuelExhausted("modulus: gamma not secured within fuel " + std::to_string(fuel));
    prefix.push_back(alpha(Nat(n)));
  }
}

ContinuityReport modulus(const NbhFn& gamma, const Term& y, const Oracle& alpha,
                         std::uint64_t fuel) {
  ContinuityReport report = modulus(gamma, alpha, fuel);
  auto [value, trace] = eval_nat_traced(y, alpha);
  report.trace_indices = trace.index_set();
  bool indices_below = true;
  for (const Nat& i : report.trace_indices)
    if (i >= report.modulus) indices_below = false;
  report.consistent = indices_below && report.induced_value == value;
  return report;
}

std::uint64_t uc_modulus_cantor(const NbhFn& gamma, std::uint64_t fuel) {
  if (gamma.query({}) > 0) return 0;
  std::vector<Seq> frontier{Seq{}};
  constexpr std::size_t kFrontierCap = 1u << 22;
  std::uint64_t n = 0;
  while (!frontier.empty()) {
    if (n >= fuel || frontier.size() > kFrontierCap)
      throw FuelExhausted("uc_modulus_cantor: unsecured binary sequences remain at depth " +
                          std::to_string(n));
    ++n;
    std::vector<Seq> next;
    for (const Seq& a : frontier) {
      for (int bit = 0; bit <= 1; ++bit) {
        Seq ext = snoc(a, Nat(bit));
        if (gamma.query(ext) == 0) next.push_back(std::move(ext));
      }
    }
    frontier = std::move(next);
  }
  return n;
}

// ---------------------------------------------------------------------------
// Neighbourhood laws
// ---------------------------------------------------------------------------

namespace {

struct LawWorker {
  const NbhFn* gamma;
  std::size_t max_len;
  unsigned alphabet;
  std::vector<NbhdLawViolation> violations;
  std::uint64_t comparisons = 0;

  // Walks the trie of sequences with entries < alphabet up to length
  // 2*max_len. vals[i] is gamma of the length-i prefix of c. Every split
  // c = a*b with |a| <= max_len, |b| <= max_len and gamma(a) > 0 is compared
  // against gamma(c). Below depth max_len, subtrees none of whose feasible
  // prefixes are secured cannot produce comparisons and are pruned.
  void dfs(Seq& c, std::vector<Nat>& vals) {
    std::size_t len = c.size();
    Nat here = vals[len];
    std::size_t lo = len > max_len ? len - max_len : 0;
    std::size_t hi = std::min(len, max_len);
    for (std::size_t i = lo; i < hi; ++i) {
      if (vals[i] > 0) {
        ++comparisons;
        if (vals[i] != here) {
          violations.push_back(NbhdLawViolation{
              2, Seq(c.begin(), c.begin() + i), Seq(c.begin() + i, c.end()), vals[i], here,
              "gamma(a) > 0 but gamma(a*b) != gamma(a)"});
        }
      }
    }
    if (len == 2 * max_len) return;
    if (len >= max_len) {
      bool any_secured = false;
      for (std::size_t i = 0; i <= max_len; ++i)
        if (vals[i] > 0) any_secured = true;
      if (!any_secured) return;
    }
    for (unsigned x = 0; x < alphabet; ++x) {
      c.push_back(Nat(x));
      vals.push_back(gamma->query(c));
      dfs(c, vals);
      c.pop_back();
      vals.pop_back();
    }
  }
};

Seq random_seq(std::uint64_t seed, std::uint64_t salt, std::size_t max_len, unsigned max_entry) {
  std::size_t len = mix_u64(seed, salt * 2 + 1) % (max_len + 1);
  Seq out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i)
    out.push_back(Nat(mix_u64(seed, salt * 7919 + i) % (max_entry + 1)));
  return out;
}

}  // namespace

NbhdLawReport check_nbhd_laws(const NbhFn& gamma, std::size_t max_len, std::uint64_t fuel,
                              std::size_t alpha_samples, std::uint64_t seed, unsigned alphabet,
                              std::size_t random_pairs, unsigned threads) {
  NbhdLawReport report;
  report.seed = seed;
  if (alphabet == 0) alphabet = 1;

  // Condition (2), exhaustive grid. Depth-0/1 splits run inline; the
  // depth-2 subtrees are distributed over a small worker pool.
  Nat root = gamma.query({});
  if (max_len > 0) {
    std::vector<Nat> level1(alphabet, Nat(0));
    for (unsigned x = 0; x < alphabet; ++x) {
      level1[x] = gamma.query(Seq{Nat(x)});
      if (root > 0) {
        ++report.condition2_comparisons;
        if (level1[x] != root)
          report.violations.push_back(NbhdLawViolation{
              2, {}, Seq{Nat(x)}, root, level1[x], "gamma(a) > 0 but gamma(a*b) != gamma(a)"});
      }
    }
    std::size_t n_tasks = static_cast<std::size_t>(alphabet) * alphabet;
    std::vector<LawWorker> workers(n_tasks);
    unsigned n_threads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, n_tasks);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
      for (;;) {
        std::size_t task = next.fetch_add(1);
        if (task >= n_tasks) return;
        unsigned x = static_cast<unsigned>(task / alphabet);
        unsigned y = static_cast<unsigned>(task % alphabet);
        LawWorker& w = workers[task];
        w.gamma = &gamma;
        w.max_len = max_len;
        w.alphabet = alphabet;
        Seq c{Nat(x), Nat(y)};
        std::vector<Nat> vals{root, level1[x], gamma.query(c)};
        w.dfs(c, vals);
      }
    };
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    for (auto& w : workers) {
      report.condition2_comparisons += w.comparisons;
      for (auto& v : w.violations) report.violations.push_back(std::move(v));
    }
  }

  // Condition (2), random longer pairs over a wider alphabet.
  for (std::size_t k = 0; k < random_pairs; ++k) {
    Seq a = random_seq(mix_u64(seed, 0xA11CE), k, max_len * 2, alphabet * 2);
    Seq b = random_seq(mix_u64(seed, 0xB0B), k, max_len * 2, alphabet * 2);
    ++report.random_pairs_checked;
    Nat va = gamma.query(a);
    if (va > 0) {
      Nat vab = gamma.query(concat(a, b));
      ++report.condition2_comparisons;
      if (va != vab)
        report.violations.push_back(
            NbhdLawViolation{2, a, b, va, vab, "random pair: value not stable under extension"});
    }
  }

  // Condition (1): seeded random inputs must secure within fuel.
  for (std::size_t s = 0; s < alpha_samples; ++s) {
    Oracle alpha = oracle_seeded(mix_u64(seed, 0xA1F4A + s), alphabet * 2);
    Seq prefix;
    bool secured = false;
    for (std::uint64_t n = 0; n <= fuel; ++n) {
      if (gamma.query(prefix) > 0) {
        report.securing_depths.push_back(n);
        secured = true;
        break;
      }
      if (n < fuel) prefix.push_back(alpha(Nat(n)));
    }
    if (!secured) {
      Seq witness = prefix_of(alpha, std::min<std::uint64_t>(fuel, 16));
      report.violations.push_back(NbhdLawViolation{
          1, witness, {}, Nat(0), Nat(0),
          "input sample " + std::to_string(s) + " not secured within fuel " +
              std::to_string(fuel)});
    }
  }

  return report;
}

// ---------------------------------------------------------------------------
// Bar recursion support
// ---------------------------------------------------------------------------

std::function<Nat(const Seq&)> stopping_from_term(const Term& y) {
  Type expected = Type::arrow(Type::arrow(Type::nat(), Type::nat()), Type::nat());
  Type actual = typecheck({}, y);
  if (actual != expected)
    throw TypeError("stopping function must be a closed (Nat->Nat)->Nat term, found " +
                    actual.to_string());
  Term applied = Term::app(y, Term::omega());
  return [applied](const Seq& a) {
    Oracle padded = append_zeros(a);
    return eval_nat(applied, &padded);
  };
}

// ---------------------------------------------------------------------------
// Differential harness
// ---------------------------------------------------------------------------

DifferentialReport differential_check(const Term& y, std::size_t trials, std::uint64_t seed,
                                      std::uint64_t fuel, unsigned max_entry) {
  DifferentialReport report;
  report.seed = seed;
  report.trials = trials;

  Term applied = Term::app(y, Term::omega());
  DialogueTree dt = dialogue_of(y);
  BrouwerOp bt = brouwer_of(y);
  NbhFn gamma = neighbourhood_term(y);
  NbhFn delta_bt = delta(bt);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    Oracle alpha = oracle_seeded(mix_u64(seed, trial), max_entry + 1);
    Nat v_eval = eval_nat(applied, &alpha);
    std::string detail;
    auto differ = [&](const char* route, const Nat& got) {
      if (got != v_eval)
        detail += std::string(detail.empty() ? "" : "; ") + route + " = " + got.str() +
                  " but eval = " + v_eval.str();
    };
    std::uint64_t reach = 0;
    try {
      differ("dialogue", deval(dt, alpha));
      differ("brouwer", beval(bt, alpha));
      ContinuityReport mg = modulus(gamma, alpha, fuel);
      differ("gamma-induced", mg.induced_value);
      ContinuityReport md = modulus(delta_bt, alpha, fuel);
      differ("delta-induced", md.induced_value);
      reach = std::max<std::uint64_t>(to_u64(mg.modulus), to_u64(md.modulus));
      for (std::uint64_t n = 0; n <= reach; ++n) {
        Seq p = prefix_of(alpha, n);
        if (gamma.query(p) != delta_bt.query(p)) ++report.delta_gamma_pointwise_diffs;
      }
    } catch (const Error& e) {
      detail += std::string(detail.empty() ? "" : "; ") + "route failed: " + e.what();
    }
    if (!detail.empty())
      report.mismatches.push_back(
          DifferentialMismatch{trial, prefix_of(alpha, std::max<std::uint64_t>(reach, 8)), detail});
  }
  return report;
}

}  // namespace systemt
