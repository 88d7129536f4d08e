// Acceptance suite: runs every top-level correctness property of the
// toolkit against the checked-in corpus and prints one pass/fail line per
// criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "systemt/analysis.hpp"
#include "systemt/brouwer.hpp"
#include "systemt/corpus.hpp"
#include "systemt/dialogue.hpp"
#include "systemt/random_terms.hpp"

using namespace systemt;

namespace {

constexpr std::uint64_t kSeed = 20250810;

struct Criterion {
  std::string name;
  double time_limit_s;  // 0 = no limit
  std::function<bool(std::string&)> run;
};

std::vector<CorpusEntry> corpus() {
  static std::vector<CorpusEntry> entries = load_corpus(SYSTEMT_CORPUS_DIR);
  return entries;
}

// --------------------------------------------------------------------------
// 1. Five-way agreement: eval = dialogue = brouwer = emitted gamma = delta(BT)
// --------------------------------------------------------------------------
bool five_way_agreement(std::string& detail) {
  auto entries = corpus();
  if (entries.size() < 8) {
    detail = "corpus has fewer than 8 terms";
    return false;
  }
  std::size_t mismatches = 0;
  for (const auto& entry : entries) {
    auto report = differential_check(entry.term, 100, mix_u64(kSeed, 1), 10000, 8);
    if (!report.ok()) {
      mismatches += report.mismatches.size();
      detail += entry.name + ": " + report.mismatches.front().detail + "; ";
    }
  }
  detail = std::to_string(entries.size()) + " terms x 100 inputs, " +
           std::to_string(mismatches) + " mismatches. " + detail;
  return mismatches == 0;
}

// --------------------------------------------------------------------------
// 2. Neighbourhood-function laws for every corpus gamma
// --------------------------------------------------------------------------
bool nbhd_laws(std::string& detail) {
  std::size_t violations = 0;
  std::uint64_t comparisons = 0;
  for (const auto& entry : corpus()) {
    NbhFn gamma = neighbourhood_term(entry.term);
    auto report = check_nbhd_laws(gamma, 6, 10000, 100, mix_u64(kSeed, 2), 4, 1000);
    comparisons += report.condition2_comparisons;
    if (!report.ok()) {
      violations += report.violations.size();
      detail += entry.name + ": " + report.violations.front().note + "; ";
    }
  }
  detail = std::to_string(comparisons) + " stability comparisons, " +
           std::to_string(violations) + " violations. " + detail;
  return violations == 0;
}

// --------------------------------------------------------------------------
// 3. Axiom laws (eta, KE, At) in both tree models and the emitted-term model
// --------------------------------------------------------------------------
bool axiom_laws(std::string& detail) {
  std::size_t bad = 0;
  Nat zero(0);

  for (std::uint64_t s = 0; s < 200; ++s) {
    Oracle alpha = oracle_seeded(mix_u64(kSeed, 300 + s), 9);
    Nat n(mix_u64(kSeed, 400 + s) % 10);
    Nat m(mix_u64(kSeed, 500 + s) % 6);

    // dialogue trees
    if (deval(DialogueTree::leaf(n), alpha) != n) ++bad;
    if (deval(at_dialogue(m), alpha) != alpha(m)) ++bad;
    auto fd = [s](const Nat& k) { return at_dialogue(Nat((k + s) % 7)); };
    DialogueTree dt = DialogueTree::node(m, [](const Nat& i) {
      return DialogueTree::node(i, [](const Nat& j) { return DialogueTree::leaf(j); });
    });
    if (deval(fd(deval(dt, alpha)), alpha) != deval(ke_dialogue(fd, dt), alpha)) ++bad;

    // Brouwer operations
    if (beval(BrouwerOp::leaf(n), alpha) != n) ++bad;
    if (beval(at_bt(m), alpha) != alpha(m)) ++bad;
    auto fb = [s](const Nat& k) { return at_bt(Nat((k + s) % 7)); };
    BrouwerOp bt = at_bt(Nat(s % 5));
    if (beval(fb(beval(bt, alpha)), alpha) != beval(ke_brouwer(fb, bt), alpha)) ++bad;

    // emitted-term model, with values read off through the induced-value map
    NbhFn eta_n = NbhFn::from_term(Term::app(eta_term(), nat_literal(n)));
    if (modulus(eta_n, alpha, 100).induced_value != n) ++bad;
    NbhFn at_m = NbhFn::from_term(Term::app(at_term(), nat_literal(m)));
    if (modulus(at_m, alpha, 100).induced_value != alpha(m)) ++bad;
    Term gamma_t = Term::app(at_term(), nat_literal(m));
    Term ke_ft = Term::app(Term::app(ke_nat_term(), eta_term()), gamma_t);
    NbhFn ke_f = NbhFn::from_term(ke_ft);
    Nat inner = modulus(NbhFn::from_term(gamma_t), alpha, 100).induced_value;
    NbhFn f_inner = NbhFn::from_term(Term::app(eta_term(), nat_literal(inner)));
    if (modulus(ke_f, alpha, 100).induced_value !=
        modulus(f_inner, alpha, 100).induced_value)
      ++bad;
  }
  detail = "600 sampled law instances per family, " + std::to_string(bad) + " violations";
  return bad == 0;
}

// --------------------------------------------------------------------------
// 4. Modulus correctness and minimality
// --------------------------------------------------------------------------
bool modulus_properties(std::string& detail) {
  std::size_t bad = 0;
  for (const auto& entry : corpus()) {
    NbhFn gamma = neighbourhood_term(entry.term);
    Term applied = Term::app(entry.term, Term::omega());
    for (std::uint64_t s = 0; s < 50; ++s) {
      Oracle alpha = oracle_seeded(mix_u64(kSeed, 600 + s), 9);
      ContinuityReport r = modulus(gamma, entry.term, alpha, 10000);
      if (!r.consistent) ++bad;
      for (const Nat& i : r.trace_indices)
        if (i >= r.modulus) ++bad;
      if (r.modulus > 0 && gamma.query(prefix_of(alpha, to_u64(r.modulus) - 1)) != 0) ++bad;
      Nat base = eval_nat(applied, &alpha);
      for (std::uint64_t bump : {std::uint64_t(0), std::uint64_t(1), std::uint64_t(5)}) {
        Nat cut = r.modulus + bump;
        Oracle perturbed = [alpha, cut, s](const Nat& i) -> Nat {
          if (i >= cut) return Nat(mix_u64(s ^ 0xBEEF, hash_nat(13, i)) % 9);
          return alpha(i);
        };
        if (eval_nat(applied, &perturbed) != base) ++bad;
      }
    }
  }
  detail = "corpus x 50 inputs x {trace bound, minimality, perturbation}, " +
           std::to_string(bad) + " violations";
  return bad == 0;
}

// --------------------------------------------------------------------------
// 5. Uniform continuity on the Cantor space
// --------------------------------------------------------------------------
bool uniform_continuity(std::string& detail) {
  std::size_t bad = 0;
  std::string ucs;
  for (const auto& entry : corpus()) {
    NbhFn gamma = neighbourhood_term(entry.term);
    std::uint64_t n = uc_modulus_cantor(gamma, 64);
    ucs += entry.name + "=" + std::to_string(n) + " ";
    if (entry.name == "query3" && n != 4) {
      detail = "uc(query3) = " + std::to_string(n) + ", want 4";
      return false;
    }
    if (n > 12) continue;
    Term applied = Term::app(entry.term, Term::omega());
    for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
      Seq p;
      for (std::uint64_t i = 0; i < n; ++i) p.push_back(Nat((bits >> i) & 1));
      Oracle by_zeros = append_zeros(p);
      Oracle by_ones = prepend(p, oracle_const(Nat(1)));
      Oracle by_mix = prepend(p, oracle_seeded(mix_u64(kSeed, bits), 2));
      Nat v0 = eval_nat(applied, &by_zeros);
      if (eval_nat(applied, &by_ones) != v0) ++bad;
      if (eval_nat(applied, &by_mix) != v0) ++bad;
    }
  }
  detail = "uc moduli: " + ucs + "- exhaustive binary-prefix check, " + std::to_string(bad) +
           " violations";
  return bad == 0;
}

// --------------------------------------------------------------------------
// 6. Bar recursion: defining equation at every visited node
// --------------------------------------------------------------------------
bool bar_recursion(std::string& detail) {
  auto length = std::function<Nat(const Seq&)>([](const Seq& a) { return Nat(a.size()); });
  auto child0 = std::function<Nat(const Seq&, const std::function<Nat(const Nat&)>&)>(
      [](const Seq&, const std::function<Nat(const Nat&)>& ch) { return ch(Nat(0)); });
  auto child1 = std::function<Nat(const Seq&, const std::function<Nat(const Nat&)>&)>(
      [](const Seq&, const std::function<Nat(const Nat&)>& ch) { return ch(Nat(1)); });
  auto max2 = std::function<Nat(const Seq&, const std::function<Nat(const Nat&)>&)>(
      [](const Seq&, const std::function<Nat(const Nat&)>& ch) {
        return std::max(ch(Nat(0)), ch(Nat(1)));
      });

  struct Config {
    std::string name;
    BarRecConfig<Nat> cfg;
    Seq start;
    Nat expected;
  };
  std::vector<Config> configs;
  configs.push_back({"stop=a0,G=len,H=child0",
                     {stopping_from_term(parse_term("\\a:Nat->Nat. a 0")), length, child0},
                     {},
                     Nat(1)});
  configs.push_back({"stop=a3,G=len,H=max2",
                     {stopping_from_term(parse_term("\\a:Nat->Nat. a 3")), length, max2},
                     {},
                     Nat(1)});
  configs.push_back({"stop=a0+a1,G=len,H=child1",
                     {stopping_from_term(parse_term(
                          "\\a:Nat->Nat. (\\m:Nat. \\n:Nat. Rec[Nat] m (\\k:Nat. \\r:Nat. "
                          "Succ r) n) (a 0) (a 1)")),
                      length, child1},
                     {},
                     Nat(3)});

  std::size_t bad = 0;
  std::size_t nodes = 0;
  for (auto& c : configs) {
    auto run = bar_recursor_traced<Nat>(c.cfg, c.start, 1000);
    nodes += run.nodes.size();
    std::string why;
    if (run.result != c.expected) {
      ++bad;
      detail += c.name + ": result " + run.result.str() + ", want " + c.expected.str() + "; ";
    }
    if (!barrec_equation_verified<Nat>(c.cfg, run, &why)) {
      ++bad;
      detail += c.name + ": " + why + "; ";
    }
  }
  detail = std::to_string(configs.size()) + " configurations, " + std::to_string(nodes) +
           " visited nodes re-verified, " + std::to_string(bad) + " violations. " + detail;
  return bad == 0;
}

// --------------------------------------------------------------------------
// 7. Compiler-pass typing on corpus and random terms
// --------------------------------------------------------------------------
bool dagger_typing(std::string& detail) {
  std::size_t bad = 0;
  for (const auto& entry : corpus()) {
    Term applied = Term::app(entry.term, Term::omega());
    if (typecheck({}, dagger_term(applied)) != dagger_type(Type::nat())) ++bad;
  }
  std::mt19937_64 rng(kSeed);
  TermGenOptions opt;
  opt.allow_seq = false;
  opt.allow_omega = true;
  opt.max_depth = 10;
  for (int i = 0; i < 500; ++i) {
    Context ctx;
    for (std::uint64_t k = 0; k < rng() % 3; ++k) ctx.push_back(random_type(rng, 1, false));
    Type goal = random_type(rng, 2, false);
    Term t = random_well_typed(rng, ctx, goal, opt);
    try {
      Term dag = dagger_term(t, ctx);
      if (typecheck(dagger_context(ctx), dag) != dagger_type(goal)) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  detail = "corpus + 500 random well-typed terms, " + std::to_string(bad) + " failures";
  return bad == 0;
}

// --------------------------------------------------------------------------
// 8. Emitted-source round trip
// --------------------------------------------------------------------------
bool emit_round_trip(std::string& detail) {
  std::size_t bad = 0;
  std::mt19937_64 rng(kSeed ^ 0xE1117);
  for (const auto& entry : corpus()) {
    NbhFn gamma = neighbourhood_term(entry.term);
    Term back = parse_term(emit_source(gamma));
    if (typecheck({}, back) != Type::arrow(Type::seq(), Type::nat())) {
      ++bad;
      continue;
    }
    NbhFn again = NbhFn::from_term(back);
    for (int k = 0; k < 50; ++k) {
      Seq a;
      std::size_t len = rng() % 10;
      for (std::size_t i = 0; i < len; ++i) a.push_back(Nat(rng() % 6));
      if (gamma.query(a) != again.query(a)) ++bad;
    }
  }
  detail = "corpus x 50 sampled sequences through print/parse/typecheck/eval, " +
           std::to_string(bad) + " disagreements";
  return bad == 0;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"five-way agreement across all interpretations", 60.0, five_way_agreement},
      {"neighbourhood-function laws for every corpus gamma", 120.0, nbhd_laws},
      {"eta/KE/At laws in tree models and the emitted-term model", 0.0, axiom_laws},
      {"modulus correctness and minimality", 0.0, modulus_properties},
      {"uniform continuity on the Cantor space", 60.0, uniform_continuity},
      {"bar recursion defining equation at every node", 0.0, bar_recursion},
      {"dagger output typechecks at the dagger type", 0.0, dagger_typing},
      {"emitted-source round trip", 0.0, emit_round_trip},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto& c = criteria[i];
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.time_limit_s > 0 && elapsed > c.time_limit_s) {
      ok = false;
      detail += " [exceeded time limit of " + std::to_string(c.time_limit_s) + "s]";
    }
    std::printf("[%s] %zu. %s (%.1fs) - %s\n", ok ? "PASS" : "FAIL", i + 1, c.name.c_str(),
                elapsed, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  else std::printf("all %zu criteria passed\n", criteria.size());
  return failures ? 1 : 0;
}
