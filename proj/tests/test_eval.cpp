#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "systemt/corpus.hpp"
#include "systemt/eval.hpp"
#include "systemt/random_terms.hpp"

using namespace systemt;

namespace {

Nat run(const std::string& src) { return eval_nat(parse_term(src)); }

Nat run(const std::string& src, const Oracle& alpha) {
  Term t = parse_term(src);
  return eval_nat(t, &alpha);
}

bool value_matches(const Value& v, const Type& ty) {
  switch (ty.kind()) {
    case TypeKind::Nat: return v.is_nat();
    case TypeKind::Seq: return v.is_seq();
    case TypeKind::Arrow: return v.is_fun();
  }
  return false;
}

}  // namespace

TEST_CASE("Rec unfolds by the standard equations") {
  CHECK(run("Rec[Nat] 0 (\\n:Nat.\\m:Nat. Succ m) 3") == 3);
  CHECK(run("Rec[Nat] 5 (\\n:Nat.\\m:Nat. m) 0") == 5);
  // Rec[Nat] 0 (\n.\m. n) k = k-1 for k > 0
  CHECK(run("Rec[Nat] 0 (\\n:Nat.\\m:Nat. n) 4") == 3);
}

TEST_CASE("Omega binds to the supplied oracle") {
  Oracle plus1 = [](const Nat& i) { return Nat(i + 1); };
  CHECK(run("(\\a:Nat->Nat. a (a 2)) Omega", plus1) == 4);
  CHECK_THROWS_AS(run("(\\a:Nat->Nat. a 0) Omega"), OracleMissing);
}

TEST_CASE("Seq primitives follow the Get default") {
  CHECK(run("get (snoc (snoc empty 5) 7) 9") == 0);
  CHECK(run("get (snoc (snoc empty 5) 7) 1") == 7);
  CHECK(run("len (snoc (snoc empty 5) 7)") == 2);
  CHECK(eval(parse_term("empty")).seq().empty());
}

TEST_CASE("fuel exhausts on runaway budgets only") {
  Term t = parse_term("Rec[Nat] 0 (\\n:Nat.\\m:Nat. Succ m) 64");
  CHECK_THROWS_AS(eval(t, nullptr, 10), FuelExhausted);
  CHECK(eval(t, nullptr, 100000).nat() == 64);
}

TEST_CASE("eval_nat_traced records oracle queries in order") {
  Term constant = parse_term("\\a:Nat->Nat. 0");
  auto [v0, t0] = eval_nat_traced(constant, oracle_id());
  CHECK(v0 == 0);
  CHECK(t0.queries.empty());

  Term q7 = parse_term("\\a:Nat->Nat. a 7");
  auto [v7, t7] = eval_nat_traced(q7, oracle_id());
  CHECK(v7 == 7);
  REQUIRE(t7.queries.size() == 1);
  CHECK(t7.queries[0].first == 7);
  CHECK(t7.queries[0].second == 7);

  Term nested = parse_term("\\a:Nat->Nat. a (a 2)");
  auto [vn, tn] = eval_nat_traced(nested, oracle_const(Nat(0)));
  CHECK(vn == 0);
  for (const Nat& i : tn.index_set()) CHECK((i == 0 || i == 2));

  // replaying the trace as a partial oracle reproduces the result
  Oracle partial = tn.as_partial_oracle();
  auto [vr, tr] = eval_nat_traced(nested, partial);
  CHECK(vr == vn);
  CHECK(tr.queries == tn.queries);
}

TEST_CASE("determinism under extensionally equal oracles") {
  Term nested = parse_term("\\a:Nat->Nat. a (a 2)");
  Oracle a1 = oracle_seeded(5);
  Oracle a2 = oracle_seeded(5);
  auto r1 = eval_nat_traced(nested, a1);
  auto r2 = eval_nat_traced(nested, a2);
  CHECK(r1.first == r2.first);
  CHECK(r1.second.queries == r2.second.queries);
}

TEST_CASE("trace sufficiency: agreement on traced indices fixes the value") {
  auto entries = load_corpus(SYSTEMT_CORPUS_DIR);
  std::mt19937_64 rng(1234);
  for (const auto& entry : entries) {
    for (int trial = 0; trial < 100; ++trial) {
      std::uint64_t s = rng();
      Oracle alpha = oracle_seeded(s, 9);
      auto [v, trace] = eval_nat_traced(entry.term, alpha);
      auto indices = trace.index_set();
      // a fresh oracle agreeing with alpha exactly on the traced indices
      std::uint64_t s2 = rng();
      Oracle surgery = [indices, alpha, s2](const Nat& i) -> Nat {
        for (const Nat& k : indices)
          if (k == i) return alpha(i);
        return Nat(mix_u64(s2, hash_nat(17, i)) % 100);
      };
      auto [v2, trace2] = eval_nat_traced(entry.term, surgery);
      CHECK(v2 == v);
    }
  }
}

TEST_CASE("type soundness: value shapes follow types") {
  std::mt19937_64 rng(4242);
  TermGenOptions opt;
  opt.allow_seq = true;
  opt.allow_omega = true;
  opt.max_depth = 7;
  Oracle alpha = oracle_seeded(11, 5);
  for (int i = 0; i < 300; ++i) {
    Type goal = random_type(rng, 2, true);
    Term t = random_well_typed(rng, {}, goal, opt);
    Value v = eval(t, &alpha, 2'000'000);
    CHECK(value_matches(v, goal));
    if (goal.is_arrow()) {
      Term arg = random_well_typed(rng, {}, goal.dom(), opt);
      Value result = v.apply(eval(arg, &alpha, 2'000'000));
      CHECK(value_matches(result, goal.cod()));
    }
  }
}

TEST_CASE("oracle specs") {
  CHECK(oracle_from_spec("id")(Nat(4)) == 4);
  CHECK(oracle_from_spec("const:9")(Nat(123)) == 9);
  CHECK(oracle_from_spec("step:3")(Nat(2)) == 1);
  CHECK(oracle_from_spec("step:3")(Nat(3)) == 0);
  Oracle l = oracle_from_spec("list:4,5,6");
  CHECK(l(Nat(0)) == 4);
  CHECK(l(Nat(2)) == 6);
  CHECK(l(Nat(3)) == 0);
  Oracle s1 = oracle_from_spec("seeded:77");
  Oracle s2 = oracle_from_spec("seeded:77");
  for (int i = 0; i < 20; ++i) {
    CHECK(s1(Nat(i)) == s2(Nat(i)));
    CHECK(s1(Nat(i)) < 256);
  }
  CHECK_THROWS_AS(oracle_from_spec("bogus:1"), Error);
}

TEST_CASE("oracle combinators") {
  Oracle base = oracle_id();
  Oracle pre = prepend(Seq{Nat(9), Nat(8)}, base);
  CHECK(pre(Nat(0)) == 9);
  CHECK(pre(Nat(1)) == 8);
  CHECK(pre(Nat(2)) == 0);  // base(0)
  CHECK(pre(Nat(5)) == 3);  // base(3)
  Oracle padded = append_zeros(Seq{Nat(4)});
  CHECK(padded(Nat(0)) == 4);
  CHECK(padded(Nat(1)) == 0);
  Oracle sh = shift(base, Nat(10));
  CHECK(sh(Nat(5)) == 15);
  CHECK(prefix_of(base, 3) == Seq{Nat(0), Nat(1), Nat(2)});
}
