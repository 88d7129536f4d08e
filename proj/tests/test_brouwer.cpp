#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "systemt/brouwer.hpp"
#include "systemt/corpus.hpp"
#include "systemt/eval.hpp"

using namespace systemt;

namespace {

BrouwerOp sup_leaves() {
  return BrouwerOp::sup([](const Nat& x) { return BrouwerOp::leaf(x); });
}

}  // namespace

TEST_CASE("beval follows the sup equation") {
  CHECK(beval(BrouwerOp::leaf(Nat(4)), oracle_id()) == 4);
  Oracle plus10 = [](const Nat& i) { return Nat(i + 10); };
  CHECK(beval(at_bt(Nat(1)), plus10) == 11);
  CHECK(beval(sup_leaves(), oracle_const(Nat(0))) == 0);
}

TEST_CASE("at_bt is the primitive recursion from its defining equations") {
  BrouwerOp at0 = at_bt(Nat(0));
  REQUIRE(!at0.is_leaf());
  for (int i = 0; i < 4; ++i) {
    BrouwerOp b = at0.branch(Nat(i));
    REQUIRE(b.is_leaf());
    CHECK(b.leaf_value() == i);
  }
  BrouwerOp at2 = at_bt(Nat(2));
  REQUIRE(!at2.is_leaf());
  REQUIRE(!at2.branch(Nat(7)).is_leaf());
  Oracle times5 = [](const Nat& i) { return Nat(i * 5); };
  CHECK(beval(at_bt(Nat(2)), times5) == 10);
  for (std::uint64_t s = 0; s < 30; ++s) {
    Oracle alpha = oracle_seeded(s, 50);
    CHECK(beval(at_bt(Nat(s % 7)), alpha) == alpha(Nat(s % 7)));
  }
}

TEST_CASE("skip follows its three equations") {
  BrouwerOp t = at_bt(Nat(3));
  // skip(gamma, <>) = gamma : same object
  CHECK(beval(skip(t, {}), oracle_id()) == beval(t, oracle_id()));

  // a leaf absorbs skips
  BrouwerOp leaf5 = skip(BrouwerOp::leaf(Nat(5)), Seq{Nat(3), Nat(4)});
  REQUIRE(leaf5.is_leaf());
  CHECK(leaf5.leaf_value() == 5);

  // one unfold of the sup equation
  BrouwerOp picked = skip(sup_leaves(), Seq{Nat(9)});
  REQUIRE(picked.is_leaf());
  CHECK(picked.leaf_value() == 9);
}

TEST_CASE("aux follows its two equations and commutes with prepended input") {
  // aux(f, leaf 3, a) = skip(f 3, a)
  auto f = [](const Nat& n) { return BrouwerOp::leaf(Nat(n + 1)); };
  BrouwerOp l = aux(f, BrouwerOp::leaf(Nat(3)), Seq{Nat(0), Nat(0)});
  REQUIRE(l.is_leaf());
  CHECK(l.leaf_value() == 4);

  // aux(\n. leaf n+1, sup leaves, <>) is extensionally sup (\x. leaf x+1)
  BrouwerOp lifted = aux(f, sup_leaves(), {});
  for (std::uint64_t s = 0; s < 20; ++s) {
    Oracle alpha = oracle_seeded(s, 9);
    CHECK(beval(lifted, alpha) == alpha(Nat(0)) + 1);
  }

  // identity lift at base type
  auto entries = load_corpus(SYSTEMT_CORPUS_DIR);
  for (const auto& entry : entries) {
    BrouwerOp t = brouwer_of(entry.term);
    BrouwerOp id = aux([](const Nat& n) { return BrouwerOp::leaf(n); }, t, {});
    for (std::uint64_t s = 0; s < 10; ++s) {
      Oracle alpha = oracle_seeded(mix_u64(41, s), 9);
      CHECK(beval(id, alpha) == beval(t, alpha));
    }
  }

  // f(gamma . alpha) . (a * alpha) = aux(f, gamma, a) . alpha
  for (std::uint64_t s = 0; s < 60; ++s) {
    Oracle alpha = oracle_seeded(mix_u64(87, s), 6);
    Seq a;
    for (std::uint64_t i = 0; i < s % 4; ++i) a.push_back(Nat(mix_u64(s, i) % 5));
    auto fam = [s](const Nat& n) { return at_bt(Nat((n + s) % 5)); };
    BrouwerOp gamma = at_bt(Nat(s % 3));
    Nat lhs = beval(fam(beval(gamma, alpha)), prepend(a, alpha));
    Nat rhs = beval(aux(fam, gamma, a), alpha);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("brouwer_of builds the expected tree shapes") {
  BrouwerOp constant = brouwer_of(parse_term("\\a:Nat->Nat. 0"));
  REQUIRE(constant.is_leaf());
  CHECK(constant.leaf_value() == 0);

  BrouwerOp q0 = brouwer_of(parse_term("\\a:Nat->Nat. a 0"));
  REQUIRE(!q0.is_leaf());
  for (int i = 0; i < 4; ++i) {
    BrouwerOp b = q0.branch(Nat(i));
    REQUIRE(b.is_leaf());
    CHECK(b.leaf_value() == i);
  }

  BrouwerOp q1 = brouwer_of(parse_term("\\a:Nat->Nat. a 1"));
  REQUIRE(!q1.is_leaf());
  for (int i = 0; i < 3; ++i) {
    BrouwerOp b = q1.branch(Nat(i));
    REQUIRE(!b.is_leaf());
    CHECK(b.branch(Nat(7)).leaf_value() == 7);
  }
}

TEST_CASE("model agreement with the standard evaluator on the corpus") {
  auto entries = load_corpus(SYSTEMT_CORPUS_DIR);
  for (const auto& entry : entries) {
    BrouwerOp t = brouwer_of(entry.term);
    for (std::uint64_t s = 0; s < 100; ++s) {
      Oracle alpha = oracle_seeded(mix_u64(2025, s), 9);
      Nat direct = eval_nat(Term::app(entry.term, Term::omega()), &alpha);
      CHECK(beval(t, alpha) == direct);
    }
  }
}

TEST_CASE("delta computes the three defining equations") {
  NbhFn d_leaf = delta(BrouwerOp::leaf(Nat(7)));
  CHECK(d_leaf.query({}) == 8);
  CHECK(d_leaf.query(Seq{Nat(1), Nat(2)}) == 8);

  NbhFn d_sup = delta(sup_leaves());
  CHECK(d_sup.query({}) == 0);

  NbhFn d_at1 = delta(at_bt(Nat(1)));
  CHECK(d_at1.query(Seq{Nat(4), Nat(9)}) == 10);

  NbhFn d_q0 = delta(brouwer_of(parse_term("\\a:Nat->Nat. a 0")));
  CHECK(d_q0.query(Seq{Nat(5)}) == 6);
  CHECK(d_q0.query({}) == 0);
}

TEST_CASE("delta stabilizes once positive") {
  auto entries = load_corpus(SYSTEMT_CORPUS_DIR);
  for (const auto& entry : entries) {
    NbhFn d = delta(brouwer_of(entry.term));
    for (std::uint64_t s = 0; s < 40; ++s) {
      Oracle alpha = oracle_seeded(mix_u64(55, s), 9);
      Seq a = prefix_of(alpha, s % 10);
      Nat v = d.query(a);
      if (v > 0) {
        Seq b = prefix_of(oracle_seeded(s ^ 1, 9), 1 + s % 5);
        CHECK(d.query(concat(a, b)) == v);
      }
    }
  }
}

TEST_CASE("delta is host-backed") {
  NbhFn d = delta(BrouwerOp::leaf(Nat(0)));
  CHECK(!d.term_backed());
  CHECK_THROWS_AS((void)d.term(), HostBacked);
  CHECK_THROWS_AS((void)emit_source(d), HostBacked);
}

TEST_CASE("axiom laws hold extensionally on samples") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Oracle alpha = oracle_seeded(mix_u64(91, s), 9);
    CHECK(beval(BrouwerOp::leaf(Nat(s)), alpha) == s);
    CHECK(beval(at_bt(Nat(s % 12)), alpha) == alpha(Nat(s % 12)));
    auto f = [s](const Nat& n) { return at_bt(Nat((n + s) % 6)); };
    BrouwerOp gamma = at_bt(Nat(s % 4));
    Nat lhs = beval(f(beval(gamma, alpha)), alpha);
    Nat rhs = beval(ke_brouwer(f, gamma), alpha);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("json dump follows the schema") {
  CHECK(brouwer_json(BrouwerOp::leaf(Nat(3))) == "{\"leaf\":3}");
  std::string s = brouwer_json(at_bt(Nat(1)), 2, 4);
  CHECK(s.find("\"sup\"") != std::string::npos);
  CHECK(s.find("\"...\":\"truncated\"") != std::string::npos);
}

TEST_CASE("memoized branches are transparent") {
  BrouwerOp t = brouwer_of(parse_term("\\a:Nat->Nat. a (a 2)"));
  BrouwerOp memo = memoize_branches(t);
  for (std::uint64_t s = 0; s < 20; ++s) {
    Oracle alpha = oracle_seeded(s, 9);
    CHECK(beval(memo, alpha) == beval(t, alpha));
  }
}
