#include "systemt/random_terms.hpp"

namespace systemt {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// Cheapest inhabitant of a type: Zero, empty, or a constant lambda.
Term canonical(const Type& goal) {
  switch (goal.kind()) {
    case TypeKind::Nat: return Term::zero();
    case TypeKind::Seq: return Term::empty_seq();
    case TypeKind::Arrow: return Term::lam(goal.dom(), canonical(goal.cod()));
  }
  return Term::zero();
}

Term gen(std::mt19937_64& rng, Context& ctx, const Type& goal, unsigned depth,
         const TermGenOptions& opt);

Term gen_nat(std::mt19937_64& rng, Context& ctx, unsigned depth, const TermGenOptions& opt) {
  Type nat = Type::nat();
  switch (pick(rng, opt.allow_seq ? 7 : 5)) {
    case 0: return nat_literal(std::uint64_t(pick(rng, 4)));
    case 1: return Term::app(Term::succ(), gen(rng, ctx, nat, depth - 1, opt));
    case 2: {  // Rec at a small random type
      Type rho = random_type(rng, depth >= 3 ? 1 : 0, opt.allow_seq);
      Term rec = Term::rec(rho);
      Term u = gen(rng, ctx, rho, depth - 1, opt);
      Term f = gen(rng, ctx, Type::arrow(nat, Type::arrow(rho, rho)), depth - 1, opt);
      Term n = gen(rng, ctx, nat, depth - 1, opt);
      Term spine = Term::app(Term::app(Term::app(rec, u), f), n);
      // Rec lands at rho; when rho is Nat we are done, else apply to close
      // the gap down to Nat
      Type at = rho;
      while (at.is_arrow()) {
        spine = Term::app(spine, gen(rng, ctx, at.dom(), depth >= 2 ? 1 : 0, opt));
        at = at.cod();
      }
      if (at.is_seq()) return Term::app(Term::len_c(), spine);
      return spine;
    }
    case 3: {  // beta redex
      Type dom = random_type(rng, 1, opt.allow_seq);
      ctx.push_back(dom);
      Term body = gen(rng, ctx, nat, depth - 1, opt);
      ctx.pop_back();
      return Term::app(Term::lam(dom, body), gen(rng, ctx, dom, depth - 1, opt));
    }
    case 4: {  // apply a Nat->Nat function
      Term fn = gen(rng, ctx, Type::arrow(nat, nat), depth - 1, opt);
      return Term::app(fn, gen(rng, ctx, nat, depth - 1, opt));
    }
    case 5: return Term::app(Term::len_c(), gen(rng, ctx, Type::seq(), depth - 1, opt));
    default: {
      Term s = gen(rng, ctx, Type::seq(), depth - 1, opt);
      Term i = gen(rng, ctx, Type::nat(), depth - 1, opt);
      return Term::app(Term::app(Term::get_c(), s), i);
    }
  }
}

Term gen(std::mt19937_64& rng, Context& ctx, const Type& goal, unsigned depth,
         const TermGenOptions& opt) {
  // a context variable of the right type is always a candidate
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (ctx[i] == goal) hits.push_back(i);
  if (!hits.empty() && pick(rng, 3) == 0) return Term::var(hits[pick(rng, hits.size())]);

  if (depth == 0) {
    if (!hits.empty()) return Term::var(hits[pick(rng, hits.size())]);
    return canonical(goal);
  }

  switch (goal.kind()) {
    case TypeKind::Nat: return gen_nat(rng, ctx, depth, opt);
    case TypeKind::Seq: {
      switch (pick(rng, 3)) {
        case 0: return Term::empty_seq();
        default: {
          Term s = gen(rng, ctx, Type::seq(), depth - 1, opt);
          Term n = gen(rng, ctx, Type::nat(), depth - 1, opt);
          return Term::app(Term::app(Term::snoc_c(), s), n);
        }
      }
    }
    case TypeKind::Arrow: {
      Type nat = Type::nat();
      bool nat_to_nat = goal.dom() == nat && goal.cod() == nat;
      unsigned choices = 3;
      if (nat_to_nat) choices += opt.allow_omega ? 2 : 1;
      switch (pick(rng, choices)) {
        case 0:
        case 1: {  // lambda
          ctx.push_back(goal.dom());
          Term body = gen(rng, ctx, goal.cod(), depth - 1, opt);
          ctx.pop_back();
          return Term::lam(goal.dom(), body);
        }
        case 2: {  // redex producing a function
          Type dom = random_type(rng, 1, opt.allow_seq);
          ctx.push_back(dom);
          Term body = gen(rng, ctx, goal, depth - 1, opt);
          ctx.pop_back();
          return Term::app(Term::lam(dom, body), gen(rng, ctx, dom, depth - 1, opt));
        }
        case 3: return Term::succ();
        default: return Term::omega();
      }
    }
  }
  return canonical(goal);
}

}  // namespace

Type random_type(std::mt19937_64& rng, unsigned depth, bool allow_seq) {
  if (depth == 0 || pick(rng, 2) == 0) {
    if (allow_seq && pick(rng, 4) == 0) return Type::seq();
    return Type::nat();
  }
  return Type::arrow(random_type(rng, depth - 1, allow_seq),
                     random_type(rng, depth - 1, allow_seq));
}

Term random_well_typed(std::mt19937_64& rng, const Context& ctx, const Type& goal,
                       const TermGenOptions& options) {
  Context scratch = ctx;
  return gen(rng, scratch, goal, options.max_depth, options);
}

}  // namespace systemt
