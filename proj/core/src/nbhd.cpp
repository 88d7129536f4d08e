#include "systemt/nbhd.hpp"

#include <map>
#include <mutex>

#include "systemt/errors.hpp"

namespace systemt {

// ---------------------------------------------------------------------------
// NbhFn
// ---------------------------------------------------------------------------

struct NbhFn::Impl {
  HostFn host;
  std::optional<Term> term;
  std::optional<Value> compiled;  // eval of the term, done once
  std::string name;
};

NbhFn NbhFn::from_host(HostFn fn, std::string label) {
  auto impl = std::make_shared<Impl>();
  impl->host = std::move(fn);
  impl->name = std::move(label);
  return NbhFn{std::move(impl)};
}

NbhFn NbhFn::from_term(Term gamma) {
  Type expected = Type::arrow(Type::seq(), Type::nat());
  Type actual = typecheck({}, gamma);
  if (actual != expected)
    throw TypeError("neighbourhood term must have type Seq->Nat, found " + actual.to_string());
  if (contains_omega(gamma)) throw Error("neighbourhood term must be Omega-free");
  auto impl = std::make_shared<Impl>();
  impl->term = gamma;
  impl->compiled = eval(gamma);
  impl->name = "term";
  return NbhFn{std::move(impl)};
}

Nat NbhFn::query(const Seq& a) const {
  if (impl_->compiled) {
    // Non-owning view of the caller's sequence. Safe: gamma : Seq->Nat, so
    // the application returns a plain natural and nothing built during the
    // call survives it.
    std::shared_ptr<const Seq> view(std::shared_ptr<const Seq>{}, &a);
    return impl_->compiled->apply(Value(std::move(view))).nat();
  }
  return impl_->host(a);
}

bool NbhFn::term_backed() const { return impl_->term.has_value(); }

const Term& NbhFn::term() const {
  if (!impl_->term) throw HostBacked();
  return *impl_->term;
}

const std::string& NbhFn::label() const { return impl_->name; }

std::string emit_source(const NbhFn& n) { return pretty(n.term()); }

// ---------------------------------------------------------------------------
// Builders: higher-order abstract syntax over de Bruijn levels.
// A builder produces the term for a given binder depth; a bound variable is
// the builder that always returns its fixed level.
// ---------------------------------------------------------------------------

namespace {

using B = std::function<Term(std::size_t)>;

Term hint_preserving_shift(const Term& t, std::size_t by) {
  if (by == 0) return t;
  switch (t.kind()) {
    case TermKind::Var: return Term::var(t.var_level() + by);
    case TermKind::Lam: {
      Term body = hint_preserving_shift(t.lam_body(), by);
      if (auto h = t.native_hint()) return Term::lam(t.lam_dom(), body, *h);
      return Term::lam(t.lam_dom(), body);
    }
    case TermKind::App:
      return Term::app(hint_preserving_shift(t.app_fn(), by),
                       hint_preserving_shift(t.app_arg(), by));
    default: return t;
  }
}

// Embeds a closed term under `depth` binders.
B closed(const Term& t) {
  return [t](std::size_t d) { return hint_preserving_shift(t, d); };
}

B lam_b(const Type& dom, const std::function<B(B)>& f) {
  return [dom, f](std::size_t d) {
    B var = [d](std::size_t) { return Term::var(d); };
    return Term::lam(dom, f(var)(d + 1));
  };
}

B app_b(const B& f, const B& a) {
  return [f, a](std::size_t d) { return Term::app(f(d), a(d)); };
}

B app_b(const B& f, const B& a, const B& b) { return app_b(app_b(f, a), b); }

Term build_closed(const B& b, std::optional<NativeOp> hint = std::nullopt) {
  Term t = b(0);
  if (!hint) return t;
  return Term::lam(t.lam_dom(), t.lam_body(), *hint);
}

const Type& nat_ty() {
  static const Type t = Type::nat();
  return t;
}
const Type& seq_ty() {
  static const Type t = Type::seq();
  return t;
}
const Type& nat_dag() {  // Seq -> Nat
  static const Type t = Type::arrow(Type::seq(), Type::nat());
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Arithmetic macros
// ---------------------------------------------------------------------------

Term pred_term() {
  // \n. Rec[Nat] 0 (\k. \r. k) n
  static const Term t = build_closed(
      lam_b(nat_ty(),
            [](B n) {
              return app_b(app_b(closed(Term::rec(nat_ty())), closed(Term::zero()),
                                 lam_b(nat_ty(),
                                       [](B k) {
                                         return lam_b(nat_ty(), [k](B) { return k; });
                                       })),
                           n);
            }),
      NativeOp::Pred);
  return t;
}

Term sg_term() {
  // \n. Rec[Nat] 0 (\k. \r. Succ 0) n
  static const Term t = build_closed(
      lam_b(nat_ty(),
            [](B n) {
              return app_b(app_b(closed(Term::rec(nat_ty())), closed(Term::zero()),
                                 lam_b(nat_ty(),
                                       [](B) {
                                         return lam_b(nat_ty(), [](B) {
                                           return closed(Term::app(Term::succ(), Term::zero()));
                                         });
                                       })),
                           n);
            }),
      NativeOp::Sg);
  return t;
}

Term monus_term() {
  // \m. \n. Rec[Nat] m (\k. \r. pred r) n
  static const Term t = build_closed(
      lam_b(nat_ty(),
            [](B m) {
              return lam_b(nat_ty(), [m](B n) {
                return app_b(app_b(closed(Term::rec(nat_ty())), m,
                                   lam_b(nat_ty(),
                                         [](B) {
                                           return lam_b(nat_ty(), [](B r) {
                                             return app_b(closed(pred_term()), r);
                                           });
                                         })),
                             n);
              });
            }),
      NativeOp::Monus);
  return t;
}

Term plus_term() {
  // \m. \n. Rec[Nat] m (\k. \r. Succ r) n
  static const Term t = build_closed(
      lam_b(nat_ty(),
            [](B m) {
              return lam_b(nat_ty(), [m](B n) {
                return app_b(app_b(closed(Term::rec(nat_ty())), m,
                                   lam_b(nat_ty(),
                                         [](B) {
                                           return lam_b(nat_ty(), [](B r) {
                                             return app_b(closed(Term::succ()), r);
                                           });
                                         })),
                             n);
              });
            }),
      NativeOp::Plus);
  return t;
}

Term times_term() {
  // \m. \n. Rec[Nat] 0 (\k. \r. plus r m) n
  static const Term t = build_closed(
      lam_b(nat_ty(),
            [](B m) {
              return lam_b(nat_ty(), [m](B n) {
                return app_b(app_b(closed(Term::rec(nat_ty())), closed(Term::zero()),
                                   lam_b(nat_ty(),
                                         [m](B) {
                                           return lam_b(nat_ty(), [m](B r) {
                                             return app_b(closed(plus_term()), r, m);
                                           });
                                         })),
                             n);
              });
            }),
      NativeOp::Times);
  return t;
}

// ---------------------------------------------------------------------------
// Model combinators
// ---------------------------------------------------------------------------

Term eta_term() {
  // \x. \a. Succ x
  static const Term t = build_closed(
      lam_b(nat_ty(),
            [](B x) {
              return lam_b(seq_ty(), [x](B) { return app_b(closed(Term::succ()), x); });
            }),
      NativeOp::NbhEta);
  return t;
}

Term at_term() {
  // \n. \a. times (sg (monus (len a) n)) (Succ (get a n))
  static const Term t = build_closed(
      lam_b(nat_ty(),
            [](B n) {
              return lam_b(seq_ty(), [n](B a) {
                B guard = app_b(closed(sg_term()),
                                app_b(closed(monus_term()),
                                      app_b(closed(Term::len_c()), a), n));
                B hit = app_b(closed(Term::succ()),
                              app_b(closed(Term::get_c()), a, n));
                return app_b(closed(times_term()), guard, hit);
              });
            }),
      NativeOp::NbhAt);
  return t;
}

Term ke_nat_term() {
  // \f. \g. \a. times (sg (g a)) (f (monus (g a) (Succ 0)) a)
  static const Term t = build_closed(
      lam_b(Type::arrow(nat_ty(), nat_dag()),
            [](B f) {
              return lam_b(nat_dag(), [f](B g) {
                return lam_b(seq_ty(), [f, g](B a) {
                  B ga = app_b(g, a);
                  B guard = app_b(closed(sg_term()), ga);
                  B predecessor =
                      app_b(closed(monus_term()), ga,
                            closed(Term::app(Term::succ(), Term::zero())));
                  B hit = app_b(app_b(f, predecessor), a);
                  return app_b(closed(times_term()), guard, hit);
                });
              });
            }),
      NativeOp::NbhKe);
  return t;
}

Term gen_term() {
  // KE_Nat At
  static const Term t = Term::app(ke_nat_term(), at_term());
  return t;
}

// ---------------------------------------------------------------------------
// Type and term translation
// ---------------------------------------------------------------------------

Type dagger_type(const Type& rho) {
  switch (rho.kind()) {
    case TypeKind::Nat: return nat_dag();
    case TypeKind::Seq: throw SeqInSource("Seq has no dagger translation");
    case TypeKind::Arrow: return Type::arrow(dagger_type(rho.dom()), dagger_type(rho.cod()));
  }
  throw SeqInSource("unreachable");
}

Context dagger_context(const Context& ctx) {
  Context out;
  out.reserve(ctx.size());
  for (const Type& rho : ctx) out.push_back(dagger_type(rho));
  return out;
}

Term ke_at_type(const Type& rho) {
  if (rho.contains_seq()) throw SeqInSource("KE is defined over Nat-only types");
  if (rho.is_nat()) return ke_nat_term();

  static std::mutex cache_mutex;
  static std::map<std::string, Term> cache;
  std::string key = rho.to_string();
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  // \f : Nat -> rho†. \u : Nat†. \v : sigma†. KE_tau (\x. f x v) u
  Type sigma = rho.dom();
  Type tau = rho.cod();
  Term ke_tau = ke_at_type(tau);
  Term result = build_closed(lam_b(
      Type::arrow(nat_ty(), dagger_type(rho)), [&](B f) {
        return lam_b(nat_dag(), [&, f](B u) {
          return lam_b(dagger_type(sigma), [&, f, u](B v) {
            B inner = lam_b(nat_ty(), [f, v](B x) { return app_b(app_b(f, x), v); });
            return app_b(app_b(closed(ke_tau), inner), u);
          });
        });
      }));

  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(key, result);
  return result;
}

namespace {

Term dagger_rec(const Type& rho, std::size_t depth) {
  // \u : rho†. \F : Nat† -> rho† -> rho†. KE_rho (Rec[rho†] u (\x. F (eta x)))
  Type rho_dag = dagger_type(rho);
  B built = lam_b(rho_dag, [&](B u) {
    return lam_b(Type::arrow(nat_dag(), Type::arrow(rho_dag, rho_dag)), [&, u](B f_step) {
      B step = lam_b(nat_ty(), [f_step](B x) {
        return app_b(f_step, app_b(closed(eta_term()), x));
      });
      // Rec[rho†] u step : Nat -> rho†; KE_rho lifts it to Nat† -> rho†
      return app_b(closed(ke_at_type(rho)),
                   app_b(closed(Term::rec(rho_dag)), u, step));
    });
  });
  return built(depth);
}

Term dagger_go(const Term& t, std::size_t depth) {
  switch (t.kind()) {
    case TermKind::Var: return Term::var(t.var_level());
    case TermKind::Lam:
      return Term::lam(dagger_type(t.lam_dom()), dagger_go(t.lam_body(), depth + 1));
    case TermKind::App:
      return Term::app(dagger_go(t.app_fn(), depth), dagger_go(t.app_arg(), depth));
    case TermKind::Zero:
      return hint_preserving_shift(Term::app(eta_term(), Term::zero()), depth);
    case TermKind::Succ: {
      // KE_Nat (\x. eta (Succ x))
      static const Term succ_dag = Term::app(
          ke_nat_term(),
          build_closed(lam_b(nat_ty(),
                             [](B x) {
                               return app_b(closed(eta_term()),
                                            app_b(closed(Term::succ()), x));
                             }),
                       NativeOp::NbhEtaSucc));
      return hint_preserving_shift(succ_dag, depth);
    }
    case TermKind::Omega: return hint_preserving_shift(gen_term(), depth);
    case TermKind::Rec: return dagger_rec(t.rec_type(), depth);
    case TermKind::EmptySeq:
    case TermKind::Snoc:
    case TermKind::Len:
    case TermKind::Get: throw SeqInSource("Seq primitive has no dagger translation");
  }
  throw SeqInSource("unreachable");
}

}  // namespace

Term dagger_term(const Term& t, const Context& ctx) {
  for (const Type& rho : ctx)
    if (rho.contains_seq()) throw SeqInSource("Seq-typed context entry in dagger translation");
  if (mentions_seq(t)) throw SeqInSource("Seq in source term of dagger translation");
  typecheck(ctx, t);  // reject ill-typed input up front
  return dagger_go(t, ctx.size());
}

NbhFn neighbourhood_term(const Term& y) {
  Type expected = Type::arrow(Type::arrow(Type::nat(), Type::nat()), Type::nat());
  Type actual = typecheck({}, y);
  if (actual != expected)
    throw TypeError("expected a closed term of type (Nat->Nat)->Nat, found " +
                    actual.to_string());
  if (contains_omega(y)) throw Error("term must be Omega-free");
  Term gamma = dagger_term(Term::app(y, Term::omega()), {});
  return NbhFn::from_term(gamma);
}

}  // namespace systemt
