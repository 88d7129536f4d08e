#include "systemt/eval.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "systemt/errors.hpp"

namespace systemt {

std::vector<Nat> OracleTrace::index_set() const {
  std::vector<Nat> out;
  for (const auto& q : queries) out.push_back(q.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Oracle OracleTrace::as_partial_oracle() const {
  auto copy = std::make_shared<std::vector<std::pair<Nat, Nat>>>(queries);
  return [copy](const Nat& i) -> Nat {
    for (const auto& q : *copy)
      if (q.first == i) return q.second;
    throw Error("partial oracle queried outside its trace at index " + i.str());
  };
}

namespace {

struct FuelCell {
  std::uint64_t left;
};

struct EvalCtxRep {
  Oracle oracle;  // empty when absent
  std::shared_ptr<FuelCell> fuel;
};
using Ctx = std::shared_ptr<const EvalCtxRep>;

inline void tick(const Ctx& ctx) {
  if (ctx && ctx->fuel) {
    if (ctx->fuel->left == 0) throw FuelExhausted("evaluation step budget exhausted");
    --ctx->fuel->left;
  }
}

struct EnvNode {
  Value v;
  std::shared_ptr<const EnvNode> next;
  std::size_t size;
};
using Env = std::shared_ptr<const EnvNode>;

Env extend(const Env& env, Value v) {
  std::size_t n = env ? env->size : 0;
  return std::make_shared<const EnvNode>(EnvNode{std::move(v), env, n + 1});
}

const Value& lookup(const Env& env, std::size_t level) {
  if (!env || level >= env->size) throw Error("evaluating an ill-scoped variable");
  const EnvNode* node = env.get();
  std::size_t steps = node->size - 1 - level;
  while (steps--) node = node->next.get();
  return node->v;
}

enum class FunKind : std::uint8_t {
  Closure,  // term lambda
  Host,     // std::function supplied from outside
  Succ,
  Rec0, Rec1, Rec2,
  OmegaF,
  Snoc0, Snoc1,
  Len,
  Get0, Get1,
  Sg, Pred,
  Monus0, Monus1,
  Plus0, Plus1,
  Times0, Times1,
  Eta0, Eta1, EtaSucc,
  At0, At1,
  Ke0, Ke1, Ke2,
};

// Results of a pure closure at a natural argument. Only created in
// effect-free evaluations (no oracle, no fuel), where application is
// deterministic and unobservable: Rec closures cache by recursion count,
// KE nodes cache the decoded continuation f(gamma(a)-1), which does not
// depend on a.
struct NatMemo {
  mutable std::shared_mutex guard;
  std::map<Nat, Value> at;
};

}  // namespace

struct Value::FunRep {
  FunKind kind;
  Ctx ctx;                   // closures, Rec loops and KE tick fuel
  std::optional<Term> body;  // Closure
  Env env;                   // Closure
  Nat n;                     // captured natural (Monus1, Eta1, At1, ...)
  std::optional<Value> v1;   // captured values (Rec1/2, Snoc1, Get1, Ke1/2)
  std::optional<Value> v2;
  std::optional<Fun> host;            // Host
  Oracle oracle;                      // OmegaF
  std::shared_ptr<NatMemo> memo;      // Rec2 and Ke2 in pure contexts
};

struct ValueInternal {
  using FunRep = Value::FunRep;
  static Value apply(const FunRep& f, const Value& arg);
  static Value apply_fused(const Value& f, const Value& x, const Value& y);

  static Value fun(FunKind kind) {
    auto rep = std::make_shared<FunRep>();
    rep->kind = kind;
    return Value{std::shared_ptr<const FunRep>(std::move(rep))};
  }
  static Value fun(FunKind kind, Ctx ctx) {
    auto rep = std::make_shared<FunRep>();
    rep->kind = kind;
    rep->ctx = std::move(ctx);
    return Value{std::shared_ptr<const FunRep>(std::move(rep))};
  }
  static Value closure(Term body, Env env, Ctx ctx) {
    auto rep = std::make_shared<FunRep>();
    rep->kind = FunKind::Closure;
    rep->ctx = std::move(ctx);
    rep->body = std::move(body);
    rep->env = std::move(env);
    return Value{std::shared_ptr<const FunRep>(std::move(rep))};
  }
  static Value capture_nat(FunKind kind, Nat n) {
    auto rep = std::make_shared<FunRep>();
    rep->kind = kind;
    rep->n = std::move(n);
    return Value{std::shared_ptr<const FunRep>(std::move(rep))};
  }
  static Value capture1(FunKind kind, const FunRep& base, Value v) {
    auto rep = std::make_shared<FunRep>();
    rep->kind = kind;
    rep->ctx = base.ctx;
    rep->v1 = std::move(v);
    return Value{std::shared_ptr<const FunRep>(std::move(rep))};
  }
  static Value capture2(FunKind kind, const FunRep& base, Value v) {
    auto rep = std::make_shared<FunRep>();
    rep->kind = kind;
    rep->ctx = base.ctx;
    rep->v1 = base.v1;
    rep->v2 = std::move(v);
    bool memoizable = kind == FunKind::Rec2 ||
                      (kind == FunKind::Ke2 && rep->v1 && rep->v1->is_fun() &&
                       rep_of(*rep->v1).kind == FunKind::Closure);
    if (!rep->ctx && memoizable) rep->memo = std::make_shared<NatMemo>();
    return Value{std::shared_ptr<const FunRep>(std::move(rep))};
  }
  static Value omega(Oracle oracle) {
    auto rep = std::make_shared<FunRep>();
    rep->kind = FunKind::OmegaF;
    rep->oracle = std::move(oracle);
    return Value{std::shared_ptr<const FunRep>(std::move(rep))};
  }
  static std::shared_ptr<const FunRep> host_rep(Value::Fun f) {
    auto rep = std::make_shared<FunRep>();
    rep->kind = FunKind::Host;
    rep->host = std::move(f);
    return rep;
  }
  static const FunRep& rep_of(const Value& v) {
    return *static_cast<const FunRep*>(v.ptr_.get());
  }
};

Value::Value(Fun f) : tag_(2), ptr_(ValueInternal::host_rep(std::move(f))) {}

const Nat& Value::nat() const {
  if (!is_nat()) throw Error("value is not a natural");
  return nat_;
}

const Seq& Value::seq() const {
  if (!is_seq()) throw Error("value is not a sequence");
  return *static_cast<const Seq*>(ptr_.get());
}

namespace {
Value go(const Term& t, const Env& env, const Ctx& ctx);
}  // namespace

/// f x y with the intermediate closure allocation saved for two-argument
/// term lambdas and for the curried primitives.
Value ValueInternal::apply_fused(const Value& f, const Value& x, const Value& y) {
  if (f.is_fun()) {
    const FunRep& r = rep_of(f);
    switch (r.kind) {
      case FunKind::Closure:
        if (r.body->kind() == TermKind::Lam && !r.body->native_hint()) {
          tick(r.ctx);
          tick(r.ctx);
          return go(r.body->lam_body(), extend(extend(r.env, x), y), r.ctx);
        }
        break;
      case FunKind::Monus0: return Value(monus(x.nat(), y.nat()));
      case FunKind::Plus0: return Value(Nat(x.nat() + y.nat()));
      case FunKind::Times0: return Value(Nat(x.nat() * y.nat()));
      case FunKind::Eta0:
      case FunKind::EtaSucc: {
        (void)y;
        return Value(Nat(x.nat() + (r.kind == FunKind::Eta0 ? 1 : 2)));
      }
      case FunKind::At0: {
        const Seq& items = y.seq();
        const Nat& n = x.nat();
        if (Nat(items.size()) <= n) return Value(Nat(0));
        return Value(Nat(items[static_cast<std::size_t>(to_u64(n))] + 1));
      }
      case FunKind::Snoc0: return Value(snoc(x.seq(), y.nat()));
      case FunKind::Get0: {
        const Seq& items = x.seq();
        const Nat& i = y.nat();
        if (fits_u64(i) && to_u64(i) < items.size())
          return Value(items[static_cast<std::size_t>(to_u64(i))]);
        return Value(Nat(0));
      }
      default: break;
    }
  }
  return f.apply(x).apply(y);
}

Value ValueInternal::apply(const FunRep& f, const Value& arg) {
  switch (f.kind) {
    case FunKind::Closure:
      tick(f.ctx);
      return go(*f.body, extend(f.env, arg), f.ctx);
    case FunKind::Host: return (*f.host)(arg);
    case FunKind::Succ: return Value(Nat(arg.nat() + 1));

    case FunKind::Rec0: return capture1(FunKind::Rec1, f, arg);
    case FunKind::Rec1: return capture2(FunKind::Rec2, f, arg);
    case FunKind::Rec2: {
      const Nat& count = arg.nat();
      Nat k(0);
      std::optional<Value> acc;
      if (f.memo) {
        std::shared_lock lock(f.memo->guard);
        auto it = f.memo->at.upper_bound(count);
        if (it != f.memo->at.begin()) {
          --it;
          if (it->first == count) return it->second;
          k = it->first;
          acc = it->second;
        }
      }
      if (!acc) acc = *f.v1;
      const Value& step = *f.v2;
      for (; k < count; ++k) {
        tick(f.ctx);
        acc = apply_fused(step, Value(Nat(k)), *acc);
      }
      if (f.memo) {
        std::unique_lock lock(f.memo->guard);
        f.memo->at.emplace(count, *acc);
      }
      return *acc;
    }

    case FunKind::OmegaF: return Value(f.oracle(arg.nat()));

    case FunKind::Snoc0: return capture1(FunKind::Snoc1, f, arg);
    case FunKind::Snoc1: return Value(snoc(f.v1->seq(), arg.nat()));
    case FunKind::Len: return Value(Nat(arg.seq().size()));
    case FunKind::Get0: return capture1(FunKind::Get1, f, arg);
    case FunKind::Get1: {
      const Seq& items = f.v1->seq();
      const Nat& i = arg.nat();
      if (fits_u64(i) && to_u64(i) < items.size())
        return Value(items[static_cast<std::size_t>(to_u64(i))]);
      return Value(Nat(0));  // out-of-range reads default to 0
    }

    // Native meanings of the generated closed macros; each implements
    // exactly the extensional behaviour of the tagged term, as pinned by
    // tests against untagged reparses.
    case FunKind::Sg: return Value(sg(arg.nat()));
    case FunKind::Pred: return Value(monus(arg.nat(), 1));
    case FunKind::Monus0: return capture_nat(FunKind::Monus1, arg.nat());
    case FunKind::Monus1: return Value(monus(f.n, arg.nat()));
    case FunKind::Plus0: return capture_nat(FunKind::Plus1, arg.nat());
    case FunKind::Plus1: return Value(Nat(f.n + arg.nat()));
    case FunKind::Times0: return capture_nat(FunKind::Times1, arg.nat());
    case FunKind::Times1: return Value(Nat(f.n * arg.nat()));

    case FunKind::Eta0: return capture_nat(FunKind::Eta1, Nat(arg.nat() + 1));
    case FunKind::EtaSucc: return capture_nat(FunKind::Eta1, Nat(arg.nat() + 2));
    case FunKind::Eta1: return Value(f.n);
    case FunKind::At0: return capture_nat(FunKind::At1, arg.nat());
    case FunKind::At1: {
      const Seq& items = arg.seq();
      if (Nat(items.size()) <= f.n) return Value(Nat(0));
      return Value(Nat(items[static_cast<std::size_t>(to_u64(f.n))] + 1));
    }
    case FunKind::Ke0: return capture1(FunKind::Ke1, f, arg);
    case FunKind::Ke1: return capture2(FunKind::Ke2, f, arg);
    case FunKind::Ke2: {
      // \a. sg(g a) * f (g a - 1) a, short-circuiting on sg = 0; sound
      // because the language is total and 0 * x = 0
      tick(f.ctx);
      Nat v = f.v2->apply(arg).nat();
      if (v == 0) return Value(Nat(0));
      Nat decoded = monus(v, 1);
      if (f.memo) {
        {
          std::shared_lock lock(f.memo->guard);
          auto it = f.memo->at.find(decoded);
          if (it != f.memo->at.end()) return it->second.apply(arg);
        }
        Value cont = f.v1->apply(Value(decoded));
        {
          std::unique_lock lock(f.memo->guard);
          f.memo->at.emplace(decoded, cont);
        }
        return cont.apply(arg);
      }
      return apply_fused(*f.v1, Value(decoded), arg);
    }
  }
  throw Error("unreachable closure kind");
}

namespace {

Value native_of_hint(NativeOp op, const Ctx& ctx) {
  switch (op) {
    case NativeOp::Sg: return ValueInternal::fun(FunKind::Sg);
    case NativeOp::Pred: return ValueInternal::fun(FunKind::Pred);
    case NativeOp::Monus: return ValueInternal::fun(FunKind::Monus0);
    case NativeOp::Plus: return ValueInternal::fun(FunKind::Plus0);
    case NativeOp::Times: return ValueInternal::fun(FunKind::Times0);
    case NativeOp::NbhEta: return ValueInternal::fun(FunKind::Eta0);
    case NativeOp::NbhEtaSucc: return ValueInternal::fun(FunKind::EtaSucc);
    case NativeOp::NbhAt: return ValueInternal::fun(FunKind::At0);
    case NativeOp::NbhKe: return ValueInternal::fun(FunKind::Ke0, ctx);
  }
  throw Error("unreachable native op");
}

Value go(const Term& t, const Env& env, const Ctx& ctx) {
  switch (t.kind()) {
    case TermKind::Var: return lookup(env, t.var_level());
    case TermKind::Lam: {
      if (auto hint = t.native_hint()) return native_of_hint(*hint, ctx);
      return ValueInternal::closure(t.lam_body(), env, ctx);
    }
    case TermKind::App: {
      Value fn = go(t.app_fn(), env, ctx);
      Value arg = go(t.app_arg(), env, ctx);
      return fn.apply(arg);
    }
    case TermKind::Zero: return Value(Nat(0));
    case TermKind::Succ: return ValueInternal::fun(FunKind::Succ);
    case TermKind::Rec: return ValueInternal::fun(FunKind::Rec0, ctx);
    case TermKind::Omega: {
      if (!ctx || !ctx->oracle) throw OracleMissing();
      return ValueInternal::omega(ctx->oracle);
    }
    case TermKind::EmptySeq: return Value(Seq{});
    case TermKind::Snoc: return ValueInternal::fun(FunKind::Snoc0);
    case TermKind::Len: return ValueInternal::fun(FunKind::Len);
    case TermKind::Get: return ValueInternal::fun(FunKind::Get0);
  }
  throw Error("unreachable term kind in eval");
}

}  // namespace

Value Value::apply(const Value& arg) const {
  if (!is_fun()) throw Error("value is not a function");
  return ValueInternal::apply(ValueInternal::rep_of(*this), arg);
}

Value eval(const Term& t, const Oracle* oracle, std::optional<std::uint64_t> fuel) {
  if (!oracle && contains_omega(t)) throw OracleMissing();
  Ctx ctx;
  if (oracle || fuel) {
    auto rep = std::make_shared<EvalCtxRep>();
    if (oracle) rep->oracle = *oracle;
    if (fuel) rep->fuel = std::make_shared<FuelCell>(FuelCell{*fuel});
    ctx = std::move(rep);
  }
  return go(t, nullptr, ctx);
}

Value eval(const Term& t) { return eval(t, nullptr, std::nullopt); }

Value eval(const Term& t, const Oracle& oracle) { return eval(t, &oracle, std::nullopt); }

Nat eval_nat(const Term& t, const Oracle* oracle, std::optional<std::uint64_t> fuel) {
  return eval(t, oracle, fuel).nat();
}

std::pair<Nat, OracleTrace> eval_nat_traced(const Term& y, const Oracle& oracle,
                                            std::optional<std::uint64_t> fuel) {
  auto trace = std::make_shared<OracleTrace>();
  Oracle recording = [&oracle, trace](const Nat& i) {
    Nat answer = oracle(i);
    trace->queries.emplace_back(i, answer);
    return answer;
  };
  Term applied = Term::app(y, Term::omega());
  Nat result = eval(applied, &recording, fuel).nat();
  return {result, *trace};
}

}  // namespace systemt
