#include "systemt/brouwer.hpp"

#include <map>
#include <mutex>

#include <json.hpp>

#include "systemt/errors.hpp"
#include "systemt/semantics.hpp"

namespace systemt {

BrouwerOp BrouwerOp::leaf(Nat n) {
  return BrouwerOp{std::make_shared<const Rep>(Rep{true, std::move(n), nullptr})};
}

BrouwerOp BrouwerOp::sup(Branch branch) {
  return BrouwerOp{std::make_shared<const Rep>(Rep{false, Nat(0), std::move(branch)})};
}

const Nat& BrouwerOp::leaf_value() const {
  if (!rep_->is_leaf) throw Error("sup node has no leaf value");
  return rep_->n;
}

BrouwerOp BrouwerOp::branch(const Nat& entry) const {
  if (rep_->is_leaf) throw Error("leaf has no branches");
  return rep_->branch(entry);
}

BrouwerOp skip(const BrouwerOp& t, const Seq& a) {
  BrouwerOp cur = t;
  for (const Nat& x : a) {
    if (cur.is_leaf()) return cur;  // a leaf absorbs the rest of the skips
    cur = cur.branch(x);
  }
  return cur;
}

BrouwerOp aux(const std::function<BrouwerOp(const Nat&)>& f, const BrouwerOp& t, const Seq& a) {
  if (t.is_leaf()) return skip(f(t.leaf_value()), a);
  return BrouwerOp::sup([f, t, a](const Nat& x) { return aux(f, t.branch(x), snoc(a, x)); });
}

BrouwerOp ke_brouwer(const std::function<BrouwerOp(const Nat&)>& f, const BrouwerOp& t) {
  return aux(f, t, Seq{});
}

BrouwerOp at_bt(const Nat& n) {
  if (n == 0) return BrouwerOp::sup([](const Nat& x) { return BrouwerOp::leaf(x); });
  Nat below = n - 1;
  return BrouwerOp::sup([below](const Nat&) { return at_bt(below); });
}

BrouwerOp brouwer_of(const Term& y) { return NonStandard<BrouwerModel>::of_functional(y); }

Nat beval(const BrouwerOp& t, const Oracle& alpha, std::uint64_t fuel) {
  BrouwerOp cur = t;
  Nat pos = 0;
  while (!cur.is_leaf()) {
    if (fuel-- == 0) throw FuelExhausted("beval exceeded its depth budget");
    cur = cur.branch(alpha(pos));
    ++pos;
  }
  return cur.leaf_value();
}

NbhFn delta(const BrouwerOp& t) {
  return NbhFn::from_host(
      [t](const Seq& a) -> Nat {
        BrouwerOp cur = t;
        for (const Nat& x : a) {
          if (cur.is_leaf()) break;
          cur = cur.branch(x);
        }
        if (cur.is_leaf()) return Nat(cur.leaf_value() + 1);
        return Nat(0);
      },
      "delta");
}

BrouwerOp memoize_branches(const BrouwerOp& t) {
  if (t.is_leaf()) return t;
  auto cache = std::make_shared<std::map<Nat, BrouwerOp>>();
  auto lock = std::make_shared<std::mutex>();
  return BrouwerOp::sup([t, cache, lock](const Nat& x) {
    std::lock_guard<std::mutex> guard(*lock);
    auto it = cache->find(x);
    if (it != cache->end()) return it->second;
    BrouwerOp forced = memoize_branches(t.branch(x));
    cache->emplace(x, forced);
    return forced;
  });
}

namespace {

nlohmann::json nat_json(const Nat& n) {
  if (fits_u64(n)) return nlohmann::json(to_u64(n));
  return nlohmann::json(n.str());
}

nlohmann::json dump(const BrouwerOp& t, std::size_t width, std::size_t depth) {
  if (t.is_leaf()) return nlohmann::json{{"leaf", nat_json(t.leaf_value())}};
  if (depth == 0) return nlohmann::json("truncated");
  nlohmann::json branches = nlohmann::json::object();
  for (std::size_t i = 0; i < width; ++i)
    branches[std::to_string(i)] = dump(t.branch(Nat(i)), width, depth - 1);
  branches["..."] = "truncated";
  return nlohmann::json{{"sup", branches}};
}

}  // namespace

std::string brouwer_json(const BrouwerOp& t, std::size_t width, std::size_t depth) {
  return dump(t, width, depth).dump();
}

}  // namespace systemt
