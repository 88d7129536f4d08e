#include "systemt/dialogue.hpp"

#include <map>
#include <mutex>

#include <json.hpp>

#include "systemt/errors.hpp"
#include "systemt/semantics.hpp"

namespace systemt {

DialogueTree DialogueTree::leaf(Nat n) {
  return DialogueTree{std::make_shared<const Rep>(Rep{true, std::move(n), nullptr})};
}

DialogueTree DialogueTree::node(Nat label, Branch branch) {
  return DialogueTree{
      std::make_shared<const Rep>(Rep{false, std::move(label), std::move(branch)})};
}

const Nat& DialogueTree::leaf_value() const {
  if (!rep_->is_leaf) throw Error("dialogue node is not a leaf");
  return rep_->n;
}

const Nat& DialogueTree::label() const {
  if (rep_->is_leaf) throw Error("dialogue leaf has no label");
  return rep_->n;
}

DialogueTree DialogueTree::branch(const Nat& answer) const {
  if (rep_->is_leaf) throw Error("dialogue leaf has no branches");
  return rep_->branch(answer);
}

DialogueTree at_dialogue(const Nat& n) {
  return DialogueTree::node(n, [](const Nat& answer) { return DialogueTree::leaf(answer); });
}

DialogueTree ke_dialogue(const std::function<DialogueTree(const Nat&)>& f,
                         const DialogueTree& t) {
  if (t.is_leaf()) return f(t.leaf_value());
  return DialogueTree::node(t.label(),
                            [f, t](const Nat& x) { return ke_dialogue(f, t.branch(x)); });
}

DialogueTree dialogue_of(const Term& y) {
  return NonStandard<DialogueModel>::of_functional(y);
}

Nat deval(const DialogueTree& t, const Oracle& alpha, std::uint64_t fuel) {
  DialogueTree cur = t;
  while (!cur.is_leaf()) {
    if (fuel-- == 0) throw FuelExhausted("deval exceeded its depth budget");
    cur = cur.branch(alpha(cur.label()));
  }
  return cur.leaf_value();
}

std::vector<std::pair<Nat, Nat>> path_of(const DialogueTree& t, const Oracle& alpha,
                                         std::uint64_t fuel) {
  std::vector<std::pair<Nat, Nat>> play;
  DialogueTree cur = t;
  while (!cur.is_leaf()) {
    if (fuel-- == 0) throw FuelExhausted("path_of exceeded its depth budget");
    Nat answer = alpha(cur.label());
    play.emplace_back(cur.label(), answer);
    cur = cur.branch(answer);
  }
  return play;
}

DialogueTree memoize_branches(const DialogueTree& t) {
  if (t.is_leaf()) return t;
  auto cache = std::make_shared<std::map<Nat, DialogueTree>>();
  auto lock = std::make_shared<std::mutex>();
  return DialogueTree::node(t.label(), [t, cache, lock](const Nat& x) {
    std::lock_guard<std::mutex> guard(*lock);
    auto it = cache->find(x);
    if (it != cache->end()) return it->second;
    DialogueTree forced = memoize_branches(t.branch(x));
    cache->emplace(x, forced);
    return forced;
  });
}

namespace {

nlohmann::json nat_json(const Nat& n) {
  if (fits_u64(n)) return nlohmann::json(to_u64(n));
  return nlohmann::json(n.str());
}

nlohmann::json dump(const DialogueTree& t, std::size_t width, std::size_t depth) {
  if (t.is_leaf()) return nlohmann::json{{"leaf", nat_json(t.leaf_value())}};
  if (depth == 0) return nlohmann::json("truncated");
  nlohmann::json branches = nlohmann::json::object();
  for (std::size_t i = 0; i < width; ++i)
    branches[std::to_string(i)] = dump(t.branch(Nat(i)), width, depth - 1);
  branches["..."] = "truncated";
  return nlohmann::json{{"label", nat_json(t.label())}, {"branches", branches}};
}

}  // namespace

std::string dialogue_json(const DialogueTree& t, std::size_t width, std::size_t depth) {
  return dump(t, width, depth).dump();
}

}  // namespace systemt
