#ifndef SYSTEMT_DIALOGUE_HPP
#define SYSTEMT_DIALOGUE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "systemt/oracle.hpp"
#include "systemt/syntax.hpp"

namespace systemt {

inline constexpr std::uint64_t kDefaultTreeFuel = 1'000'000;

/// Well-founded computation tree: a leaf carries the result, an internal
/// node queries the input at `label` and continues along the branch for the
/// answer. Branches are lazy, total, and may be forced from any thread.
class DialogueTree {
 public:
  using Branch = std::function<DialogueTree(const Nat&)>;

  static DialogueTree leaf(Nat n);
  static DialogueTree node(Nat label, Branch branch);

  bool is_leaf() const { return rep_->is_leaf; }
  const Nat& leaf_value() const;
  const Nat& label() const;
  DialogueTree branch(const Nat& answer) const;

 private:
  struct Rep {
    bool is_leaf;
    Nat n;  // leaf value or node label
    Branch branch;
  };
  explicit DialogueTree(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

/// Interprets a closed, Omega-free Y : (Nat->Nat)->Nat as a dialogue tree.
DialogueTree dialogue_of(const Term& y);

/// Runs the tree against an oracle: a leaf returns its value, a node
/// continues along branch(alpha(label)).
Nat deval(const DialogueTree& t, const Oracle& alpha, std::uint64_t fuel = kDefaultTreeFuel);

/// Kleisli extension: leaves n are replaced by f(n), nodes are kept with
/// lazily extended branches.
DialogueTree ke_dialogue(const std::function<DialogueTree(const Nat&)>& f,
                         const DialogueTree& t);

/// The input-reading tree: one query at index n, answering with the answer.
DialogueTree at_dialogue(const Nat& n);

/// The (label, answer) pairs along the unique play of alpha to a leaf.
std::vector<std::pair<Nat, Nat>> path_of(const DialogueTree& t, const Oracle& alpha,
                                         std::uint64_t fuel = kDefaultTreeFuel);

/// Wraps every branch in a synchronized cache. Off by default: countable
/// branching trades memory for repeated-play speed.
DialogueTree memoize_branches(const DialogueTree& t);

/// {"leaf": n} | {"label": n, "branches": {"0": ..., "...": "truncated"}};
/// subtrees below `depth` render as "truncated".
std::string dialogue_json(const DialogueTree& t, std::size_t width = 3, std::size_t depth = 8);

/// Model structure for the shared interpretation engine.
struct DialogueModel {
  using TN = DialogueTree;
  static TN eta(const Nat& n) { return DialogueTree::leaf(n); }
  static TN at(const Nat& n) { return at_dialogue(n); }
  static TN ke(std::function<TN(const Nat&)> f, const TN& t) {
    return ke_dialogue(f, t);
  }
};

}  // namespace systemt

#endif
