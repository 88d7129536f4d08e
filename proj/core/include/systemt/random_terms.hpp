#ifndef SYSTEMT_RANDOM_TERMS_HPP
#define SYSTEMT_RANDOM_TERMS_HPP

#include <random>

#include "systemt/syntax.hpp"

namespace systemt {

struct TermGenOptions {
  bool allow_seq = false;    // Seq types and primitives in the generated term
  bool allow_omega = true;   // the Omega constant
  unsigned max_depth = 10;   // syntactic nesting bound
};

/// A random type built from Nat (and Seq when allowed) with arrows.
Type random_type(std::mt19937_64& rng, unsigned depth, bool allow_seq = false);

/// Goal-directed synthesis of a well-typed term of the given type in the
/// given context. Always succeeds: at depth 0 a canonical inhabitant of the
/// goal is produced.
Term random_well_typed(std::mt19937_64& rng, const Context& ctx, const Type& goal,
                       const TermGenOptions& options);

}  // namespace systemt

#endif
