#ifndef SYSTEMT_ORACLE_HPP
#define SYSTEMT_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "systemt/nat.hpp"

namespace systemt {

/// A point of the Baire space: total function from indices to naturals.
using Oracle = std::function<Nat(const Nat&)>;

/// Parses a CLI oracle spec:
///   "id"            alpha(i) = i
///   "const:<n>"     alpha(i) = n
///   "step:<n>"      alpha(i) = 1 if i < n, else 0
///   "list:<n1,n2>"  listed values, then 0s
///   "seeded:<s>"    deterministic pseudorandom values in 0..255
Oracle oracle_from_spec(const std::string& spec);

Oracle oracle_id();
Oracle oracle_const(Nat n);
Oracle oracle_step(Nat n);
Oracle oracle_list(Seq values);

/// Deterministic, query-order independent: alpha(i) = hash(seed, i) % (bound).
Oracle oracle_seeded(std::uint64_t seed, std::uint64_t bound = 256);

/// a * alpha — the entries of a, then alpha shifted past them.
Oracle prepend(Seq a, Oracle alpha);

/// a * (\n. 0) — the entries of a, then zeros.
Oracle append_zeros(Seq a);

/// \x. alpha(x + k).
Oracle shift(Oracle alpha, Nat k);

/// Initial segment of length n.
Seq prefix_of(const Oracle& alpha, std::uint64_t n);

/// Mixing function behind oracle_seeded; also used by test samplers.
std::uint64_t mix_u64(std::uint64_t seed, std::uint64_t x);

/// Stable hash of a possibly huge index for seeded oracles.
std::uint64_t hash_nat(std::uint64_t seed, const Nat& n);

}  // namespace systemt

#endif
