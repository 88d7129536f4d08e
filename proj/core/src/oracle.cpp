#include "systemt/oracle.hpp"

#include "systemt/errors.hpp"

namespace systemt {

Oracle oracle_id() {
  return [](const Nat& i) { return i; };
}

Oracle oracle_const(Nat n) {
  return [n](const Nat&) { return n; };
}

Oracle oracle_step(Nat n) {
  return [n](const Nat& i) { return i < n ? Nat(1) : Nat(0); };
}

Oracle oracle_list(Seq values) {
  return [values](const Nat& i) {
    if (!fits_u64(i) || to_u64(i) >= values.size()) return Nat(0);
    return values[static_cast<std::size_t>(to_u64(i))];
  };
}

std::uint64_t mix_u64(std::uint64_t seed, std::uint64_t x) {
  // splitmix64 over seed ^ rotated input
  std::uint64_t z = seed ^ (x + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_nat(std::uint64_t seed, const Nat& n) {
  if (fits_u64(n)) return mix_u64(seed, to_u64(n));
  std::uint64_t h = seed;
  for (char c : n.str()) h = mix_u64(h, static_cast<std::uint64_t>(c));
  return h;
}

Oracle oracle_seeded(std::uint64_t seed, std::uint64_t bound) {
  if (bound == 0) bound = 1;
  return [seed, bound](const Nat& i) { return Nat(hash_nat(seed, i) % bound); };
}

Oracle oracle_from_spec(const std::string& spec) {
  if (spec == "id") return oracle_id();
  auto split = spec.find(':');
  if (split != std::string::npos) {
    std::string head = spec.substr(0, split);
    std::string rest = spec.substr(split + 1);
    if (head == "const") return oracle_const(Nat(rest));
    if (head == "step") return oracle_step(Nat(rest));
    if (head == "list") return oracle_list(seq_from_string(rest));
    if (head == "seeded") return oracle_seeded(std::stoull(rest));
  }
  throw Error("bad oracle spec '" + spec +
              "' (expected id | const:<n> | step:<n> | list:<n1,n2,...> | seeded:<seed>)");
}

Oracle prepend(Seq a, Oracle alpha) {
  return [a, alpha](const Nat& i) {
    if (fits_u64(i) && to_u64(i) < a.size()) return a[static_cast<std::size_t>(to_u64(i))];
    return alpha(Nat(i - a.size()));
  };
}

Oracle append_zeros(Seq a) {
  return [a](const Nat& i) {
    if (fits_u64(i) && to_u64(i) < a.size()) return a[static_cast<std::size_t>(to_u64(i))];
    return Nat(0);
  };
}

Oracle shift(Oracle alpha, Nat k) {
  return [alpha, k](const Nat& i) { return alpha(Nat(i + k)); };
}

Seq prefix_of(const Oracle& alpha, std::uint64_t n) {
  Seq out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(alpha(Nat(i)));
  return out;
}

}  // namespace systemt
