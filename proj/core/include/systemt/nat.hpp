#ifndef SYSTEMT_NAT_HPP
#define SYSTEMT_NAT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace systemt {

/// Arbitrary-precision natural number. The object language has no negatives;
/// operations that could underflow (monus) clamp at zero.
using Nat = boost::multiprecision::cpp_int;

/// A finite sequence of naturals (the object-language Seq values).
using Seq = std::vector<Nat>;

inline Nat monus(const Nat& a, const Nat& b) { return a > b ? Nat(a - b) : Nat(0); }

inline Nat sg(const Nat& a) { return a > 0 ? 1 : 0; }

inline Seq concat(const Seq& a, const Seq& b) {
  Seq out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Seq snoc(const Seq& a, const Nat& x) {
  Seq out = a;
  out.push_back(x);
  return out;
}

/// Renders "⟨1,2,3⟩"-style sequences as plain ASCII: "<1,2,3>".
std::string seq_to_string(const Seq& a);

/// Parses "1,2,3"; "" and "-" denote the empty sequence.
Seq seq_from_string(const std::string& text);

/// True when n fits in uint64_t; used for loop bounds and hashing.
bool fits_u64(const Nat& n);
std::uint64_t to_u64(const Nat& n);

}  // namespace systemt

#endif
