#ifndef SYSTEMT_ERRORS_HPP
#define SYSTEMT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace systemt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Lexical or grammatical error in concrete syntax; positions are 1-based.
struct SyntaxError : Error {
  SyntaxError(const std::string& what, int line, int column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// A name that is neither bound nor a constant.
struct UnknownIdentifier : SyntaxError {
  UnknownIdentifier(const std::string& name, int line, int column)
      : SyntaxError("unknown identifier '" + name + "'", line, column), name(name) {}
  std::string name;
};

struct TypeError : Error {
  using Error::Error;
};

struct TypeMismatch : TypeError {
  TypeMismatch(const std::string& expected, const std::string& found, const std::string& location)
      : TypeError("type mismatch: expected " + expected + ", found " + found + " (" + location + ")"),
        expected(expected),
        found(found),
        location(location) {}
  std::string expected;
  std::string found;
  std::string location;
};

struct UnboundVariable : TypeError {
  explicit UnboundVariable(std::size_t level)
      : TypeError("unbound variable at level " + std::to_string(level)), level(level) {}
  std::size_t level;
};

/// A step or depth budget ran out. The object language is total, so on
/// well-formed inputs this signals a budget chosen too small (or a
/// hand-built non-well-founded tree).
struct FuelExhausted : Error {
  using Error::Error;
};

/// The term mentions Omega but no oracle was supplied.
struct OracleMissing : Error {
  OracleMissing() : Error("term contains Omega but no oracle was supplied") {}
};

/// The non-standard interpretations and the dagger translation are defined
/// over types built from Nat only.
struct SeqInSource : Error {
  using Error::Error;
};

/// Requested the underlying term of a host-backed neighbourhood function.
struct HostBacked : Error {
  HostBacked() : Error("neighbourhood function is host-backed; no term available") {}
};

}  // namespace systemt

#endif
