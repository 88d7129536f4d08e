#ifndef SYSTEMT_CORPUS_HPP
#define SYSTEMT_CORPUS_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "systemt/syntax.hpp"

namespace systemt {

struct CorpusEntry {
  std::string name;  // file name without extension
  std::filesystem::path path;
  std::string description;
  Term term;
  std::map<std::string, Nat> expected;  // oracle spec -> expected value
};

/// Loads corpus/<manifest.json>, parses and typechecks every listed .st
/// file. Every entry must typecheck at (Nat->Nat)->Nat; any failure aborts
/// with the offending file name.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

}  // namespace systemt

#endif
