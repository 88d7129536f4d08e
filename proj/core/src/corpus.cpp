#include "systemt/corpus.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "systemt/errors.hpp"

namespace systemt {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  std::filesystem::path manifest_path = dir / "manifest.json";
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad corpus manifest " + manifest_path.string() + ": " + e.what());
  }

  Type functional = Type::arrow(Type::arrow(Type::nat(), Type::nat()), Type::nat());
  std::vector<CorpusEntry> entries;
  for (const auto& item : manifest.at("entries")) {
    std::string file = item.at("file").get<std::string>();
    std::filesystem::path path = dir / file;
    std::string name = std::filesystem::path(file).stem().string();
    std::string description = item.value("description", "");
    std::optional<Term> term;
    try {
      term = parse_term(read_file(path));
      Type ty = typecheck({}, *term);
      if (ty != functional)
        throw TypeError("corpus terms must have type (Nat->Nat)->Nat, found " + ty.to_string());
      if (contains_omega(*term)) throw Error("corpus terms must be Omega-free");
    } catch (const Error& e) {
      throw Error(path.string() + ": " + e.what());
    }
    std::map<std::string, Nat> expected;
    if (item.contains("expected")) {
      for (const auto& [spec, value] : item.at("expected").items()) {
        if (value.is_number_unsigned())
          expected[spec] = Nat(value.get<std::uint64_t>());
        else
          expected[spec] = Nat(value.get<std::string>());
      }
    }
    entries.push_back(CorpusEntry{std::move(name), std::move(path), std::move(description),
                                  std::move(*term), std::move(expected)});
  }
  if (entries.empty()) throw Error("corpus manifest lists no entries: " + manifest_path.string());
  return entries;
}

}  // namespace systemt
