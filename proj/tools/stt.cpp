// stt — command line front end for the System T continuity toolkit.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "systemt/analysis.hpp"
#include "systemt/brouwer.hpp"
#include "systemt/corpus.hpp"
#include "systemt/dialogue.hpp"

using namespace systemt;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Term load_term(const std::string& path) { return parse_term(read_file(path)); }

Term load_functional(const std::string& path) {
  Term t = load_term(path);
  Type want = Type::arrow(Type::arrow(Type::nat(), Type::nat()), Type::nat());
  Type got = typecheck({}, t);
  if (got != want)
    throw TypeError(path + ": expected type (Nat->Nat)->Nat, found " + got.to_string());
  return t;
}

json nat_json(const Nat& n) {
  if (fits_u64(n)) return json(to_u64(n));
  return json(n.str());
}

json seq_json(const Seq& a) {
  json out = json::array();
  for (const Nat& x : a) out.push_back(nat_json(x));
  return out;
}

std::string value_to_string(const Value& v, const Type& ty) {
  if (v.is_nat()) return v.nat().str();
  if (v.is_seq()) return seq_to_string(v.seq());
  return "<function : " + ty.to_string() + ">";
}

void render_dialogue(const DialogueTree& t, std::string indent, std::size_t width,
                     std::size_t depth, std::ostream& os) {
  if (t.is_leaf()) {
    os << indent << t.leaf_value().str() << "\n";
    return;
  }
  if (depth == 0) {
    os << indent << "...\n";
    return;
  }
  os << indent << "? " << t.label().str() << "\n";
  for (std::size_t i = 0; i < width; ++i) {
    os << indent << "  [" << i << "]\n";
    render_dialogue(t.branch(Nat(i)), indent + "    ", width, depth - 1, os);
  }
  os << indent << "  [...] truncated\n";
}

void render_brouwer(const BrouwerOp& t, std::string indent, std::size_t width, std::size_t depth,
                    std::ostream& os) {
  if (t.is_leaf()) {
    os << indent << t.leaf_value().str() << "\n";
    return;
  }
  if (depth == 0) {
    os << indent << "...\n";
    return;
  }
  os << indent << "sup\n";
  for (std::size_t i = 0; i < width; ++i) {
    os << indent << "  [" << i << "]\n";
    render_brouwer(t.branch(Nat(i)), indent + "    ", width, depth - 1, os);
  }
  os << indent << "  [...] truncated\n";
}

std::function<Nat(const Seq&)> g_from_spec(const std::string& spec) {
  if (spec == "len") return [](const Seq& a) { return Nat(a.size()); };
  if (spec == "sum")
    return [](const Seq& a) {
      Nat s(0);
      for (const Nat& x : a) s += x;
      return s;
    };
  if (spec.rfind("const:", 0) == 0) {
    Nat n(spec.substr(6));
    return [n](const Seq&) { return n; };
  }
  throw Error("bad G spec '" + spec + "' (expected len | sum | const:<n>)");
}

std::function<Nat(const Seq&, const std::function<Nat(const Nat&)>&)> h_from_spec(
    const std::string& spec) {
  if (spec == "max2")
    return [](const Seq&, const std::function<Nat(const Nat&)>& ch) {
      return std::max(ch(Nat(0)), ch(Nat(1)));
    };
  if (spec.rfind("child:", 0) == 0) {
    Nat x(spec.substr(6));
    return [x](const Seq&, const std::function<Nat(const Nat&)>& ch) { return ch(x); };
  }
  if (spec.rfind("const:", 0) == 0) {
    Nat n(spec.substr(6));
    return [n](const Seq&, const std::function<Nat(const Nat&)>&) { return n; };
  }
  throw Error("bad H spec '" + spec + "' (expected child:<x> | max2 | const:<n>)");
}

int run(int argc, char** argv) {
  CLI::App app{"System T continuity toolkit: typecheck, evaluate, and compile closed"
               " functionals (Nat->Nat)->Nat into neighbourhood functions"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit JSON instead of human text");

  std::string file, oracle_spec = "id", out_path, g_spec, h_spec, start_spec, corpus_dir = "corpus";
  std::uint64_t fuel = 10000;
  std::size_t width = 3, tree_depth = 8, trials = 100;
  std::uint64_t seed = 1;
  bool stats = false;
  std::optional<std::uint64_t> eval_fuel;

  auto* c_check = app.add_subcommand("check", "parse and typecheck a term");
  c_check->add_option("file", file, "term file (.st)")->required();

  auto* c_eval = app.add_subcommand("eval", "evaluate a closed term");
  c_eval->add_option("file", file)->required();
  c_eval->add_option("--oracle", oracle_spec,
                     "oracle: id | const:<n> | step:<n> (1 below n, 0 at >= n) | "
                     "list:<n1,n2,...> (listed values then 0s) | seeded:<seed> "
                     "(deterministic pseudorandom in 0..255)");
  c_eval->add_option("--fuel", eval_fuel, "step budget (default: unlimited)");

  auto* c_translate = app.add_subcommand(
      "translate", "emit the neighbourhood-function term gamma of Y : (Nat->Nat)->Nat");
  c_translate->add_option("file", file)->required();
  c_translate->add_option("--out", out_path, "write gamma source here instead of stdout");
  c_translate->add_flag("--stats", stats, "print emitted term size and depth");

  auto* c_modulus = app.add_subcommand("modulus", "modulus of continuity along an oracle");
  c_modulus->add_option("file", file)->required();
  c_modulus->add_option("--oracle", oracle_spec)->required();
  c_modulus->add_option("--fuel", fuel, "prefix length budget");

  auto* c_uc = app.add_subcommand("uc", "uniform-continuity modulus on the Cantor space");
  c_uc->add_option("file", file)->required();
  c_uc->add_option("--fuel", fuel, "depth budget");

  auto* c_dialogue = app.add_subcommand("dialogue", "dump the dialogue tree of Y");
  c_dialogue->add_option("file", file)->required();
  c_dialogue->add_option("--width", width, "branches shown per node");
  c_dialogue->add_option("--depth", tree_depth, "depth shown");

  auto* c_brouwer = app.add_subcommand("brouwer", "dump the Brouwer operation of Y");
  c_brouwer->add_option("file", file)->required();
  c_brouwer->add_option("--width", width, "branches shown per node");
  c_brouwer->add_option("--depth", tree_depth, "depth shown");

  auto* c_barrec = app.add_subcommand("barrec", "run bar recursion with Y as stopping function");
  c_barrec->set_help_flag("--help", "print help");  // frees up --h
  c_barrec->add_option("file", file)->required();
  c_barrec->add_option("--g", g_spec, "base: len | sum | const:<n>")->required();
  c_barrec->add_option("--h", h_spec, "combine: child:<x> | max2 | const:<n>")->required();
  c_barrec->add_option("--start", start_spec, "start sequence, e.g. 1,2,3 (default empty)");
  c_barrec->add_option("--fuel", fuel, "recursion depth budget");

  auto* c_selftest = app.add_subcommand("selftest", "differential check over the corpus");
  c_selftest->add_option("--trials", trials, "random inputs per corpus term");
  c_selftest->add_option("--seed", seed, "sampling seed");
  c_selftest->add_option("--corpus", corpus_dir, "corpus directory");

  // lets --json appear after the subcommand
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (c_check->parsed()) {
    Term t = load_term(file);
    Type ty = typecheck({}, t);
    if (as_json)
      std::cout << json{{"file", file}, {"type", ty.to_string()}}.dump() << "\n";
    else
      std::cout << "ok: " << ty.to_string() << "\n";
    return 0;
  }

  if (c_eval->parsed()) {
    Term t = load_term(file);
    Type ty = typecheck({}, t);
    Oracle alpha = oracle_from_spec(oracle_spec);
    Type functional = Type::arrow(Type::arrow(Type::nat(), Type::nat()), Type::nat());
    Term to_run = ty == functional ? Term::app(t, Term::omega()) : t;
    Type run_ty = ty == functional ? Type::nat() : ty;
    Value v = eval(to_run, &alpha, eval_fuel);
    if (as_json) {
      json j{{"file", file}, {"oracle", oracle_spec}};
      if (v.is_nat()) j["value"] = nat_json(v.nat());
      else if (v.is_seq()) j["value"] = seq_json(v.seq());
      else j["value"] = "<function : " + run_ty.to_string() + ">";
      std::cout << j.dump() << "\n";
    } else {
      std::cout << value_to_string(v, run_ty) << "\n";
    }
    return 0;
  }

  if (c_translate->parsed()) {
    NbhFn gamma = neighbourhood_term(load_functional(file));
    std::string source = emit_source(gamma);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) throw Error("cannot write " + out_path);
      out << source << "\n";
    }
    if (as_json) {
      json j{{"file", file}, {"gamma", source}};
      if (stats) {
        j["size"] = term_size(gamma.term());
        j["depth"] = term_depth(gamma.term());
      }
      std::cout << j.dump() << "\n";
    } else {
      if (out_path.empty()) std::cout << source << "\n";
      if (stats)
        std::cerr << "size " << term_size(gamma.term()) << " nodes, depth "
                  << term_depth(gamma.term()) << "\n";
    }
    return 0;
  }

  if (c_modulus->parsed()) {
    Term y = load_functional(file);
    NbhFn gamma = neighbourhood_term(y);
    ContinuityReport r = modulus(gamma, y, oracle_from_spec(oracle_spec), fuel);
    if (as_json) {
      json idx = json::array();
      for (const Nat& i : r.trace_indices) idx.push_back(nat_json(i));
      std::cout << json{{"file", file},
                        {"oracle", oracle_spec},
                        {"modulus", nat_json(r.modulus)},
                        {"induced_value", nat_json(r.induced_value)},
                        {"trace_indices", idx},
                        {"consistent", r.consistent}}
                       .dump()
                << "\n";
    } else {
      std::cout << "modulus " << r.modulus.str() << ", induced value " << r.induced_value.str()
                << ", traced indices";
      if (r.trace_indices.empty()) std::cout << " (none)";
      for (const Nat& i : r.trace_indices) std::cout << " " << i.str();
      std::cout << (r.consistent ? ", consistent" : ", INCONSISTENT") << "\n";
    }
    return r.consistent ? 0 : 1;
  }

  if (c_uc->parsed()) {
    NbhFn gamma = neighbourhood_term(load_functional(file));
    std::uint64_t n = uc_modulus_cantor(gamma, fuel);
    if (as_json)
      std::cout << json{{"file", file}, {"uc_modulus", n}}.dump() << "\n";
    else
      std::cout << n << "\n";
    return 0;
  }

  if (c_dialogue->parsed()) {
    DialogueTree t = dialogue_of(load_functional(file));
    if (as_json) {
      std::cout << dialogue_json(t, width, tree_depth) << "\n";
    } else {
      render_dialogue(t, "", width, tree_depth, std::cout);
    }
    return 0;
  }

  if (c_brouwer->parsed()) {
    BrouwerOp t = brouwer_of(load_functional(file));
    if (as_json) {
      std::cout << brouwer_json(t, width, tree_depth) << "\n";
    } else {
      render_brouwer(t, "", width, tree_depth, std::cout);
    }
    return 0;
  }

  if (c_barrec->parsed()) {
    BarRecConfig<Nat> cfg{stopping_from_term(load_functional(file)), g_from_spec(g_spec),
                          h_from_spec(h_spec)};
    Seq start = seq_from_string(start_spec);
    auto run = bar_recursor_traced<Nat>(cfg, start, fuel);
    std::string why;
    bool verified = barrec_equation_verified<Nat>(cfg, run, &why);
    if (as_json) {
      std::cout << json{{"file", file},
                        {"start", seq_json(start)},
                        {"value", nat_json(run.result)},
                        {"visited_nodes", run.nodes.size()},
                        {"equation_verified", verified}}
                       .dump()
                << "\n";
    } else {
      std::cout << "BR" << seq_to_string(start) << " = " << run.result.str() << " ("
                << run.nodes.size() << " nodes visited, defining equation "
                << (verified ? "verified" : ("VIOLATED: " + why)) << ")\n";
    }
    return verified ? 0 : 1;
  }

  if (c_selftest->parsed()) {
    auto entries = load_corpus(corpus_dir);
    std::size_t failed = 0;
    json per_term = json::array();
    for (const auto& entry : entries) {
      auto report = differential_check(entry.term, trials, seed);
      bool ok = report.ok();
      if (!ok) ++failed;
      if (as_json) {
        per_term.push_back(json{{"term", entry.name},
                                {"trials", trials},
                                {"mismatches", report.mismatches.size()},
                                {"delta_gamma_pointwise_diffs",
                                 report.delta_gamma_pointwise_diffs}});
      } else {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << entry.name << " (" << trials
                  << " trials, seed " << seed << ")";
        if (!ok) std::cout << " first mismatch: " << report.mismatches.front().detail;
        std::cout << "\n";
      }
    }
    if (as_json)
      std::cout << json{{"seed", seed}, {"failed_terms", failed}, {"terms", per_term}}.dump()
                << "\n";
    else
      std::cout << (failed ? "FAILED" : "all agree") << "\n";
    return failed ? 1 : 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const FuelExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
