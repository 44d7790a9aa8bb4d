// lvk: command-line front end over the C API in liblvk.
//
// Every subcommand buffers its whole output and writes it once at the end,
// so a failing run leaves stdout empty. Exit status: 0 on success (whatever
// the verdict), 2 for bad input, 3 for an unusable search budget.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lvk/lvk.h"

namespace {

using nlohmann::json;

constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct Failure {
  int exit_code;
  std::string message;
};

struct DiagramDeleter {
  void operator()(lvk_diagram* d) const { lvk_diagram_free(d); }
};
struct StructureDeleter {
  void operator()(lvk_structure* s) const { lvk_structure_free(s); }
};
struct CatalogDeleter {
  void operator()(lvk_catalog* c) const { lvk_catalog_free(c); }
};
using Diagram = std::unique_ptr<lvk_diagram, DiagramDeleter>;
using Structure = std::unique_ptr<lvk_structure, StructureDeleter>;
using Catalog = std::unique_ptr<lvk_catalog, CatalogDeleter>;

int exit_code_for(lvk_status s) {
  return s == LVK_ERR_INVALID_BUDGET ? kExitBudget : kExitInput;
}

void check(lvk_status s, const std::string& context) {
  if (s == LVK_OK) return;
  const int code = s == LVK_ERR_INTERNAL ? 1 : exit_code_for(s);
  throw Failure{code, context + ": " + lvk_status_name(s) + ": " + lvk_last_error()};
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  lvk_string_free(s);
  return out;
}

json take_json(char* s) { return json::parse(take_string(s)); }

struct Input {
  std::string text;
  std::string origin;  // "--code" or "file:line"
  Diagram diagram;
  std::string canonical;
};

Input load(std::string text, std::string origin) {
  lvk_diagram* raw = nullptr;
  check(lvk_diagram_parse(text.c_str(), &raw), origin);
  Diagram d(raw);
  char* s = nullptr;
  check(lvk_diagram_serialize(d.get(), &s), origin);
  return Input{std::move(text), std::move(origin), std::move(d), take_string(s)};
}

// Codes from positional arguments and --code first, then --file lines.
// Files use the corpus convention: '#' starts a comment line and blank lines
// are skipped, so the trivial knot is written "0".
std::vector<Input> gather(const std::vector<std::string>& codes, const std::string& file) {
  std::vector<Input> out;
  for (const std::string& c : codes) out.push_back(load(c, "code '" + c + "'"));
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw Failure{kExitInput, "cannot open " + file};
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      out.push_back(load(line, file + ":" + std::to_string(n)));
    }
  }
  return out;
}

struct BudgetFlags {
  std::optional<std::int64_t> max_crossings, max_states, max_depth;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--max-crossings", max_crossings, "Largest diagram visited (crossings)");
    cmd->add_option("--max-states", max_states, "Number of diagrams visited before giving up");
    cmd->add_option("--max-depth", max_depth, "Longest move sequence explored");
  }

  // Unset bounds fall back to the library default for these inputs.
  lvk_budget resolve(const lvk_diagram* a, const lvk_diagram* b) const {
    lvk_budget budget{};
    check(lvk_budget_default(a, b, &budget), "budget");
    const auto apply = [](const std::optional<std::int64_t>& flag, const char* name, std::uint64_t& slot) {
      if (!flag) return;
      if (*flag < 1) throw Failure{kExitBudget, std::string("invalid budget: ") + name + " must be at least 1"};
      slot = static_cast<std::uint64_t>(*flag);
    };
    apply(max_crossings, "--max-crossings", budget.max_crossings);
    apply(max_states, "--max-states", budget.max_states);
    apply(max_depth, "--max-depth", budget.max_depth);
    return budget;
  }
};

json budget_echo(const lvk_budget& b) {
  return {{"max_crossings", b.max_crossings}, {"max_states", b.max_states}, {"max_depth", b.max_depth}};
}

class Clock {
 public:
  Clock() : start_(std::chrono::steady_clock::now()) {}
  json timings() const {
    const auto dt = std::chrono::steady_clock::now() - start_;
    return {{"wall_ms", std::chrono::duration<double, std::milli>(dt).count()}};
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

json run_report(const std::string& command, const std::vector<const Input*>& inputs, json outputs,
                json budget, const Clock& clock) {
  json in = json::array();
  for (const Input* i : inputs) in.push_back(i->canonical);
  return {{"command", command},
          {"inputs", std::move(in)},
          {"outputs", std::move(outputs)},
          {"budget", std::move(budget)},
          {"timings", clock.timings()}};
}

Catalog catalog_from(const std::vector<std::string>& specs, std::size_t scan_order) {
  lvk_catalog* raw = nullptr;
  if (scan_order > 0) {
    check(lvk_catalog_enumerated(scan_order, &raw), "--scan-structures");
  } else if (specs.empty()) {
    check(lvk_catalog_default(&raw), "catalog");
    return Catalog(raw);
  } else {
    check(lvk_catalog_new(&raw), "catalog");
  }
  Catalog cat(raw);
  for (const std::string& spec : specs) {
    lvk_structure* s = nullptr;
    check(lvk_structure_from_spec(spec.c_str(), &s), "--structure " + spec);
    Structure owned(s);
    check(lvk_catalog_add(cat.get(), owned.get()), "--structure " + spec);
  }
  return cat;
}

// Human-readable rendering of one report.
std::string describe(const json& r) {
  std::ostringstream os;
  const std::string& cmd = r["command"].get_ref<const std::string&>();
  const json& out = r["outputs"];
  auto quoted = [](const json& code) { return "\"" + code.get<std::string>() + "\""; };
  if (cmd == "parse") {
    os << quoted(out["canonical"]) << "  crossings=" << out["crossings"] << "  fingerprint=" << out["fingerprint"].get<std::string>();
  } else if (cmd == "genus") {
    os << quoted(out["code"]) << "  chi=" << out["chi"] << "  boundaries=" << out["boundary_total"]
       << " (distinguished " << out["boundary_distinguished"] << ")  genus=" << out["genus"];
  } else if (cmd == "concat") {
    os << quoted(out["result"]);
  } else if (cmd == "invariants") {
    os << quoted(out["code"]) << "\n  odd writhe: " << out["odd_writhe"];
    for (const json& m : out["coloring_matrices"]) os << "\n  " << m["name"].get<std::string>() << ": " << m["matrix"].dump();
  } else if (cmd == "equiv" || cmd == "commute") {
    os << out["verdict"].get<std::string>();
    if (out.contains("witness")) os << "  witness " << out["witness"].dump();
    if (out.contains("path")) {
      os << "  (" << out["path"].size() << (out["path"].size() == 1 ? " move)" : " moves)");
      for (const json& step : out["path"]) os << "\n  " << step["kind"].get<std::string>() << " -> " << quoted(step["result"]);
    }
    os << "\n  states visited: " << out["states_visited"] << ", stop: " << out["search"]["stop_reason"].get<std::string>();
  } else if (cmd == "prime-scan") {
    os << out["finding"].get<std::string>();
    for (const json& d : out["decompositions"])
      os << "\n  " << quoted(d["left"]) << " [" << d["left_status"].get<std::string>() << "] # " << quoted(d["right"])
         << " [" << d["right_status"].get<std::string>() << "]";
  } else if (cmd == "min-genus") {
    os << "genus <= " << out["genus"] << " via " << quoted(out["certificate"]);
  } else {
    os << out.dump();
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long virtual knots: Gauss codes, moves, concatenation, surfaces and invariants"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit one JSON report per line")->configurable();

  std::vector<std::string> codes;
  std::string file;
  std::string code_a, code_b;
  std::vector<std::string> structures;
  std::size_t scan_order = 0;
  BudgetFlags budget_flags;

  auto with_inputs = [&](CLI::App* cmd) {
    cmd->add_option("codes", codes, "Gauss codes");
    cmd->add_option("--code", codes, "Gauss code (repeatable)")->allow_extra_args(false);
    cmd->add_option("--file", file, "File with one Gauss code per line")->check(CLI::ExistingFile);
    cmd->add_flag("--json", as_json, "Emit one JSON report per line");
  };
  auto with_pair = [&](CLI::App* cmd) {
    cmd->add_option("--a", code_a, "First Gauss code")->required();
    cmd->add_option("--b", code_b, "Second Gauss code")->required();
    cmd->add_flag("--json", as_json, "Emit one JSON report per line");
  };

  CLI::App* parse = app.add_subcommand("parse", "Validate and canonicalize codes");
  with_inputs(parse);
  CLI::App* genus = app.add_subcommand("genus", "Euler characteristic, boundary count and supporting genus");
  with_inputs(genus);
  CLI::App* concat = app.add_subcommand("concat", "Concatenate two or more long knots in order");
  with_inputs(concat);
  CLI::App* invariants = app.add_subcommand("invariants", "Odd writhe and coloring matrices");
  with_inputs(invariants);
  invariants->add_option("--structure", structures, "dihedral:M, trivial:M, biquandle:M#K or file:PATH")
      ->allow_extra_args(false);
  CLI::App* equiv = app.add_subcommand("equiv", "Bounded search for a move sequence between two codes");
  with_pair(equiv);
  budget_flags.add_to(equiv);
  CLI::App* commute = app.add_subcommand("commute", "Does A#B equal B#A?");
  with_pair(commute);
  budget_flags.add_to(commute);
  commute->add_option("--structure", structures, "Structure to test for a commutator witness")
      ->allow_extra_args(false);
  commute->add_option("--scan-structures", scan_order, "Use every enumerated structure of order 2..M")
      ->check(CLI::Range(2, 5));
  CLI::App* prime = app.add_subcommand("prime-scan", "Look for nontrivial decompositions in the orbit");
  with_inputs(prime);
  budget_flags.add_to(prime);
  CLI::App* min_genus = app.add_subcommand("min-genus", "Smallest supporting genus seen in the orbit");
  with_inputs(min_genus);
  budget_flags.add_to(min_genus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  std::vector<json> reports;
  try {
    CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();

    if (cmd == equiv || cmd == commute) {
      Input a = load(code_a, "--a");
      Input b = load(code_b, "--b");
      Clock clock;
      char* out = nullptr;
      lvk_budget budget{};
      if (cmd == equiv) {
        budget = budget_flags.resolve(a.diagram.get(), b.diagram.get());
        check(lvk_equivalent_json(a.diagram.get(), b.diagram.get(), &budget, &out), name);
      } else {
        // Both concatenations carry every crossing of A and B.
        lvk_diagram* ab = nullptr;
        check(lvk_concat(a.diagram.get(), b.diagram.get(), &ab), name);
        Diagram owned(ab);
        budget = budget_flags.resolve(owned.get(), owned.get());
        const Catalog cat = catalog_from(structures, scan_order);
        check(lvk_commute_json(a.diagram.get(), b.diagram.get(), &budget, cat.get(), &out), name);
      }
      reports.push_back(run_report(name, {&a, &b}, take_json(out), budget_echo(budget), clock));
    } else {
      const std::vector<Input> inputs = gather(codes, file);
      if (inputs.empty()) throw Failure{kExitInput, name + ": no input codes given"};

      if (cmd == concat) {
        if (inputs.size() < 2) throw Failure{kExitInput, "concat needs at least two codes"};
        Clock clock;
        lvk_diagram* acc = nullptr;
        check(lvk_diagram_clone(inputs.front().diagram.get(), &acc), name);
        Diagram result(acc);
        for (std::size_t i = 1; i < inputs.size(); ++i) {
          lvk_diagram* next = nullptr;
          check(lvk_concat(result.get(), inputs[i].diagram.get(), &next), name);
          result.reset(next);
        }
        char* s = nullptr;
        check(lvk_diagram_serialize(result.get(), &s), name);
        std::vector<const Input*> ptrs;
        for (const Input& i : inputs) ptrs.push_back(&i);
        json out{{"result", take_string(s)}, {"crossings", lvk_diagram_crossings(result.get())}};
        reports.push_back(run_report(name, ptrs, std::move(out), nullptr, clock));
      } else {
        const Catalog cat = cmd == invariants ? catalog_from(structures, 0) : Catalog{};
        for (const Input& in : inputs) {
          Clock clock;
          const lvk_diagram* d = in.diagram.get();
          json budget = nullptr;
          json out;
          char* s = nullptr;
          if (cmd == parse) {
            check(lvk_diagram_fingerprint(d, &s), in.origin);
            out = {{"canonical", in.canonical}, {"crossings", lvk_diagram_crossings(d)}, {"fingerprint", take_string(s)}};
          } else if (cmd == genus) {
            check(lvk_genus_json(d, &s), in.origin);
            out = take_json(s);
          } else if (cmd == invariants) {
            check(lvk_invariants_json(d, cat.get(), &s), in.origin);
            out = take_json(s);
          } else {
            const lvk_budget b = budget_flags.resolve(d, d);
            budget = budget_echo(b);
            if (cmd == prime)
              check(lvk_prime_scan_json(d, &b, &s), in.origin);
            else
              check(lvk_min_genus_json(d, &b, &s), in.origin);
            out = take_json(s);
          }
          json report = run_report(name, {&in}, out, std::move(budget), clock);
          if (cmd == genus) {
            // Flat fields so each genus line also reads as a plain record.
            for (const char* key : {"code", "chi", "boundary_total", "boundary_distinguished", "genus"})
              report[key] = out[key];
          }
          reports.push_back(std::move(report));
        }
      }
    }
  } catch (const Failure& f) {
    std::cerr << "lvk: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "lvk: internal error: " << e.what() << "\n";
    return 1;
  }

  std::string text;
  for (const json& r : reports) text += (as_json ? r.dump() : describe(r)) + "\n";
  std::cout << text << std::flush;
  return 0;
}
