#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pse/addand.hpp"
#include "pse/baseline.hpp"
#include "pse/engine.hpp"
#include "pse/formula.hpp"
#include "pse/trace.hpp"

namespace {

using json = nlohmann::json;

pse::CircuitFormula load_formula(const std::string& path) {
  if (path.empty() || path == "-") return pse::parse_dimacs(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return pse::parse_dimacs(in);
}

std::vector<pse::Var> parse_order(const std::string& s) {
  std::vector<pse::Var> order;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    order.push_back(static_cast<pse::Var>(std::stoul(tok)));
  }
  return order;
}

json stats_json(const pse::SearchStats& st) {
  return json{{"y_decisions", st.y_decisions},
              {"x_decisions", st.x_decisions},
              {"components", st.components},
              {"xcache_hits", st.xcache_hits},
              {"ycache_hits", st.ycache_hits},
              {"cache_entries", st.cache_entries},
              {"cache_resets", st.cache_resets},
              {"trace_nodes", st.trace_nodes},
              {"width", st.width},
              {"pre_merged", st.pre_merged},
              {"pre_forced", st.pre_forced},
              {"wall_seconds", st.wall_seconds}};
}

void print_stats_text(const pse::SearchStats& st) {
  for (auto& [k, v] : stats_json(st).items())
    std::cout << k << " " << v << "\n";
}

std::ostream& value_out(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact Shannon entropy of the output distribution of a circuit CNF"};
  std::string mode = "pse";
  app.add_option("--mode", mode, "pse|baseline|verify|compile|check|gen")
      ->check(CLI::IsMember({"pse", "baseline", "verify", "compile", "check",
                             "gen"}));
  std::string input;
  app.add_option("file", input, "input CNF file, '-' or absent for stdin");
  std::string heuristic = "minfill";
  app.add_option("--heuristic", heuristic, "decision heuristic")
      ->check(CLI::IsMember({"minfill", "vsads"}));
  bool no_pre = false, no_xcache = false, no_ycache = false, no_decomp = false;
  app.add_flag("--no-pre", no_pre, "skip equivalent-literal reduction");
  app.add_flag("--no-xcache", no_xcache, "disable the counting cache");
  app.add_flag("--no-ycache", no_ycache, "disable the entropy cache");
  app.add_flag("--no-decomp", no_decomp, "disable component decomposition");
  std::string order_str;
  app.add_option("--order", order_str,
                 "comma-separated output decision order, e.g. 7,9,8");
  double timeout = 0;
  app.add_option("--timeout", timeout, "wall clock limit in seconds");
  std::size_t cache_bytes = 0;
  app.add_option("--cache-bytes", cache_bytes,
                 "cache memory budget, 0 = unlimited");
  std::string trace_path;
  app.add_option("--emit-trace", trace_path, "write the run trace to a file");
  std::string stats_fmt;
  app.add_option("--stats", stats_fmt, "print run statistics")
      ->check(CLI::IsMember({"text", "json"}));
  std::string out_path;
  app.add_option("--out", out_path, "output file (compile/gen)");
  std::string format = "text";
  app.add_option("--format", format, "compile output format")
      ->check(CLI::IsMember({"text", "dot"}));
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "gen: first seed");
  std::uint32_t gen_count = 1;
  app.add_option("--count", gen_count, "gen: number of formulas");
  std::uint32_t gen_inputs = 6, gen_outputs = 4, gen_arity = 3;
  app.add_option("--inputs", gen_inputs, "gen: input variables");
  app.add_option("--outputs", gen_outputs, "gen: output variables");
  app.add_option("--arity", gen_arity, "gen: max gate fan-in");
  std::string out_dir;
  app.add_option("--out-dir", out_dir, "gen: directory for files + manifest");

  CLI11_PARSE(app, argc, argv);

  try {
    pse::PseConfig cfg;
    cfg.heuristic = heuristic == "vsads" ? pse::Heuristic::kVsads
                                         : pse::Heuristic::kMinfill;
    cfg.use_pre = !no_pre;
    cfg.use_xcache = !no_xcache;
    cfg.use_ycache = !no_ycache;
    cfg.use_decomposition = !no_decomp;
    cfg.fixed_y_order = parse_order(order_str);
    cfg.timeout_seconds = timeout;
    cfg.cache_bytes = cache_bytes;
    cfg.emit_trace = !trace_path.empty();

    std::cout << std::setprecision(17);

    if (mode == "pse" || mode == "verify") {
      pse::CircuitFormula f = load_formula(input);
      pse::EntropyResult r = pse::pse_entropy(f, cfg);
      if (!trace_path.empty()) {
        std::ofstream o(trace_path);
        if (!o) throw std::runtime_error("cannot write " + trace_path);
        pse::write_trace(o, r.trace);
      }
      bool agree = true;
      pse::BaselineResult b;
      if (mode == "verify") {
        b = pse::baseline_entropy(f);
        agree = b.total == r.count &&
                std::abs(b.entropy - r.entropy) <=
                    1e-9 * std::max(1.0, std::abs(r.entropy));
      }
      if (stats_fmt == "json") {
        json j{{"entropy", r.entropy},
               {"count", pse::big_str(r.count)},
               {"stats", stats_json(r.stats)}};
        if (mode == "verify") {
          j["baseline_entropy"] = b.entropy;
          j["agree"] = agree;
        }
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "entropy " << r.entropy << "\n";
        std::cout << "count " << pse::big_str(r.count) << "\n";
        if (mode == "verify") {
          std::cout << "baseline_entropy " << b.entropy << "\n";
          std::cout << "agree " << (agree ? "true" : "false") << "\n";
        }
        if (stats_fmt == "text") print_stats_text(r.stats);
      }
      return agree ? 0 : 4;
    }

    if (mode == "baseline") {
      pse::CircuitFormula f = load_formula(input);
      pse::BaselineResult b = pse::baseline_entropy(f);
      if (stats_fmt == "json") {
        std::cout << json{{"entropy", b.entropy},
                          {"count", pse::big_str(b.total)}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "entropy " << b.entropy << "\n";
        std::cout << "count " << pse::big_str(b.total) << "\n";
      }
      return 0;
    }

    if (mode == "check") {
      pse::CircuitFormula f = load_formula(input);
      bool ok = pse::validate_circuit(f, pse::ValidateMode::kSelfComposition);
      std::cout << "circuit " << (ok ? "true" : "false") << "\n";
      return ok ? 0 : 2;
    }

    if (mode == "compile") {
      pse::CircuitFormula f = load_formula(input);
      cfg.emit_trace = true;
      pse::EntropyResult r = pse::pse_entropy(f, cfg);
      if (!trace_path.empty()) {
        std::ofstream o(trace_path);
        if (!o) throw std::runtime_error("cannot write " + trace_path);
        pse::write_trace(o, r.trace);
      }
      pse::AddAnd d = pse::build_from_trace(r.trace);
      std::ofstream file;
      std::ostream& os = value_out(file, out_path);
      if (format == "dot")
        os << pse::to_dot(d);
      else
        pse::write_diagram(os, d);
      if (&os != &std::cout) {
        std::cout << "entropy " << r.entropy << "\n";
        std::cout << "count " << pse::big_str(r.count) << "\n";
        std::cout << "nodes " << d.size() << "\n";
        if (stats_fmt == "text") print_stats_text(r.stats);
      }
      return 0;
    }

    // gen
    json manifest;
    manifest["files"] = json::array();
    for (std::uint32_t i = 0; i < gen_count; ++i) {
      pse::RandomCircuitSpec spec;
      spec.seed = seed + i;
      spec.n_inputs = gen_inputs;
      spec.n_outputs = gen_outputs;
      spec.arity = gen_arity;
      pse::CircuitFormula f = pse::random_circuit(spec);
      if (out_dir.empty()) {
        std::ofstream file;
        std::ostream& os = value_out(file, out_path);
        os << pse::serialize_dimacs(f);
        if (gen_count > 1)
          throw std::runtime_error("gen: --count > 1 needs --out-dir");
      } else {
        std::filesystem::create_directories(out_dir);
        std::string name = "gen_s" + std::to_string(spec.seed) + ".cnf";
        std::ofstream o(std::filesystem::path(out_dir) / name);
        if (!o) throw std::runtime_error("cannot write " + name);
        o << pse::serialize_dimacs(f);
        manifest["files"].push_back(json{{"file", name},
                                         {"seed", spec.seed},
                                         {"inputs", f.inputs.size()},
                                         {"outputs", f.outputs.size()},
                                         {"nvars", f.nvars},
                                         {"clauses", f.clauses.size()}});
      }
    }
    if (!out_dir.empty()) {
      std::ofstream m(std::filesystem::path(out_dir) / "manifest.json");
      m << manifest.dump(2) << "\n";
      std::cout << "generated " << gen_count << "\n";
    }
    return 0;
  } catch (const pse::CircuitViolation& e) {
    std::cerr << "circuit violation: " << e.what() << "\n";
    return 2;
  } catch (const pse::TimeoutError& e) {
    std::cerr << "timeout: " << e.what() << "\n";
    return 3;
  } catch (const pse::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
