#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "pdwg/harness.hpp"
#include "pdwg/verify.hpp"

namespace pdwg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kOutputEnv = "PDWG_OUTPUT_DIR";

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

std::string report_csv(const ErrorReport& e) {
  std::ostringstream out;
  out << "h2,l1,l2,h1,linf,w11,lambda0h\n";
  out << format_number(e.h2) << ',' << format_number(e.l1) << ',' << format_number(e.l2) << ','
      << format_number(e.h1) << ',' << format_number(e.linf) << ',' << format_number(e.w11) << ','
      << format_number(e.lambda0h) << '\n';
  return out.str();
}

CaseConfig effective_case(const RunConfig& c) {
  if (!c.segments.empty()) return {"custom", c.segments};
  return find_case(c.case_name);
}

std::string run_label(const RunConfig& c, const CaseConfig& kase) { return c.problem + "_" + kase.name; }

void validate(const RunConfig& c) {
  find_solution(c.problem);
  const CaseConfig kase = effective_case(c);
  if (c.n < 1) throw std::invalid_argument("n must be positive");
  for (std::size_t i = 0; i < c.n_list.size(); ++i) {
    if (c.n_list[i] < 1 || (i > 0 && c.n_list[i] <= c.n_list[i - 1])) {
      throw std::invalid_argument("n-list must be positive and strictly increasing");
    }
  }
  if (c.n_list.empty()) throw std::invalid_argument("n-list is empty");
  for (double a : c.amplitudes) {
    if (!(a >= 0.0)) throw std::invalid_argument("amplitudes must be non-negative");
  }
  if (c.quad_degree < 0 || c.quad_degree > kMaxTriangleDegree) {
    throw std::invalid_argument("quad-degree must lie in [0, " + std::to_string(kMaxTriangleDegree) + "]");
  }
  if (c.edge_points < 1 || c.edge_points > 64) throw std::invalid_argument("edge-points must lie in [1, 64]");
  // Segment endpoints must be mesh vertices for every mesh that will be built.
  std::vector<int> sizes = c.command == "converge" ? c.n_list : std::vector<int>{c.n};
  for (int n : sizes) classify_boundary(build_uniform_unit_square(n), kase.segments);
}

int do_solve(const RunConfig& c, const fs::path& dir, std::ostream& out) {
  const ManufacturedSolution& u = find_solution(c.problem);
  const CaseConfig kase = effective_case(c);
  const SolveOutcome r = solve_problem(u, kase.segments, c.n, {{c.quad_degree, c.edge_points}, {}});
  const std::string stem = run_label(c, kase) + "_n" + std::to_string(c.n);
  const FieldSnapshot snap = make_snapshot(r, u);
  write_file(dir / (stem + "_nodes.csv"), snap.nodes_csv());
  write_file(dir / (stem + "_elements.csv"), snap.elements_csv());
  write_file(dir / (stem + "_errors.csv"), report_csv(r.errors));
  out << report_csv(r.errors);
  if (c.diagnostics) {
    out << "dofs free=" << r.system.num_free() << " multipliers=" << r.system.num_multipliers()
        << " residual_inf=" << r.solution.residual_inf << " refinement_passes=" << r.solution.refinement_passes
        << " min_pivot=" << r.solution.pivots.min_pivot << " max_pivot=" << r.solution.pivots.max_pivot
        << " scale=" << r.solution.pivots.scale << '\n';
  }
  return kSuccess;
}

int do_converge(const RunConfig& c, const fs::path& dir, std::ostream& out, std::ostream& err) {
  const ConvergenceTable t =
      run_convergence(find_solution(c.problem), effective_case(c), c.n_list, {{c.quad_degree, c.edge_points}, {}});
  const std::string stem = "convergence_" + run_label(c, effective_case(c));
  write_file(dir / (stem + ".csv"), t.to_csv());
  write_file(dir / (stem + ".md"), t.to_markdown());
  out << t.to_csv();
  int code = kSuccess;
  for (const auto& row : t.rows) {
    if (!row.errors) {
      err << "n=" << row.n << ": " << row.failure << '\n';
      code = kSolverFailure;
    }
  }
  return code;
}

int do_noise(const RunConfig& c, const fs::path& dir, std::ostream& out, std::ostream& err) {
  const CaseConfig kase = effective_case(c);
  const NoiseStudy s =
      run_noise_study(find_solution(c.problem), kase, c.n, c.amplitudes, c.seed, {c.quad_degree, c.edge_points});
  const std::string stem = "noise_" + run_label(c, kase) + "_n" + std::to_string(c.n);
  int code = kSuccess;
  for (std::size_t i = 0; i < s.runs.size(); ++i) {
    const auto& run = s.runs[i];
    if (!run.errors) {
      err << "amplitude " << run.amplitude << ": " << run.failure << '\n';
      code = kSolverFailure;
      continue;
    }
    const std::string tag = stem + "_a" + std::to_string(i);
    write_file(dir / (tag + "_nodes.csv"), run.snapshot.nodes_csv());
    write_file(dir / (tag + "_elements.csv"), run.snapshot.elements_csv());
  }
  write_file(dir / (stem + "_summary.csv"), s.summary_csv());
  out << s.summary_csv();
  return code;
}

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

BoundarySegmentSpec parse_segment(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 2 && parts.size() != 4) {
    throw std::invalid_argument("segment '" + text + "': expected side[:begin:end]:flags");
  }
  BoundarySegmentSpec s;
  s.side = parse_side(parts[0]);
  if (parts.size() == 4) {
    std::size_t used = 0;
    try {
      s.begin = std::stod(parts[1], &used);
      if (used != parts[1].size()) throw std::invalid_argument("");
      s.end = std::stod(parts[2], &used);
      if (used != parts[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("segment '" + text + "': malformed interval");
    }
  }
  const std::string& flags = parts.back();
  if (flags.empty()) throw std::invalid_argument("segment '" + text + "': no data flags");
  for (char ch : flags) {
    if (ch == 'D') s.dirichlet = true;
    else if (ch == 'N') s.neumann = true;
    else throw std::invalid_argument("segment '" + text + "': flags must be D and/or N");
  }
  return s;
}

std::string format_segment(const BoundarySegmentSpec& s) {
  std::ostringstream out;
  out << to_string(s.side) << ':' << s.begin << ':' << s.end << ':' << (s.dirichlet ? "D" : "")
      << (s.neumann ? "N" : "");
  return out.str();
}

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["problem"] = c.problem;
  if (c.segments.empty()) {
    j["case"] = c.case_name;
  } else {
    json segs = json::array();
    for (const auto& s : c.segments) segs.push_back(format_segment(s));
    j["segments"] = segs;
  }
  j["n"] = c.n;
  j["n_list"] = c.n_list;
  j["amplitudes"] = c.amplitudes;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["quad_degree"] = c.quad_degree;
  j["edge_points"] = c.edge_points;
  j["diagnostics"] = c.diagnostics;
  return j;
}

void apply_json(const json& j, RunConfig& c) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command") continue;
    if (key == "problem") c.problem = get_as<std::string>(j, "problem");
    else if (key == "case") c.case_name = get_as<std::string>(j, "case");
    else if (key == "segments") {
      c.segments.clear();
      for (const auto& s : get_as<std::vector<std::string>>(j, "segments")) c.segments.push_back(parse_segment(s));
    } else if (key == "n") c.n = get_as<int>(j, "n");
    else if (key == "n_list") c.n_list = get_as<std::vector<int>>(j, "n_list");
    else if (key == "amplitudes") c.amplitudes = get_as<std::vector<double>>(j, "amplitudes");
    else if (key == "seed") c.seed = get_as<std::uint64_t>(j, "seed");
    else if (key == "out") c.out = get_as<std::string>(j, "out");
    else if (key == "quad_degree") c.quad_degree = get_as<int>(j, "quad_degree");
    else if (key == "edge_points") c.edge_points = get_as<int>(j, "edge_points");
    else if (key == "diagnostics") c.diagnostics = get_as<bool>(j, "diagnostics");
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Primal-dual weak Galerkin solver for elliptic Cauchy problems on the unit square"};
  app.require_subcommand(1, 1);

  RunConfig flags;
  std::string config_path;
  std::vector<std::string> segments;
  auto* config_opt = app.add_option("--config", config_path, "JSON file with run settings; flags override it");
  auto* problem_opt = app.add_option("--problem", flags.problem, "quad, sinsin, coscos or bubble");
  auto* case_opt = app.add_option("--case", flags.case_name, "case1..case5 or figures");
  auto* segment_opt =
      app.add_option("--segment", segments, "boundary segment side[:begin:end]:flags, repeatable; replaces --case");
  auto* n_opt = app.add_option("--n", flags.n, "subdivisions per side");
  auto* nlist_opt = app.add_option("--n-list", flags.n_list, "comma-separated mesh sizes")->delimiter(',');
  auto* amp_opt = app.add_option("--amplitudes", flags.amplitudes, "comma-separated noise amplitudes")->delimiter(',');
  auto* seed_opt = app.add_option("--seed", flags.seed, "noise seed");
  auto* out_opt = app.add_option("--out", flags.out, "output directory (default $PDWG_OUTPUT_DIR or .)");
  auto* quad_opt = app.add_option("--quad-degree", flags.quad_degree, "triangle quadrature degree for the load");
  auto* edge_opt = app.add_option("--edge-points", flags.edge_points, "Gauss points per edge");
  auto* diag_opt = app.add_flag("--diagnostics", flags.diagnostics, "print solver diagnostics");

  app.add_subcommand("solve", "one solve: field snapshot and error norms")->fallthrough();
  app.add_subcommand("converge", "convergence table over --n-list")->fallthrough();
  app.add_subcommand("noise", "noise study over --amplitudes")->fallthrough();
  app.add_subcommand("verify", "algebraic identity checks")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  RunConfig config;
  config.command = app.get_subcommands().front()->get_name();
  try {
    if (const char* env = std::getenv(kOutputEnv); env && *env) config.out = env;
    if (config_opt->count()) {
      std::ifstream f(config_path);
      if (!f) throw std::invalid_argument("cannot read config " + config_path);
      json j;
      try {
        j = json::parse(f);
      } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed config " + config_path + ": " + e.what());
      }
      apply_json(j, config);
    }
    if (problem_opt->count()) config.problem = flags.problem;
    if (case_opt->count()) {
      config.case_name = flags.case_name;
      config.segments.clear();
    }
    if (segment_opt->count()) {
      config.segments.clear();
      for (const auto& s : segments) config.segments.push_back(parse_segment(s));
    }
    if (n_opt->count()) config.n = flags.n;
    if (nlist_opt->count()) config.n_list = flags.n_list;
    if (amp_opt->count()) config.amplitudes = flags.amplitudes;
    if (seed_opt->count()) config.seed = flags.seed;
    if (out_opt->count()) config.out = flags.out;
    if (quad_opt->count()) config.quad_degree = flags.quad_degree;
    if (edge_opt->count()) config.edge_points = flags.edge_points;
    if (diag_opt->count()) config.diagnostics = flags.diagnostics;
    if (config.command != "verify") validate(config);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (config.command == "verify") {
      const VerificationReport report = run_verification();
      out << report.to_string();
      return report.passed() ? kSuccess : kCheckFailure;
    }
    const fs::path dir(config.out);
    fs::create_directories(dir);
    write_file(dir / "config.json", to_json(config).dump(2) + "\n");
    if (config.command == "solve") return do_solve(config, dir, out);
    if (config.command == "converge") return do_converge(config, dir, out, err);
    return do_noise(config, dir, out, err);
  } catch (const SingularSystem& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}

}  // namespace pdwg::cli
