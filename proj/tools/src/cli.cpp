#include "yo_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "yo/bubbles.hpp"
#include "yo/errors.hpp"
#include "yo/functionals.hpp"
#include "yo/io.hpp"
#include "yo/lemma_suite.hpp"
#include "yo/obstacle.hpp"

#ifndef YO_BUILD_ID
#define YO_BUILD_ID "unknown"
#endif

namespace yo::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

const std::vector<std::pair<Command, const char*>>& command_table() {
  static const std::vector<std::pair<Command, const char*>> table{
      {Command::GenMesh, "gen-mesh"},   {Command::SolveObstacle, "solve-obstacle"},
      {Command::Minimize, "minimize"},  {Command::VerifyLemmas, "verify-lemmas"},
      {Command::Bubble, "bubble"},      {Command::Sweep, "sweep"},
      {Command::Report, "report"}};
  return table;
}

const std::vector<std::pair<InitKind, const char*>>& init_table() {
  static const std::vector<std::pair<InitKind, const char*>> table{
      {InitKind::Ones, "ones"},
      {InitKind::Perturbed, "perturbed"},
      {InitKind::Random, "random"},
      {InitKind::Bubble, "bubble"}};
  return table;
}

// A named pass/fail claim together with the tolerance it was tested at.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

Check upper_check(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, std::isfinite(value) && value <= tolerance};
}

json to_json(const Check& c) {
  return json{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}};
}

json checks_json(const std::vector<Check>& checks) {
  json arr = json::array();
  for (const auto& c : checks) arr.push_back(to_json(c));
  return arr;
}

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

json config_json(const RunConfig& cfg) {
  json j{{"command", command_name(cfg.command)},
         {"n", cfg.n},
         {"p", cfg.p ? json(*cfg.p) : json("critical")},
         {"refinement", cfg.refinement},
         {"tol", cfg.tol},
         {"seed", cfg.seed},
         {"out_dir", cfg.out_dir.generic_string()},
         {"mesh_path", cfg.mesh_path ? json(cfg.mesh_path->generic_string()) : json(nullptr)},
         {"dim", cfg.dim},
         {"trials", cfg.trials},
         {"levels", cfg.levels},
         {"pole", {cfg.pole.x(), cfg.pole.y(), cfg.pole.z()}},
         {"scale", cfg.scale},
         {"init", init_name(cfg.init)},
         {"max_iters", cfg.max_iters},
         {"jobs", cfg.jobs}};
  return j;
}

json quotient_json(const QuotientReport& r) {
  return json{{"p", r.p},
              {"q", r.q},
              {"E_value", r.E_value},
              {"I_value", r.I_value},
              {"deficit_E", r.deficit_E},
              {"deficit_I", r.deficit_I},
              {"c_mean_curvature", r.c_mean_curvature},
              {"mu_estimate", r.mu_estimate},
              {"mu_oc_estimate", r.mu_oc_estimate},
              {"fixed_point_distance", r.fixed_point_distance},
              {"gradient_norm", r.gradient_norm},
              {"accepted_steps", r.accepted_steps},
              {"interior_zero_count", r.interior_zero_count}};
}

json obstacle_json(const ObstacleSolution& s) {
  return json{{"energy", s.energy},
              {"kkt_residual", s.kkt_residual},
              {"iterations", s.iterations},
              {"active_count", s.active_set.size()},
              {"used_fallback", s.used_fallback}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": parse error at byte offset " + std::to_string(e.byte));
  }
}

struct Outcome {
  json body;
  std::vector<Check> checks;
};

SimplicialMesh load_mesh(const RunConfig& cfg) {
  if (cfg.mesh_path) return read_mesh(*cfg.mesh_path);
  return build_ball_mesh(cfg.refinement);
}

json mesh_json(const RunConfig& cfg, const SimplicialMesh& mesh) {
  return json{{"level", cfg.mesh_path ? json(nullptr) : json(cfg.refinement)},
              {"vertices", mesh.vertices.size()},
              {"cells", mesh.cells.size()},
              {"boundary_vertices", mesh.boundary_vertices.size()},
              {"h", max_edge_length(mesh)},
              {"volume", total_volume(mesh)},
              {"boundary_area", boundary_area(mesh)},
              {"sphere_deviation", sphere_deviation(mesh)}};
}

ObstacleOptions obstacle_options(const RunConfig& cfg) {
  ObstacleOptions o;
  o.tol = cfg.tol;
  return o;
}

Vector initial_state(const RunConfig& cfg, const SimplicialMesh& mesh) {
  const Eigen::Index d = mesh.vertex_count();
  std::mt19937_64 rng(cfg.seed);
  switch (cfg.init) {
    case InitKind::Ones:
      return Vector::Ones(d);
    case InitKind::Perturbed: {
      // 1 + 0.1 * (e . x) with a seeded unit direction e
      std::normal_distribution<double> g;
      Point e(g(rng), g(rng), g(rng));
      e.normalize();
      Vector u(d);
      for (Eigen::Index i = 0; i < d; ++i) u[i] = 1.0 + 0.1 * e.dot(mesh.vertices[static_cast<std::size_t>(i)]);
      return u;
    }
    case InitKind::Random: {
      std::uniform_real_distribution<double> U(0.5, 1.5);
      Vector u(d);
      for (Eigen::Index i = 0; i < d; ++i) u[i] = U(rng);
      return u;
    }
    case InitKind::Bubble:
      return bubble_field(mesh, BubbleParams{cfg.pole, cfg.scale}).values();
  }
  return Vector::Ones(d);
}

Outcome cmd_gen_mesh(const RunConfig& cfg) {
  SimplicialMesh mesh = build_ball_mesh(cfg.refinement);
  write_mesh(cfg.out_dir / "mesh.json", mesh);
  return {json{{"mesh", mesh_json(cfg, mesh)}, {"mesh_file", "mesh.json"}}, {}};
}

Outcome cmd_solve_obstacle(const RunConfig& cfg) {
  SimplicialMesh mesh = load_mesh(cfg);
  AssembledProblem prob = assemble(mesh, MetricData::flat_ball(mesh), cfg.n);
  const auto& bs = prob.boundary;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> Ub(0.1, 2.0), Ui(0.0, 1.5), coin(0.0, 1.0);
  Vector u(mesh.vertex_count());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (bs.is_boundary(i)) u[i] = Ub(rng);
    else u[i] = coin(rng) < 0.2 ? 0.0 : Ui(rng);
  }

  const ObstacleOptions opts = obstacle_options(cfg);
  ObstacleSolution sol = obstacle_map(prob.form, bs, u, opts);
  FixedPointCheck fp = is_fixed_point(prob.form, bs, sol.state, 1e-8, opts);
  const double eu = pair(prob.form, u, u);

  std::vector<Check> checks{
      upper_check("kkt_residual", sol.kkt_residual, cfg.tol),
      upper_check("idempotency_distance", fp.distance, 1e-8),
      upper_check("energy_monotonicity", (sol.energy - eu) / std::max(eu, 1e-300), 1e-12),
  };

  std::ostringstream csv;
  csv << "vertex,u,Tu,multiplier,active\n";
  std::vector<bool> active(static_cast<std::size_t>(u.size()), false);
  for (auto i : sol.active_set) active[static_cast<std::size_t>(i)] = true;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    csv << i << ',' << format_double(u[i]) << ',' << format_double(sol.state[i]) << ','
        << format_double(sol.multipliers[i]) << ',' << (active[static_cast<std::size_t>(i)] ? 1 : 0) << '\n';
  }
  write_text(cfg.out_dir / "obstacle.csv", csv.str());

  return {json{{"mesh", mesh_json(cfg, mesh)},
               {"obstacle", obstacle_json(sol)},
               {"input_energy", eu},
               {"pivot_ratio", prob.form.pivot_ratio()}},
          checks};
}

Outcome cmd_minimize(const RunConfig& cfg) {
  SimplicialMesh mesh = load_mesh(cfg);
  AssembledProblem prob = assemble(mesh, MetricData::flat_ball(mesh), cfg.n);
  const double p = resolved_p(cfg);

  MinimizeOptions mo;
  mo.max_iters = cfg.max_iters;
  mo.obstacle = obstacle_options(cfg);
  MinimizeResult res = minimize(prob.form, prob.boundary, p, initial_state(cfg, mesh), mo);
  const QuotientReport& r = res.report;

  const double rel_gap = std::abs(r.mu_estimate - r.mu_oc_estimate) / std::abs(r.mu_estimate);
  std::vector<Check> checks{upper_check("mu_equals_mu_oc", rel_gap, 1e-6)};
  if (res.trace.converged) checks.push_back(upper_check("minimizer_fixed_point", r.fixed_point_distance, 1e-6));

  std::ostringstream csv;
  csv << "step,E_value,I_value,gradient_norm,step_size,fixed_point_distance\n";
  for (std::size_t k = 0; k < res.trace.iterates.size(); ++k) {
    const auto& it = res.trace.iterates[k];
    csv << k << ',' << format_double(it.E_value) << ',' << format_double(it.I_value) << ','
        << format_double(it.gradient_norm) << ',' << format_double(it.step_size) << ','
        << format_double(it.fixed_point_distance) << '\n';
  }
  write_text(cfg.out_dir / "trace.csv", csv.str());

  const double sharp = sharp_constant(cfg.n);
  const double h = max_edge_length(mesh);
  std::vector<LevelRecord> recs{{cfg.refinement, h, r.E_value, r.I_value, r.mu_estimate}};
  auto rows = convergence_rows(recs, sharp);
  write_text(cfg.out_dir / "convergence.csv", rows_to_csv(rows));

  return {json{{"mesh", mesh_json(cfg, mesh)},
               {"quotient", quotient_json(r)},
               {"converged", res.trace.converged},
               {"stop_reason", res.trace.stop_reason},
               {"sharp_constant", sharp},
               {"relative_error", std::abs(r.mu_estimate - sharp) / sharp},
               {"convergence", json::parse(rows_to_json(rows))}},
          checks};
}

Outcome cmd_verify_lemmas(const RunConfig& cfg) {
  LemmaSuiteOptions lo;
  lo.seed = cfg.seed;
  lo.trials = cfg.trials;
  lo.max_dim = cfg.dim;
  lo.max_boundary = std::min(12, std::max(1, cfg.dim - 1));
  std::vector<LemmaCheck> lemmas = run_lemma_suite(lo);

  json arr = json::array();
  std::vector<Check> checks;
  std::ostringstream csv;
  csv << "name,max_residual,tolerance,samples,expect_violation,passed\n";
  for (const auto& l : lemmas) {
    arr.push_back(json{{"name", l.name},
                       {"statement", l.statement},
                       {"max_residual", l.max_residual},
                       {"tolerance", l.tolerance},
                       {"samples", l.samples},
                       {"expect_violation", l.expect_violation},
                       {"passed", l.passed},
                       {"first_error", l.first_error}});
    checks.push_back({l.name, l.max_residual, l.tolerance, l.passed});
    csv << l.name << ',' << format_double(l.max_residual) << ',' << format_double(l.tolerance) << ','
        << l.samples << ',' << (l.expect_violation ? 1 : 0) << ',' << (l.passed ? 1 : 0) << '\n';
  }
  write_text(cfg.out_dir / "lemmas.csv", csv.str());
  return {json{{"lemmas", arr}}, checks};
}

Outcome cmd_bubble(const RunConfig& cfg) {
  SimplicialMesh mesh = load_mesh(cfg);
  AssembledProblem prob = assemble(mesh, MetricData::flat_ball(mesh), cfg.n);
  BubbleParams bp{cfg.pole, cfg.scale};
  BubbleReport br = verify_bubble(mesh, prob.form, prob.boundary, bp, obstacle_options(cfg));

  const double c_err = std::abs(br.residual.c_est - br.c_expected) / br.c_expected;
  std::vector<Check> checks{
      upper_check("c_relative_error", c_err, 5e-2),
      upper_check("I_le_E", (br.I_value - br.E_value) / br.E_value, 1e-8),
  };
  return {json{{"mesh", mesh_json(cfg, mesh)},
               {"bubble",
                {{"c_est", br.residual.c_est},
                 {"c_expected", br.c_expected},
                 {"r_interior", br.residual.r_interior},
                 {"r_boundary", br.residual.r_boundary},
                 {"fixed_point_distance", br.fixed_point_distance},
                 {"E_value", br.E_value},
                 {"I_value", br.I_value}}},
               {"sharp_constant", sharp_constant(cfg.n)}},
          checks};
}

// Collects level_*/result.json under dir into convergence rows.
std::vector<ConvergenceRow> collect_rows(const fs::path& dir, int n) {
  std::vector<LevelRecord> recs;
  if (fs::is_directory(dir)) {
    std::vector<fs::path> subdirs;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const auto name = entry.path().filename().string();
      if (entry.is_directory() && name.rfind("level_", 0) == 0 && fs::exists(entry.path() / "result.json"))
        subdirs.push_back(entry.path());
    }
    std::sort(subdirs.begin(), subdirs.end());
    for (const auto& sd : subdirs) {
      json j = read_json_file(sd / "result.json");
      try {
        LevelRecord r;
        r.level = j.at("mesh").at("level").get<int>();
        r.h = j.at("mesh").at("h").get<double>();
        r.E_value = j.at("quotient").at("E_value").get<double>();
        r.I_value = j.at("quotient").at("I_value").get<double>();
        r.mu_estimate = j.at("quotient").at("mu_estimate").get<double>();
        recs.push_back(r);
      } catch (const json::exception& e) {
        throw InputError((sd / "result.json").string() + ": schema violation: " + e.what());
      }
    }
  }
  return convergence_rows(std::move(recs), sharp_constant(n));
}

Outcome cmd_report(const RunConfig& cfg) {
  auto rows = collect_rows(cfg.out_dir, cfg.n);
  emit_report(rows, cfg.out_dir / "report.csv", cfg.out_dir / "report.json");
  return {json{{"convergence", json::parse(rows_to_json(rows))}}, {}};
}

Outcome cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  std::vector<RunConfig> sub;
  for (int level : cfg.levels) {
    RunConfig c = cfg;
    c.command = Command::Minimize;
    c.refinement = level;
    c.mesh_path.reset();
    c.out_dir = cfg.out_dir / ("level_" + std::to_string(level));
    sub.push_back(std::move(c));
  }
  const std::size_t workers = cfg.jobs > 0 ? static_cast<std::size_t>(cfg.jobs) : std::max<std::size_t>(1, sub.size());

  std::vector<int> codes(sub.size(), kExitOk);
  std::vector<std::string> logs(sub.size());
  for (std::size_t start = 0; start < sub.size(); start += workers) {
    std::vector<std::future<std::pair<int, std::string>>> batch;
    const std::size_t stop = std::min(sub.size(), start + workers);
    for (std::size_t i = start; i < stop; ++i) {
      batch.push_back(std::async(std::launch::async, [&c = sub[i]] {
        std::ostringstream os;
        try {
          int rc = run(c, os);
          return std::make_pair(rc, os.str());
        } catch (const std::exception& e) {
          os << "level " << c.refinement << ": " << e.what() << '\n';
          return std::make_pair(kExitInputError, os.str());
        }
      }));
    }
    for (std::size_t i = start; i < stop; ++i) std::tie(codes[i], logs[i]) = batch[i - start].get();
  }

  std::vector<Check> checks;
  json runs = json::array();
  for (std::size_t i = 0; i < sub.size(); ++i) {
    log << logs[i];
    runs.push_back(json{{"level", sub[i].refinement}, {"exit_code", codes[i]}});
    checks.push_back({"level_" + std::to_string(sub[i].refinement) + "_exit", static_cast<double>(codes[i]), 0.0,
                      codes[i] == kExitOk});
  }
  if (std::any_of(codes.begin(), codes.end(), [](int c) { return c == kExitInputError; }))
    throw InputError("sweep: a level run failed with an input error");

  auto rows = collect_rows(cfg.out_dir, cfg.n);
  emit_report(rows, cfg.out_dir / "report.csv", cfg.out_dir / "report.json");
  return {json{{"runs", runs}, {"convergence", json::parse(rows_to_json(rows))}}, checks};
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [k, v] : command_table())
    if (k == c) return v;
  return "?";
}

Command parse_command(const std::string& name) {
  for (const auto& [k, v] : command_table())
    if (name == v) return k;
  throw InputError("unknown command '" + name + "'");
}

std::string init_name(InitKind k) {
  for (const auto& [key, v] : init_table())
    if (key == k) return v;
  return "?";
}

InitKind parse_init(const std::string& name) {
  for (const auto& [k, v] : init_table())
    if (name == v) return k;
  throw InputError("unknown init '" + name + "' (ones, perturbed, random, bubble)");
}

fs::path default_out_dir() {
  if (const char* env = std::getenv("YO_OUT_DIR"); env && *env) return fs::path(env);
  return fs::path("yo_out");
}

double resolved_p(const RunConfig& cfg) {
  if (cfg.p) return *cfg.p;
  return Exponents::for_dimension(cfg.n).critical_p();
}

void validate(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) throw InputError("--tol must be positive");
  if (cfg.n < 3) throw InputError("--n must be at least 3");
  const double p = resolved_p(cfg);
  const double pmax = Exponents::for_dimension(cfg.n).critical_p();
  if (!(p >= 1.0 && p <= pmax)) {
    std::ostringstream os;
    os << "--p must lie in [1, " << pmax << "], got " << p;
    throw InputError(os.str());
  }
  const bool mesh_command = cfg.command == Command::GenMesh || cfg.command == Command::SolveObstacle ||
                            cfg.command == Command::Minimize || cfg.command == Command::Bubble ||
                            cfg.command == Command::Sweep || cfg.command == Command::Report;
  if (mesh_command && cfg.n != 3) throw InputError("ball meshes are three-dimensional; use --n 3");
  auto check_level = [](int level) {
    if (level < 0 || level > kMaxRefinementLevel)
      throw InputError("refinement level must be in [0, " + std::to_string(kMaxRefinementLevel) + "]");
  };
  check_level(cfg.refinement);
  for (int l : cfg.levels) check_level(l);
  if (cfg.command == Command::Sweep && cfg.levels.empty()) throw InputError("--levels is empty");
  if (cfg.dim < 2) throw InputError("--dim must be at least 2");
  if (cfg.trials < 1) throw InputError("--trials must be positive");
  if (cfg.max_iters < 0) throw InputError("--max-iters must be non-negative");
  if (cfg.jobs < 0) throw InputError("--jobs must be non-negative");
  if (cfg.mesh_path && !fs::exists(*cfg.mesh_path)) throw InputError("mesh file not found: " + cfg.mesh_path->string());
}

int run(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  fs::create_directories(cfg.out_dir);

  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  switch (cfg.command) {
    case Command::GenMesh: out = cmd_gen_mesh(cfg); break;
    case Command::SolveObstacle: out = cmd_solve_obstacle(cfg); break;
    case Command::Minimize: out = cmd_minimize(cfg); break;
    case Command::VerifyLemmas: out = cmd_verify_lemmas(cfg); break;
    case Command::Bubble: out = cmd_bubble(cfg); break;
    case Command::Sweep: out = cmd_sweep(cfg, log); break;
    case Command::Report: out = cmd_report(cfg); break;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json result = out.body;
  result["config"] = config_json(cfg);
  result["build"] = json{{"id", YO_BUILD_ID}, {"version", kVersion}};
  result["checks"] = checks_json(out.checks);
  const bool ok = all_passed(out.checks);
  result["status"] = ok ? "ok" : "check_failed";

  write_text(cfg.out_dir / "result.json", result.dump(2) + "\n");
  write_text(cfg.out_dir / "timing.json", json{{"seconds", seconds}}.dump(2) + "\n");

  log << command_name(cfg.command) << ": " << (ok ? "ok" : "CHECK FAILED") << " -> "
      << (cfg.out_dir / "result.json").string() << '\n';
  for (const auto& c : out.checks) {
    if (!c.passed)
      log << "  failed check " << c.name << ": " << c.value << " > " << c.tolerance << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary obstacle operator and conformal quotient toolkit"};
  app.set_version_flag("--version", std::string(kVersion) + " (" + YO_BUILD_ID + ")");

  RunConfig cfg;
  cfg.out_dir = default_out_dir();
  std::string command, p_text = "critical", init_text = "ones", out_text, mesh_text;
  std::vector<double> pole{0, 0, 2};

  std::vector<std::string> names;
  for (const auto& kv : command_table()) names.emplace_back(kv.second);
  app.add_option("command", command, "gen-mesh | solve-obstacle | minimize | verify-lemmas | bubble | sweep | report")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("--n", cfg.n, "Dimension")->capture_default_str();
  app.add_option("--p", p_text, "Exponent p in [1, 2#-1], or 'critical'")->capture_default_str();
  app.add_option("--refine", cfg.refinement, "Ball refinement level")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Obstacle KKT tolerance")->capture_default_str();
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--out", out_text, "Output directory (default $YO_OUT_DIR or ./yo_out)");
  app.add_option("--mesh", mesh_text, "Mesh JSON file instead of the built-in ball");
  app.add_option("--dim", cfg.dim, "Max dimension of random lemma instances")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Random lemma instances")->capture_default_str();
  app.add_option("--levels", cfg.levels, "Levels for sweep, comma separated")->delimiter(',');
  app.add_option("--pole", pole, "Bubble pole x,y,z (|a| > 1)")->delimiter(',')->expected(3);
  app.add_option("--scale", cfg.scale, "Bubble scale")->capture_default_str();
  app.add_option("--init", init_text, "ones | perturbed | random | bubble")->capture_default_str();
  app.add_option("--max-iters", cfg.max_iters, "Minimize iteration cap")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Concurrent sweep workers (0: one per level)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInputError;
  }

  try {
    cfg.command = parse_command(command);
    if (p_text != "critical") {
      std::size_t used = 0;
      double p = 0;
      try {
        p = std::stod(p_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != p_text.size()) throw InputError("--p expects a number or 'critical', got '" + p_text + "'");
      cfg.p = p;
    }
    cfg.init = parse_init(init_text);
    if (!out_text.empty()) cfg.out_dir = out_text;
    if (!mesh_text.empty()) cfg.mesh_path = fs::path(mesh_text);
    cfg.pole = Point(pole[0], pole[1], pole[2]);
    return run(cfg, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
  } catch (const HypothesisError& e) {
    err << "hypothesis violated: " << e.what() << '\n';
  } catch (const SolverError& e) {
    err << "solver failed: " << e.what() << " (residual " << e.residual() << ")\n";
  } catch (const fs::filesystem_error& e) {
    err << "filesystem error: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace yo::cli
