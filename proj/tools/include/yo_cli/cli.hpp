#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "yo/mesh.hpp"

namespace yo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitCheckFailed = 2;

enum class Command { GenMesh, SolveObstacle, Minimize, VerifyLemmas, Bubble, Sweep, Report };

std::string command_name(Command c);
Command parse_command(const std::string& name);

// Initial states understood by `minimize` and `sweep`.
enum class InitKind { Ones, Perturbed, Random, Bubble };

std::string init_name(InitKind k);
InitKind parse_init(const std::string& name);

struct RunConfig {
  Command command = Command::Minimize;
  int n = 3;
  std::optional<double> p;  // empty means the critical exponent 2# - 1
  int refinement = 2;
  double tol = 1e-10;
  std::uint64_t seed = 7;
  std::filesystem::path out_dir = "yo_out";
  std::optional<std::filesystem::path> mesh_path;

  int dim = 20;
  int trials = 100;
  std::vector<int> levels{2, 3, 4};
  Point pole = Point(0, 0, 2);
  double scale = 1.0;
  InitKind init = InitKind::Ones;
  int max_iters = 5000;
  int jobs = 0;  // 0: one worker per level
};

// Default output directory: $YO_OUT_DIR if set, otherwise ./yo_out.
std::filesystem::path default_out_dir();

// Throws InputError when a field is out of range.
void validate(const RunConfig& cfg);

// Resolved exponent; `critical` maps to n/(n-2) exactly.
double resolved_p(const RunConfig& cfg);

// Executes one command, writing result.json (+ CSV tables, timing.json) into cfg.out_dir.
int run(const RunConfig& cfg, std::ostream& log);

// Full CLI entry point: argument parsing, error mapping and exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace yo::cli
