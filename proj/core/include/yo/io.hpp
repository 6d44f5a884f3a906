#pragma once

// Canonical mesh JSON and convergence-report emission.
//
// Mesh files are a single JSON object with sorted keys
//   {"boundary_faces":[[i,j,k],...],"cells":[[i,j,k,l],...],"dim":3,"vertices":[[x,y,z],...]}
// using 0-based indices and %.17g for coordinates, followed by one newline.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "yo/mesh.hpp"

namespace yo {

std::string mesh_to_json(const SimplicialMesh& mesh);
SimplicialMesh mesh_from_json(const std::string& text);

SimplicialMesh read_mesh(const std::filesystem::path& path);
void write_mesh(const std::filesystem::path& path, const SimplicialMesh& mesh);

/// Formats a double the way every file this library writes does (%.17g).
std::string format_double(double x);

/// One minimization outcome on one refinement level.
struct LevelRecord {
  int level = 0;
  double h = 0.0;
  double E_value = 0.0;
  double I_value = 0.0;
  double mu_estimate = 0.0;
};

struct ConvergenceRow {
  int level = 0;
  double h = 0.0;
  double E_value = 0.0;
  double I_value = 0.0;
  double mu_estimate = 0.0;
  double sharp_constant = 0.0;
  double relative_error = 0.0;
  std::optional<double> order_estimate;  ///< empty on the coarsest row
};

/// Sorts by level and fills relative errors against `sharp` and observed
/// orders log(e_{k-1}/e_k) / log(h_{k-1}/h_k).
std::vector<ConvergenceRow> convergence_rows(std::vector<LevelRecord> records, double sharp);

std::string rows_to_csv(const std::vector<ConvergenceRow>& rows);
std::string rows_to_json(const std::vector<ConvergenceRow>& rows);

/// Writes the CSV and JSON forms of the table.
void emit_report(const std::vector<ConvergenceRow>& rows, const std::filesystem::path& csv_path,
                 const std::filesystem::path& json_path);

}  // namespace yo
