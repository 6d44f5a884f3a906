#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "yo/io.hpp"

namespace yo {

std::vector<ConvergenceRow> convergence_rows(std::vector<LevelRecord> records, double sharp) {
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.level < b.level; });
  std::vector<ConvergenceRow> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    ConvergenceRow row;
    row.level = r.level;
    row.h = r.h;
    row.E_value = r.E_value;
    row.I_value = r.I_value;
    row.mu_estimate = r.mu_estimate;
    row.sharp_constant = sharp;
    row.relative_error = std::abs(r.mu_estimate - sharp) / sharp;
    if (!rows.empty()) {
      const auto& prev = rows.back();
      if (prev.relative_error > 0.0 && row.relative_error > 0.0 && prev.h != row.h) {
        row.order_estimate = std::log(prev.relative_error / row.relative_error) / std::log(prev.h / row.h);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::string rows_to_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "level,h,E_value,I_value,mu_estimate,sharp_constant,relative_error,order_estimate\n";
  for (const auto& r : rows) {
    out += std::to_string(r.level) + ',' + format_double(r.h) + ',' + format_double(r.E_value) + ',' +
           format_double(r.I_value) + ',' + format_double(r.mu_estimate) + ',' + format_double(r.sharp_constant) +
           ',' + format_double(r.relative_error) + ',' + (r.order_estimate ? format_double(*r.order_estimate) : "") +
           '\n';
  }
  return out;
}

std::string rows_to_json(const std::vector<ConvergenceRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["level"] = r.level;
    j["h"] = r.h;
    j["E_value"] = r.E_value;
    j["I_value"] = r.I_value;
    j["mu_estimate"] = r.mu_estimate;
    j["sharp_constant"] = r.sharp_constant;
    j["relative_error"] = r.relative_error;
    j["order_estimate"] = r.order_estimate ? nlohmann::ordered_json(*r.order_estimate) : nlohmann::ordered_json();
    arr.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["rows"] = std::move(arr);
  return doc.dump(2) + "\n";
}

void emit_report(const std::vector<ConvergenceRow>& rows, const std::filesystem::path& csv_path,
                 const std::filesystem::path& json_path) {
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw InputError("cannot write " + csv_path.string());
  csv << rows_to_csv(rows);
  std::ofstream js(json_path, std::ios::binary);
  if (!js) throw InputError("cannot write " + json_path.string());
  js << rows_to_json(rows);
}

}  // namespace yo
