#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "yo/io.hpp"

namespace yo {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string mesh_to_json(const SimplicialMesh& mesh) {
  std::string out;
  out.reserve(mesh.vertices.size() * 64 + mesh.cells.size() * 32);
  auto index_list = [&out](const auto& items) {
    out += '[';
    bool first_item = true;
    for (const auto& item : items) {
      if (!first_item) out += ',';
      first_item = false;
      out += '[';
      for (std::size_t k = 0; k < item.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(item[k]);
      }
      out += ']';
    }
    out += ']';
  };
  out += "{\"boundary_faces\":";
  index_list(mesh.boundary_faces);
  out += ",\"cells\":";
  index_list(mesh.cells);
  out += ",\"dim\":3,\"vertices\":[";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (i) out += ',';
    const Point& v = mesh.vertices[i];
    out += '[' + format_double(v.x()) + ',' + format_double(v.y()) + ',' + format_double(v.z()) + ']';
  }
  out += "]}\n";
  return out;
}

SimplicialMesh mesh_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::ostringstream os;
    os << "mesh parse error at byte offset " << e.byte << ": " << e.what();
    throw InputError(os.str());
  }
  if (!doc.is_object()) throw InputError("mesh file must contain a JSON object");
  for (const char* key : {"dim", "vertices", "cells", "boundary_faces"}) {
    if (!doc.contains(key)) throw InputError(std::string("mesh file is missing key \"") + key + "\"");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<int>() != 3) throw InputError("mesh dim must be 3");

  auto tuples = [&](const char* key, std::size_t width) {
    const auto& arr = doc[key];
    if (!arr.is_array()) throw InputError(std::string("mesh key \"") + key + "\" must be an array");
    std::vector<std::vector<Eigen::Index>> out;
    out.reserve(arr.size());
    for (const auto& row : arr) {
      if (!row.is_array() || row.size() != width) {
        throw InputError(std::string("mesh key \"") + key + "\" has an entry of the wrong arity");
      }
      std::vector<Eigen::Index> idx;
      for (const auto& v : row) {
        if (!v.is_number_integer()) throw InputError(std::string("mesh key \"") + key + "\" needs integer indices");
        idx.push_back(v.get<Eigen::Index>());
      }
      out.push_back(std::move(idx));
    }
    return out;
  };

  std::vector<Point> vertices;
  const auto& varr = doc["vertices"];
  if (!varr.is_array()) throw InputError("mesh key \"vertices\" must be an array");
  for (const auto& row : varr) {
    if (!row.is_array() || row.size() != 3) throw InputError("vertex entries must be [x,y,z]");
    for (const auto& c : row) {
      if (!c.is_number()) throw InputError("vertex coordinates must be numbers");
    }
    vertices.emplace_back(row[0].get<double>(), row[1].get<double>(), row[2].get<double>());
  }
  std::vector<Cell> cells;
  for (const auto& c : tuples("cells", 4)) cells.push_back({c[0], c[1], c[2], c[3]});
  std::vector<Face> faces;
  for (const auto& f : tuples("boundary_faces", 3)) faces.push_back({f[0], f[1], f[2]});
  return finalize_mesh(std::move(vertices), std::move(cells), std::move(faces));
}

SimplicialMesh read_mesh(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open mesh file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return mesh_from_json(ss.str());
}

void write_mesh(const std::filesystem::path& path, const SimplicialMesh& mesh) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write mesh file " + path.string());
  out << mesh_to_json(mesh);
}

}  // namespace yo
