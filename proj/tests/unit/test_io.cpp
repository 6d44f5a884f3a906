#include <filesystem>
#include <fstream>
#include <functional>

#include <gtest/gtest.h>

#include "yo/io.hpp"

using namespace yo;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "yo_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(MeshJson, SeedRoundTripsByteForByte) {
  const auto m = build_ball_mesh(0);
  const std::string text = mesh_to_json(m);
  EXPECT_EQ(text.front(), '{');
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(mesh_to_json(mesh_from_json(text)), text);
}

TEST(MeshJson, LevelTwoFileRoundTripIsHashStable) {
  const auto m = build_ball_mesh(2);
  const auto path = scratch("level2.json");
  write_mesh(path, m);
  const auto back = read_mesh(path);
  EXPECT_EQ(back.vertices, m.vertices);
  EXPECT_EQ(back.cells, m.cells);
  EXPECT_EQ(back.boundary_vertices, m.boundary_vertices);
  const auto path2 = scratch("level2b.json");
  write_mesh(path2, back);
  std::ifstream a(path, std::ios::binary), b(path2, std::ios::binary);
  std::string sa((std::istreambuf_iterator<char>(a)), {}), sb((std::istreambuf_iterator<char>(b)), {});
  EXPECT_EQ(std::hash<std::string>{}(sa), std::hash<std::string>{}(sb));
  EXPECT_EQ(sa, sb);
}

TEST(MeshJson, KeysAreAcceptedInAnyOrder) {
  const std::string text =
      R"({"vertices":[[0,0,0],[1,0,0],[0,1,0],[0,0,1]],"dim":3,"cells":[[0,1,2,3]],)"
      R"("boundary_faces":[[0,2,1],[0,1,3],[0,3,2],[1,2,3]]})";
  const auto m = mesh_from_json(text);
  EXPECT_EQ(m.boundary_vertices.size(), 4u);
  EXPECT_EQ(mesh_to_json(mesh_from_json(mesh_to_json(m))), mesh_to_json(m));
}

TEST(MeshJson, CorruptedIndexIsRejected) {
  std::string text = mesh_to_json(build_ball_mesh(0));
  const auto pos = text.find("\"cells\":[[") + 10;
  text.replace(pos, 1, "42");
  EXPECT_THROW(mesh_from_json(text), InputError);
}

TEST(MeshJson, ParseErrorNamesByteOffset) {
  try {
    mesh_from_json(R"({"dim":3,"vertices":[[0,0,0],)");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("byte offset 30"), std::string::npos) << e.what();
  }
}

TEST(MeshJson, SchemaViolations) {
  EXPECT_THROW(mesh_from_json("[1,2]"), InputError);
  EXPECT_THROW(mesh_from_json(R"({"dim":3,"vertices":[],"cells":[]})"), InputError);
  EXPECT_THROW(mesh_from_json(R"({"dim":2,"vertices":[],"cells":[],"boundary_faces":[]})"), InputError);
  EXPECT_THROW(mesh_from_json(R"({"dim":3,"vertices":[[0,0]],"cells":[],"boundary_faces":[]})"), InputError);
  EXPECT_THROW(read_mesh(scratch("does_not_exist.json")), InputError);
}

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
}

TEST(Report, EmptyInputIsHeaderOnly) {
  EXPECT_EQ(rows_to_csv(convergence_rows({}, 1.0)),
            "level,h,E_value,I_value,mu_estimate,sharp_constant,relative_error,order_estimate\n");
}

TEST(Report, SingleRecordGivesOneRowWithoutOrder) {
  const auto rows = convergence_rows({{3, 0.5, 11.0, 11.0, 11.0}}, 10.0);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].relative_error, 0.1, 1e-15);
  EXPECT_FALSE(rows[0].order_estimate.has_value());
  const std::string csv = rows_to_csv(rows);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(csv.substr(csv.size() - 2), ",\n");
}

TEST(Report, RowsAreSortedAndOrderIsMeasured) {
  // errors 4e-2, 1e-2 at h = 1, 0.5 -> order 2
  const auto rows = convergence_rows({{2, 0.5, 0, 0, 10.1}, {1, 1.0, 0, 0, 10.4}}, 10.0);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].level, 1);
  EXPECT_GT(rows[0].relative_error, rows[1].relative_error);
  ASSERT_TRUE(rows[1].order_estimate.has_value());
  EXPECT_NEAR(*rows[1].order_estimate, 2.0, 1e-12);
}

TEST(Report, EmitWritesBothFiles) {
  const auto rows = convergence_rows({{1, 1.0, 1, 1, 1}}, 2.0);
  emit_report(rows, scratch("r.csv"), scratch("r.json"));
  EXPECT_TRUE(fs::exists(scratch("r.csv")));
  std::ifstream js(scratch("r.json"));
  std::string text((std::istreambuf_iterator<char>(js)), {});
  EXPECT_NE(text.find("\"rows\""), std::string::npos);
  EXPECT_NE(text.find("\"order_estimate\": null"), std::string::npos);
}
