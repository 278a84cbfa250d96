#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tgeo/error.hpp"
#include "tgeo/io.hpp"
#include "tgeo/world_function.hpp"

using namespace tgeo;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "tgeo_io_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = work_dir() / name;
  std::ofstream f(p, std::ios::binary);
  f << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(TGEO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

const std::string kSquareJson =
    R"({ "generator": "euclidean", "dimension": 2,
         "points": [[0,0],[1,0],[1,1],[0,1]] })";

}  // namespace

TEST_CASE("point clouds load with generator and dimensions checked") {
  const fs::path p = write_file("cloud.json", kSquareJson);
  const PointCloudInput in = load_point_cloud_json(p);
  CHECK(in.spec.kind == GeneratorKind::euclidean);
  CHECK(in.spec.dimension == 2);
  CHECK(in.points.rows() == 4);
  const WorldFunction wf = make_world_function(in.spec, in.points);
  CHECK(wf.sigma({0}, {2}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("malformed point clouds name the offending field") {
  CHECK_THROWS_WITH_AS(load_point_cloud_json(write_file("m1.json", R"({"dimension":2})")),
                       doctest::Contains("generator"), Error);
  CHECK_THROWS_WITH_AS(
      load_point_cloud_json(write_file(
          "m2.json", R"({"generator":"euclidean","dimension":2,"points":[[1,2],[3]]})")),
      doctest::Contains("points[1]"), Error);
  CHECK_THROWS_AS(load_point_cloud_json(write_file(
                      "m3.json", R"({"generator":"matrix","dimension":1,"points":[[0]]})")),
                  Error);
  CHECK_THROWS_AS(load_point_cloud_json(write_file("m4.json", "{ not json")), Error);
}

TEST_CASE("csv matrices load as full squares or lower triangles") {
  const fs::path full = write_file("full.csv",
                                   "0,3,4\n"
                                   "3,0,5\n"
                                   "4,5,0\n");
  const fs::path tri = write_file("tri.csv",
                                  "0\n"
                                  "3,0\n"
                                  "4,5,0\n");
  const Eigen::MatrixXd a = load_matrix_csv(full);
  const Eigen::MatrixXd b = load_matrix_csv(tri);
  CHECK(a == b);
  CHECK(a(2, 1) == 5.0);

  CHECK_THROWS_WITH_AS(load_matrix_csv(write_file("ragged.csv", "0,1\n1\n")),
                       doctest::Contains("neither"), Error);
  CHECK_THROWS_WITH_AS(load_matrix_csv(write_file("gap.csv", "0,,1\n")),
                       doctest::Contains("empty cell"), Error);
  CHECK_THROWS_AS(load_matrix_csv(write_file("text.csv", "0,x\nx,0\n")), Error);
}

TEST_CASE("matrix values come from the sidecar or the flag, never a guess") {
  const std::string body = "0,2\n2,0\n";

  const fs::path bare = write_file("bare.csv", body);
  fs::remove(bare.string() + ".json");
  CHECK_THROWS_WITH_AS(load_world_function(bare, std::nullopt), doctest::Contains("guess"),
                       Error);
  CHECK(load_world_function(bare, TableValues::sigma).sigma({0}, {1}) == 2.0);
  CHECK(load_world_function(bare, TableValues::rho).sigma({0}, {1}) == 2.0);

  const fs::path with_sidecar = write_file("side.csv", body);
  write_file("side.csv.json", R"({"values":"rho"})");
  CHECK(load_world_function(with_sidecar, std::nullopt).sigma({0}, {1}) == 2.0);
  CHECK(load_world_function(with_sidecar, TableValues::rho).sigma({0}, {1}) == 2.0);
  CHECK_THROWS_WITH_AS(load_world_function(with_sidecar, TableValues::sigma),
                       doctest::Contains("conflict"), Error);

  write_file("side.csv.json", R"({"values":"area"})");
  CHECK_THROWS_AS(load_world_function(with_sidecar, std::nullopt), Error);
}

TEST_CASE("floats survive the decimal round trip") {
  for (double v : {0.1, 1.0 / 3.0, 2.5e-12, 1e308, 5e-324, 0.0, -0.0, 12.5, -4097.03125}) {
    const std::string s = format_double(v);
    const double back = std::strtod(s.c_str(), nullptr);
    CHECK(back == v);
    CHECK(std::signbit(back) == std::signbit(v));
  }
}

TEST_CASE("cli maps outcomes to exit codes") {
  const fs::path cloud = write_file("cli_cloud.json", kSquareJson);
  CHECK(cli("classify --input " + cloud.string() + " --order 1") == 0);
  CHECK(cli("classify --input " + cloud.string() + " --order 9") == 2);
  CHECK(cli("classify --input /nonexistent.json --order 1") == 2);
  CHECK(cli("classify") == 2);        // missing required --input
  CHECK(cli("no-such-command") == 2);
  CHECK(cli("--help") == 0);

  // embeddable square: 0; negative sigma: verdict-negative 1
  write_file("neg.csv", "0,-1\n-1,0\n");
  write_file("neg.csv.json", R"({"values":"sigma"})");
  CHECK(cli("embed-check --input " + cloud.string()) == 0);
  CHECK(cli("embed-check --input " + (work_dir() / "neg.csv").string()) == 1);

  // sphere sigma inside the unit disk has no flat structure at order 2
  const fs::path ball = write_file("cli_ball.json",
                                   R"({ "generator": "sphere_intrinsic", "dimension": 2,
                                        "points": [[0,0],[0.6,0],[0.6,0.6],[0,0.6],
                                                   [0.3,0.2],[-0.5,0.4]] })");
  CHECK(cli("embed-check --input " + ball.string() + " --order 2") == 1);
}

TEST_CASE("cli rejects conflicting or senseless flag combinations") {
  const fs::path cloud = write_file("cli_cloud2.json", kSquareJson);
  write_file("plain.csv", "0,2\n2,0\n");
  fs::remove((work_dir() / "plain.csv.json").string());

  CHECK(cli("classify --input " + cloud.string() + " --order 1 --values sigma") == 2);
  CHECK(cli("classify --input " + (work_dir() / "plain.csv").string() + " --order 1") == 2);
  CHECK(cli("classify --input " + (work_dir() / "plain.csv").string() +
            " --order 1 --values sigma") == 0);
  CHECK(cli("classify --input " + (work_dir() / "plain.csv").string() +
            " --order 1 --generator euclidean --values sigma") == 2);
  CHECK(cli("classify --input " + cloud.string() + " --order 1 --dim 3") == 2);
  CHECK(cli("tube --input " + cloud.string() + " --basis 0,9") == 2);
  CHECK(cli("section --input " + cloud.string() + " --basis 0,1") == 2);  // missing --at
}

TEST_CASE("cli output lands in --out byte-identically across runs") {
  const fs::path cloud = write_file("cli_cloud3.json", kSquareJson);
  const fs::path out1 = work_dir() / "run1.csv";
  const fs::path out2 = work_dir() / "run2.csv";
  const std::string base = "classify --input " + cloud.string() + " --order 1,2,3 --seed 99 ";
  REQUIRE(cli(base + "--out " + out1.string()) == 0);
  REQUIRE(cli(base + "--out " + out2.string()) == 0);
  const std::string text = slurp(out1);
  CHECK(text == slurp(out2));
  CHECK(text.substr(0, text.find('\n')) == "order,points,f,length,klass");
  CHECK(text.find("\n\norder,subsets,zero,positive,negative\n") != std::string::npos);
  CHECK(text.find("3,0 1 2 3,0,0,null") != std::string::npos);  // planar four-tuple

  const fs::path jout = work_dir() / "run.json";
  REQUIRE(cli("embed-check --input " + cloud.string() + " --format json --out " +
              jout.string()) == 0);
  const std::string jtext = slurp(jout);
  CHECK(jtext.find("\"verdict\": \"embeddable\"") != std::string::npos);
  CHECK(jtext.find("\"embeddable_dim\": 2") != std::string::npos);
}

TEST_CASE("generator reinterpretation changes the loaded sigma") {
  const fs::path cloud = write_file("cli_cloud4.json",
                                    R"({ "generator": "euclidean", "dimension": 2,
                                         "points": [[0.3,0],[0,0.4]] })");
  const fs::path e_out = work_dir() / "as_euclid.csv";
  const fs::path s_out = work_dir() / "as_sphere.csv";
  REQUIRE(cli("classify --input " + cloud.string() + " --order 1 --out " + e_out.string()) == 0);
  REQUIRE(cli("classify --input " + cloud.string() +
              " --generator sphere_chordal --order 1 --out " + s_out.string()) == 0);
  // same coordinates, same chordal formula at these magnitudes
  CHECK(slurp(e_out) == slurp(s_out));

  const fs::path m_out = work_dir() / "as_minkowski.csv";
  REQUIRE(cli("classify --input " + cloud.string() +
              " --generator pseudo_euclidean --signature 1,-1 --order 1 --out " +
              m_out.string()) == 0);
  CHECK(slurp(m_out) != slurp(e_out));
  CHECK(slurp(m_out).find("imaginary") != std::string::npos);  // 0.09 - 0.16 < 0
}
