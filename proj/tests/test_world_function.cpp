#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Core>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "tgeo/error.hpp"
#include "tgeo/world_function.hpp"

using namespace tgeo;

namespace {

WorldFunction euclidean_cloud(const Eigen::MatrixXd& pts) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::euclidean;
  spec.dimension = pts.cols();
  return make_world_function(spec, pts);
}

}  // namespace

TEST_CASE("euclidean sigma is half the squared distance") {
  Eigen::MatrixXd pts(2, 2);
  pts << 0, 0, 3, 4;
  const WorldFunction wf = euclidean_cloud(pts);
  CHECK(wf.sigma({0}, {1}) == doctest::Approx(12.5).epsilon(1e-15));
  CHECK(wf.rho_squared({0}, {1}) == doctest::Approx(25.0).epsilon(1e-15));
  CHECK(wf.sigma({0}, {0}) == 0.0);
  CHECK(wf.sigma({1}, {1}) == 0.0);
}

TEST_CASE("custom euclidean metric weights the axes") {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::euclidean;
  spec.dimension = 2;
  spec.metric.resize(2, 2);
  spec.metric << 4, 0, 0, 1;
  Eigen::MatrixXd pts(2, 2);
  pts << 0, 0, 1, 1;
  const WorldFunction wf = make_world_function(spec, pts);
  CHECK(wf.sigma({0}, {1}) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("pseudo euclidean signature flips axis contributions") {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::pseudo_euclidean;
  spec.dimension = 3;
  spec.signature = {1, -1, -1};
  Eigen::MatrixXd pts(3, 3);
  pts << 0, 0, 0,
         1, 0, 0,
         1, 1, 0;
  const WorldFunction wf = make_world_function(spec, pts);
  CHECK(wf.sigma({0}, {1}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(wf.sigma({0}, {2}) == 0.0);  // null separation
  CHECK(wf.sigma({1}, {2}) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("sphere generators at the marker points") {
  Eigen::MatrixXd pts(3, 3);
  pts << 1, 0, 0,
         0, 1, 0,
         -1, 0, 0;

  GeneratorSpec chordal;
  chordal.kind = GeneratorKind::sphere_chordal;
  chordal.dimension = 3;
  const WorldFunction wc = make_world_function(chordal, pts);
  CHECK(wc.sigma({0}, {1}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(wc.sigma({0}, {2}) == doctest::Approx(2.0).epsilon(1e-15));

  GeneratorSpec intrinsic;
  intrinsic.kind = GeneratorKind::sphere_intrinsic;
  intrinsic.dimension = 3;
  const WorldFunction wi = make_world_function(intrinsic, pts);
  const double quarter = std::numbers::pi / 2.0;
  const double half = std::numbers::pi;
  CHECK(wi.sigma({0}, {1}) == doctest::Approx(0.5 * quarter * quarter).epsilon(1e-14));
  CHECK(wi.sigma({0}, {2}) == doctest::Approx(0.5 * half * half).epsilon(1e-14));
}

TEST_CASE("sigma is symmetric bit for bit") {
  SplitMix64 rng{11};
  const Eigen::MatrixXd pts = oracle::random_cloud(rng, 40, 3);
  const WorldFunction wf = euclidean_cloud(pts);
  for (Eigen::Index i = 0; i < 40; ++i)
    for (Eigen::Index j = 0; j < 40; ++j)
      CHECK(wf.sigma({i}, {j}) == wf.sigma({j}, {i}));
}

TEST_CASE("matrix tables load from sigma or rho values") {
  Eigen::MatrixXd rho(3, 3);
  rho << 0, 3, 4,
         3, 0, 5,
         4, 5, 0;
  const WorldFunction wf = make_world_function(rho, TableValues::rho);
  CHECK(wf.sigma({0}, {1}) == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(wf.sigma({1}, {2}) == doctest::Approx(12.5).epsilon(1e-15));

  Eigen::MatrixXd sigma(2, 2);
  sigma << 0, -1,
           -1, 0;
  const WorldFunction wneg = make_world_function(sigma, TableValues::sigma);
  CHECK(wneg.sigma({0}, {1}) == -1.0);  // indefinite values are legal as sigma
}

TEST_CASE("matrix world function round-trips through extraction") {
  Eigen::MatrixXd sigma(4, 4);
  sigma << 0, 1, 2, 3,
           1, 0, 4, 5,
           2, 4, 0, 6,
           3, 5, 6, 0;
  const WorldFunction wf = make_world_function(sigma, TableValues::sigma);
  const auto all = index_points(4);
  const FiniteSigmaSpace fs = extract_finite_subspace(wf, all);
  CHECK(fs.sigma_table == sigma);
}

TEST_CASE("extraction preserves order and allows repeats") {
  Eigen::MatrixXd pts(3, 1);
  pts << 0, 1, 5;
  const WorldFunction wf = euclidean_cloud(pts);
  const std::vector<PointId> picks = {{2}, {0}, {2}};
  const FiniteSigmaSpace fs = extract_finite_subspace(wf, picks);
  CHECK(fs.order() == 2);
  CHECK(fs.sigma_table(0, 1) == wf.sigma({2}, {0}));
  CHECK(fs.sigma_table(0, 2) == 0.0);
  CHECK_THROWS_AS(extract_finite_subspace(wf, std::vector<PointId>{{3}}), Error);
}

TEST_CASE("input validation names the problem") {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::euclidean;
  spec.dimension = 2;

  Eigen::MatrixXd wrong(1, 3);
  wrong << 0, 0, 0;
  CHECK_THROWS_AS(make_world_function(spec, wrong), Error);

  Eigen::MatrixXd nan(1, 2);
  nan << 0, std::nan("");
  CHECK_THROWS_AS(make_world_function(spec, nan), Error);

  GeneratorSpec bad_sig;
  bad_sig.kind = GeneratorKind::pseudo_euclidean;
  bad_sig.dimension = 2;
  bad_sig.signature = {1, 2};
  Eigen::MatrixXd ok(1, 2);
  ok << 0, 0;
  CHECK_THROWS_AS(make_world_function(bad_sig, ok), Error);

  GeneratorSpec bad_metric;
  bad_metric.kind = GeneratorKind::euclidean;
  bad_metric.dimension = 2;
  bad_metric.metric.resize(2, 2);
  bad_metric.metric << 1, 0, 0, -1;
  CHECK_THROWS_AS(make_world_function(bad_metric, ok), Error);

  GeneratorSpec sphere;
  sphere.kind = GeneratorKind::sphere_chordal;
  sphere.dimension = 3;
  Eigen::MatrixXd outside(1, 3);
  outside << 2, 0, 0;
  CHECK_THROWS_AS(make_world_function(sphere, outside), Error);
}

TEST_CASE("matrix validation rejects malformed tables") {
  Eigen::MatrixXd diag(2, 2);
  diag << 1, 0, 0, 0;
  CHECK_THROWS_WITH_AS(make_world_function(diag, TableValues::sigma),
                       doctest::Contains("(0, 0)"), Error);

  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 2, 0;
  CHECK_THROWS_WITH_AS(make_world_function(asym, TableValues::sigma),
                       doctest::Contains("(0, 1)"), Error);

  Eigen::MatrixXd negrho(2, 2);
  negrho << 0, -1, -1, 0;
  CHECK_THROWS_AS(make_world_function(negrho, TableValues::rho), Error);
}
