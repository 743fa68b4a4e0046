#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include "riopt/mnist.hpp"
#include "riopt/problems.hpp"

#include <filesystem>
#include <fstream>

using namespace riopt;

namespace {

Vector unit(Index n, Index i) {
  Vector v = Vector::Zero(n);
  v(i) = 1.0;
  return v;
}

Matrix diag3(Scalar a, Scalar b, Scalar c) {
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = a;
  h(1, 1) = b;
  h(2, 2) = c;
  return h;
}

// Finite-difference gradient check used for every cost: the projected
// Euclidean gradient must match the central difference of f through the
// retraction.
void check_gradient_fd(const Problem& problem, int points, Rng& rng, Scalar tol = 1e-5) {
  const Manifold& m = problem.manifold();
  for (int i = 0; i < points; ++i) {
    const ManifoldPoint x = m.random_point(rng);
    const TangentVector eta = m.random_unit_tangent(x, rng);
    const Scalar h = 1e-6 * (1.0 + m.ambient(x).norm());
    const Scalar fd = oracle::directional_derivative_fd(problem, x, eta, h);
    const Scalar ip = m.inner(x, problem.riemannian_grad(x), eta);
    const Scalar scale = std::max({std::abs(ip), std::abs(fd), 1e-8});
    CHECK(std::abs(fd - ip) / scale <= tol);
  }
}

}  // namespace

TEST_CASE("mc cost: zero at the data, dense-oracle agreement") {
  McInstance inst = gen_mc_instance(5, 5, 2, 0.7, 3);
  McProblem problem(inst);
  const auto& ops = static_cast<const FixedRankOps&>(problem.manifold());

  Rng rng(5);
  const ManifoldPoint x = ops.random_point(rng);

  // Make the data equal the current point on the mask: cost is exactly zero.
  McInstance aligned = inst;
  const Matrix x_full = ops.ambient(x);
  aligned.a = x_full;
  CHECK(mc_cost(aligned, x) == 0.0);
  CHECK(mc_egrad(aligned, x).norm() == 0.0);

  CHECK(mc_cost(inst, x) ==
        doctest::Approx(oracle::mc_cost_dense(inst.a, inst.mask, x_full)).epsilon(1e-12));

  // Factored gradient equals the dense masked residual.
  Matrix dense_grad = Matrix::Zero(5, 5);
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 5; ++j)
      if (inst.mask(i, j)) dense_grad(i, j) = 2.0 * (x_full(i, j) - inst.a(i, j));
  CHECK((mc_egrad(inst, x) - dense_grad).norm() <= 1e-10);
}

TEST_CASE("mc egrad: single observed entry with unit residual") {
  McInstance inst;
  inst.m = 3;
  inst.n = 3;
  inst.k = 1;
  inst.mask.setConstant(3, 3, false);
  inst.mask(1, 2) = true;
  inst.observed = {{1, 2}};
  FixedRankOps ops(3, 3, 1);
  const ManifoldPoint x =
      ops.make_point({Matrix(unit(3, 1)), Matrix::Ones(1, 1), Matrix(unit(3, 2))});
  inst.a = ops.ambient(x);
  inst.a(1, 2) -= 1.0;  // residual X_12 - A_12 = 1
  const Matrix g = mc_egrad(inst, x);
  CHECK(g(1, 2) == doctest::Approx(2.0));
  CHECK(g.norm() == doctest::Approx(2.0));
}

TEST_CASE("mc gradient passes the finite-difference check") {
  McProblem problem(gen_mc_instance(8, 7, 2, 0.5, 11));
  Rng rng(13);
  check_gradient_fd(problem, 10, rng);
}

TEST_CASE("pca cost: identity, hand trace, spectral optimum") {
  {
    PcaInstance inst;
    inst.n = 5;
    inst.p = 2;
    inst.h = Matrix::Identity(5, 5);
    GrassmannOps ops(5, 2);
    Rng rng(17);
    CHECK(pca_cost(inst, ops.random_point(rng)) == doctest::Approx(-1.0).epsilon(1e-12));
  }
  {
    PcaInstance inst;
    inst.n = 4;
    inst.p = 2;
    inst.h = Matrix::Zero(4, 4);
    inst.h.diagonal() << 3.0, 2.0, 1.0, 0.0;
    GrassmannOps ops(4, 2);
    Matrix basis(4, 2);
    basis.setZero();
    basis(0, 0) = 1.0;
    basis(1, 1) = 1.0;
    CHECK(pca_cost(inst, ops.make_point({basis})) == doctest::Approx(-2.5).epsilon(1e-14));
    // Global minimum is -(1/2) * (sum of the two largest eigenvalues).
    CHECK(-0.5 * oracle::top_eigenvalue_sum(inst.h, 2) == doctest::Approx(-2.5));
  }
}

TEST_CASE("pca gradient: invariant subspace is stationary, H = 0 is flat") {
  PcaInstance inst = gen_pca_instance(10, 4, 19);
  PcaProblem problem(inst);
  const Manifold& m = problem.manifold();

  Eigen::SelfAdjointEigenSolver<Matrix> es(inst.h);
  Matrix top(10, 4);
  for (Index j = 0; j < 4; ++j) top.col(j) = es.eigenvectors().col(9 - j);
  const ManifoldPoint x = m.make_point({top});
  CHECK(m.norm(x, problem.riemannian_grad(x)) <= 1e-8);

  PcaInstance flat;
  flat.n = 6;
  flat.p = 2;
  flat.h = Matrix::Zero(6, 6);
  GrassmannOps ops(6, 2);
  Rng rng(23);
  CHECK(pca_egrad(flat, ops.random_point(rng)).norm() == 0.0);
}

TEST_CASE("pca gradient passes the finite-difference check") {
  PcaProblem problem(gen_pca_instance(12, 5, 29));
  Rng rng(31);
  check_gradient_fd(problem, 10, rng);
}

TEST_CASE("pca cost is invariant under right orthogonal factors") {
  PcaProblem problem(gen_pca_instance(9, 3, 37));
  const Manifold& m = problem.manifold();
  Rng rng(41);
  const ManifoldPoint x = m.random_point(rng);
  const Matrix q = GrassmannOps::qr_canonical(rng.gaussian_matrix(3, 3));
  const ManifoldPoint xq = m.make_point({Matrix(x.part(0) * q)});
  CHECK(std::abs(problem.cost(x) - problem.cost(xq)) <= 1e-12 * (1.0 + std::abs(problem.cost(x))));
}

TEST_CASE("sphere rayleigh: eigenvector stationarity and optimum value") {
  SphereRayleighProblem problem(diag3(3.0, 1.0, 1.0));
  const Manifold& m = problem.manifold();
  const ManifoldPoint e1 =
      static_cast<const SphereOps&>(m).point_from(unit(3, 0));
  CHECK(problem.cost(e1) == doctest::Approx(-3.0));
  CHECK(m.norm(e1, problem.riemannian_grad(e1)) <= 1e-15);
  CHECK(-oracle::lambda_max(problem.h()) == doctest::Approx(-3.0));

  Rng rng(43);
  check_gradient_fd(problem, 10, rng);
}

TEST_CASE("sphere rayleigh gradient at an oblique point") {
  SphereRayleighProblem problem(diag3(3.0, 1.0, 1.0));
  Vector mid(3);
  mid << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
  const ManifoldPoint x = static_cast<const SphereOps&>(problem.manifold()).point_from(mid);
  const Matrix expected_egrad = -std::sqrt(2.0) * Vector(unit(3, 0) * 3.0 + unit(3, 1));
  CHECK((problem.euclidean_grad(x) - expected_egrad).norm() <= 1e-12);
}

TEST_CASE("mc instance generation: determinism, full mask, binomial band") {
  const McInstance a = gen_mc_instance(20, 20, 8, 0.5, 123);
  const McInstance b = gen_mc_instance(20, 20, 8, 0.5, 123);
  CHECK(a.manifest.digest == b.manifest.digest);
  CHECK(a.manifest.digest != gen_mc_instance(20, 20, 8, 0.5, 124).manifest.digest);

  const McInstance full = gen_mc_instance(4, 4, 2, 1.0, 7);
  CHECK(full.observed.size() == 16);

  // |observed| / 400 within the binomial 3-sigma band around 1/2.
  const Scalar frac = static_cast<Scalar>(a.observed.size()) / 400.0;
  CHECK(frac >= 0.35);
  CHECK(frac <= 0.65);

  // Rank-k ground truth: the optimum value 0 is attainable on the manifold.
  Eigen::JacobiSVD<Matrix> svd(a.a);
  CHECK(svd.singularValues()(7) > 1e-8);                       // rank at least 8
  CHECK(svd.singularValues().tail(12).maxCoeff() <= 1e-10 * svd.singularValues()(0));
}

TEST_CASE("pca instance generation: gram structure and determinism") {
  const PcaInstance inst = gen_pca_instance(15, 6, 55);
  Eigen::SelfAdjointEigenSolver<Matrix> es(inst.h);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  Eigen::JacobiSVD<Matrix> svd(inst.h);
  CHECK(svd.singularValues()(6) <= 1e-10 * svd.singularValues()(0));  // rank <= p
  CHECK(gen_pca_instance(15, 6, 55).manifest.digest == inst.manifest.digest);
}

TEST_CASE("power iteration matches the dense eigensolver") {
  Rng rng(59);
  const Matrix a = rng.gaussian_matrix(12, 12);
  const Matrix h = a * a.transpose();
  CHECK(power_iteration_lmax(h) ==
        doctest::Approx(oracle::lambda_max(h)).epsilon(1e-8));
}

TEST_CASE("idx parser: hand-crafted fixture round-trips exactly") {
  // Two 2x2 images with known bytes.
  const std::vector<std::vector<std::uint8_t>> images = {{0, 51, 102, 153},
                                                         {204, 255, 0, 255}};
  const std::vector<unsigned char> bytes = make_idx_image_bytes(images, 2, 2);
  REQUIRE(bytes.size() == 16 + 8);
  CHECK(bytes[3] == 0x03);  // image magic low byte

  const MnistImages parsed = parse_mnist_idx(bytes, "fixture");
  REQUIRE(parsed.data.rows() == 2);
  REQUIRE(parsed.data.cols() == 4);
  Matrix expected(2, 4);
  expected << 0.0, 51.0 / 255.0, 102.0 / 255.0, 153.0 / 255.0,
              204.0 / 255.0, 1.0, 0.0, 1.0;
  CHECK((parsed.data - expected).norm() == 0.0);
}

TEST_CASE("idx parser: negative fixtures") {
  const std::vector<std::vector<std::uint8_t>> images = {{1, 2, 3, 4}};
  std::vector<unsigned char> bytes = make_idx_image_bytes(images, 2, 2);

  // Wrong magic: a label file where images are expected.
  std::vector<unsigned char> bad_magic = bytes;
  bad_magic[3] = 0x01;
  try {
    parse_mnist_idx(bad_magic, "bad-magic");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("expected image tensor magic") != std::string::npos);
    CHECK(e.offset() == 0);
  }

  // Truncated payload.
  std::vector<unsigned char> truncated(bytes.begin(), bytes.end() - 2);
  try {
    parse_mnist_idx(truncated, "truncated");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("truncated") != std::string::npos);
    CHECK(e.offset() == static_cast<long long>(truncated.size()));
  }

  // Header cut off mid-field.
  std::vector<unsigned char> stub(bytes.begin(), bytes.begin() + 6);
  CHECK_THROWS_AS(parse_mnist_idx(stub, "stub"), ParseError);
}

TEST_CASE("idx label file loads and is ignored downstream") {
  std::vector<unsigned char> bytes = {0x00, 0x00, 0x08, 0x01, 0x00, 0x00,
                                      0x00, 0x03, 7,    8,    9};
  const std::string path =
      (std::filesystem::temp_directory_path() / "riopt_labels_fixture").string();
  {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
  }
  const std::vector<std::uint8_t> labels = load_mnist_labels(path);
  REQUIRE(labels.size() == 3);
  CHECK(labels[2] == 9);
  std::filesystem::remove(path);
}

TEST_CASE("mnist pca instance: deterministic subsample, gram matrix shape") {
  std::vector<std::vector<std::uint8_t>> images;
  Rng rng(61);
  for (int i = 0; i < 20; ++i) {
    std::vector<std::uint8_t> img(9);
    for (auto& px : img) px = static_cast<std::uint8_t>(rng.below(256));
    images.push_back(img);
  }
  const MnistImages parsed = parse_mnist_idx(make_idx_image_bytes(images, 3, 3), "synthetic");
  const PcaInstance a = mnist_pca_instance(parsed, 2, 10, 77);
  const PcaInstance b = mnist_pca_instance(parsed, 2, 10, 77);
  CHECK(a.manifest.digest == b.manifest.digest);
  CHECK(a.h.rows() == 9);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.h);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
}
