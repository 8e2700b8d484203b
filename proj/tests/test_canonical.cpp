#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "wedgelab/canonical.hpp"
#include "wedgelab/errors.hpp"
#include "wedgelab/io.hpp"
#include "wedgelab/random_state.hpp"

using namespace wedgelab;

namespace {

Eigen::VectorXcd e(int d, int i) { return Eigen::VectorXcd::Unit(d, i); }

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

void check_orthonormal(const CanonicalForm& cf) {
  const Eigen::MatrixXcd g = cf.vectors.adjoint() * cf.vectors;
  CHECK(max_abs(g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())) < 1e-10);
}

}  // namespace

TEST_CASE("elementary wedge") {
  const auto w = AntisymmetricTensor::wedge(e(4, 0), e(4, 1));
  CHECK(w.norm() == doctest::Approx(1.0));
  const auto cf = youla_decompose(w);
  REQUIRE(cf.size() == 1);
  CHECK(cf.lambdas[0] == doctest::Approx(1.0));
  CHECK(correlation_measures(cf).sum_lambda4 == doctest::Approx(1.0));
  const auto amp = w.wedge_amplitudes();
  CHECK(std::abs(amp(0) - cplx(1.0)) < 1e-15);  // e0 ^ e1 is the first pair
}

TEST_CASE("wedge sign convention") {
  auto t = AntisymmetricTensor(3);
  t.set(0, 2, cplx(0.5));
  CHECK(t.matrix()(2, 0) == cplx(-0.5));
  const auto w = AntisymmetricTensor::wedge(e(3, 2), e(3, 0));
  CHECK(std::abs(w.matrix()(0, 2) + 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("uniform superposition of two wedges") {
  auto t = AntisymmetricTensor::wedge(e(4, 0), e(4, 1));
  t += AntisymmetricTensor::wedge(e(4, 2), e(4, 3));
  t *= cplx(1.0 / std::sqrt(2.0));
  const auto cf = youla_decompose(t);
  REQUIRE(cf.size() == 2);
  CHECK(cf.lambdas[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(cf.lambdas[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(correlation_measures(cf).sum_lambda4 == doctest::Approx(0.5));
  check_orthonormal(cf);
  CHECK(max_abs(reconstruct(cf, 4).matrix() - t.matrix()) < 1e-12);
}

TEST_CASE("geometric profile") {
  // lambda ~ (1, 1/2, 1/4, 1/8): sum lambda^4 = 257/425 exactly.
  const std::vector<double> raw{1.0, 0.5, 0.25, 0.125};
  double n = 0.0;
  for (double x : raw) n += x * x;
  AntisymmetricTensor t(8);
  for (int k = 0; k < 4; ++k) {
    auto w = AntisymmetricTensor::wedge(e(8, 2 * k), e(8, 2 * k + 1));
    w *= cplx(raw[static_cast<std::size_t>(k)] / std::sqrt(n));
    t += w;
  }
  const auto cf = youla_decompose(t);
  CHECK(correlation_measures(cf).sum_lambda4 == doctest::Approx(257.0 / 425.0).epsilon(1e-13));
  CHECK(correlation_measures(cf).participation == doctest::Approx(425.0 / 257.0).epsilon(1e-13));
}

TEST_CASE("random round trips") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (int d : {2, 3, 5, 8}) {
      const auto t = random_tensor(d, seed);
      const auto cf = youla_decompose(t);
      CHECK(cf.size() == d / 2);
      check_orthonormal(cf);
      double s2 = 0.0;
      for (double l : cf.lambdas) s2 += l * l;
      CHECK(s2 == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::is_sorted(cf.lambdas.rbegin(), cf.lambdas.rend()));
      CHECK(max_abs(reconstruct(cf, d).matrix() - t.matrix()) < 1e-10);
      // <Phi, u_k ^ v_k> = lambda_k
      for (int k = 0; k < cf.size(); ++k) {
        const auto w = AntisymmetricTensor::wedge(cf.u(k), cf.v(k));
        CHECK(std::abs(inner(w, t) - cplx(cf.lambdas[static_cast<std::size_t>(k)])) < 1e-10);
      }
    }
  }
}

TEST_CASE("unitary congruence preserves the coefficients") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int d = 8;
    const auto t = random_tensor(d, seed);
    const Eigen::MatrixXcd v = random_unitary(d, seed + 100);
    const auto rotated = AntisymmetricTensor::from_matrix(v * t.matrix() * v.transpose(), 1e-12);
    const auto a = youla_decompose(t);
    const auto b = youla_decompose(rotated);
    REQUIRE(a.size() == b.size());
    for (int k = 0; k < a.size(); ++k)
      CHECK(std::abs(a.lambdas[static_cast<std::size_t>(k)] - b.lambdas[static_cast<std::size_t>(k)]) < 1e-10);
  }
}

TEST_CASE("rank-deficient and degenerate inputs") {
  // Degenerate cluster in a rotated frame.
  const int d = 6;
  const Eigen::MatrixXcd v = random_unitary(d, 3);
  auto t = AntisymmetricTensor::wedge(v.col(0), v.col(1));
  t += AntisymmetricTensor::wedge(v.col(2), v.col(3));
  t *= cplx(1.0 / std::sqrt(2.0));
  const auto cf = youla_decompose(t);
  CHECK(cf.size() == 2);
  check_orthonormal(cf);
  CHECK(max_abs(reconstruct(cf, d).matrix() - t.matrix()) < 1e-12);
}

TEST_CASE("youla errors") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS((void)AntisymmetricTensor::from_matrix(a), NotAntisymmetricError);
  AntisymmetricTensor t(4);
  t.set(0, 1, cplx(2.0));
  CHECK_THROWS_AS((void)youla_decompose(t), NormalizationError);
  YoulaOptions loose;
  loose.require_normalized = false;
  CHECK(youla_decompose(t, loose).lambdas[0] == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK_THROWS_AS((void)AntisymmetricTensor(4).normalized(), NormalizationError);
}

TEST_CASE("embedding as a two-particle state") {
  const OrbitalBasis basis(4);
  const auto w = AntisymmetricTensor::wedge(e(4, 0), e(4, 1));
  const auto v = embed_as_sector_vector(w, basis);
  CHECK(v.particles() == 2);
  CHECK(std::abs(v.amplitude_of(0b0011) - cplx(1.0)) < 1e-15);

  auto t = AntisymmetricTensor::wedge(e(4, 0), e(4, 1));
  t += AntisymmetricTensor::wedge(e(4, 2), e(4, 3));
  t *= cplx(1.0 / std::sqrt(2.0));
  const auto s = embed_as_sector_vector(youla_decompose(t), basis);
  CHECK(std::abs(s.amplitude_of(0b0011) - cplx(1.0 / std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(s.amplitude_of(0b1100) - cplx(1.0 / std::sqrt(2.0))) < 1e-12);
  CHECK(s.norm() == doctest::Approx(1.0));
}

TEST_CASE("tensor text format") {
  const auto t = random_tensor(5, 11);
  std::stringstream ss;
  write_tensor(ss, t);
  const auto back = read_tensor(ss);
  CHECK(max_abs(back.matrix() - t.matrix()) < 1e-15);

  std::istringstream in("# comment\n4\n0 1 0.5 0\n\n2 3 0.5 0.5\n");
  const auto u = read_tensor(in);
  CHECK(u.matrix()(1, 0) == cplx(-0.5));
  CHECK(u.matrix()(2, 3) == cplx(0.5, 0.5));

  std::istringstream bad("3\n1 0 1 0\n");
  CHECK_THROWS((void)read_tensor(bad));
}
