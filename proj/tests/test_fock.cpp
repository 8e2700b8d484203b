#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "wedgelab/errors.hpp"
#include "wedgelab/fock.hpp"

using namespace wedgelab;

namespace {

Eigen::MatrixXd create_matrix(int d, int n, int i) {
  return dense_operator<double>(enumerate_sector(d, n), enumerate_sector(d, n + 1),
                                [i](const BasicSectorVector<double>& v) { return apply_create(i, v); });
}

Eigen::MatrixXd annihilate_matrix(int d, int n, int i) {
  return dense_operator<double>(enumerate_sector(d, n), enumerate_sector(d, n - 1),
                                [i](const BasicSectorVector<double>& v) { return apply_annihilate(i, v); });
}

}  // namespace

TEST_CASE("sector enumeration") {
  const auto s = enumerate_sector(4, 2);
  CHECK(s->size() == 6);
  const std::vector<Mask> expected{0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100};
  CHECK(std::vector<Mask>(s->states().begin(), s->states().end()) == expected);
  for (std::size_t i = 0; i < s->size(); ++i) CHECK(s->index_of(s->state(i)) == i);
  CHECK(s->find(0b0111) == -1);
  CHECK(enumerate_sector(6, 0)->size() == 1);
  CHECK(enumerate_sector(6, 6)->size() == 1);
  CHECK(enumerate_sector(12, 6)->size() == binomial(12, 6));
}

TEST_CASE("sector validation") {
  CHECK_THROWS_AS((void)enumerate_sector(4, 5), SizeError);
  CHECK_THROWS_AS((void)enumerate_sector(-1, 0), SizeError);
  CHECK_THROWS_AS((void)enumerate_sector(30, 2), SizeError);
  Limits tight;
  tight.max_sector_dim = 10;
  CHECK_THROWS_AS((void)enumerate_sector(8, 4, tight), SizeError);
}

TEST_CASE("creation signs") {
  // c*_1 c*_0 |0> = -c*_0 c*_1 |0>
  auto v = apply_create(1, apply_create(0, vacuum<double>(3)));
  CHECK(v.amplitude_of(0b011) == doctest::Approx(-1.0));
  auto w = apply_create(0, apply_create(1, vacuum<double>(3)));
  CHECK(w.amplitude_of(0b011) == doctest::Approx(1.0));
  auto x = apply_create(0, apply_create(0, vacuum<double>(3)));
  CHECK(x.squared_norm() == 0.0);
}

TEST_CASE("creation and annihilation agree with Jordan-Wigner matrices") {
  for (int d = 1; d <= 5; ++d) {
    const auto c = oracle::annihilators(d);
    for (int n = 0; n < d; ++n)
      for (int i = 0; i < d; ++i) {
        const Eigen::MatrixXd cs = create_matrix(d, n, i);
        const auto from = enumerate_sector(d, n);
        const auto to = enumerate_sector(d, n + 1);
        for (std::size_t a = 0; a < to->size(); ++a)
          for (std::size_t b = 0; b < from->size(); ++b)
            CHECK(cs(a, b) == doctest::Approx(c[i].adjoint()(to->state(a), from->state(b)).real()));
      }
  }
}

TEST_CASE("CAR as dense matrices") {
  for (int d = 1; d <= 6; ++d)
    for (int n = 0; n <= d; ++n)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const Eigen::Index dim = static_cast<Eigen::Index>(binomial(d, n));
          Eigen::MatrixXd ac = Eigen::MatrixXd::Zero(dim, dim);
          if (n < d) ac += annihilate_matrix(d, n + 1, i) * create_matrix(d, n, j);
          if (n > 0) ac += create_matrix(d, n - 1, j) * annihilate_matrix(d, n, i);
          const Eigen::MatrixXd expected = (i == j ? 1.0 : 0.0) * Eigen::MatrixXd::Identity(dim, dim);
          CHECK((ac - expected).cwiseAbs().maxCoeff() < 1e-12);
          if (n + 2 <= d) {
            const Eigen::MatrixXd cc = create_matrix(d, n + 1, i) * create_matrix(d, n, j) +
                                       create_matrix(d, n + 1, j) * create_matrix(d, n, i);
            CHECK(cc.cwiseAbs().maxCoeff() == 0.0);
          }
        }
}

TEST_CASE("annihilation is the adjoint of creation") {
  for (int d = 2; d <= 6; ++d)
    for (int n = 0; n < d; ++n)
      for (int i = 0; i < d; ++i)
        CHECK((create_matrix(d, n, i).transpose() - annihilate_matrix(d, n + 1, i)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("generalized operators") {
  Eigen::VectorXcd f(4);
  f << cplx(1, 2), cplx(0, -1), cplx(0.5, 0), cplx(0, 0);
  f.normalize();
  const SectorVector v0 = vacuum<cplx>(4);
  const SectorVector one = apply_create(f, v0);
  CHECK(one.norm() == doctest::Approx(1.0));
  // c(f) c*(f) Omega = ||f||^2 Omega
  const SectorVector back = apply_annihilate(f, one);
  CHECK(std::abs(back[0] - cplx(1.0)) < 1e-14);
  CHECK(apply_create(f, one).norm() < 1e-14);
}

TEST_CASE("occupation and hopping") {
  auto v = basis_state<double>(4, 0b0101);
  CHECK(occupation(v, 0) == 1.0);
  CHECK(occupation(v, 1) == 0.0);
  CHECK(number_expectation(v) == 2.0);
  auto h = apply_hop(1, 0, v);  // c*_1 c_0
  CHECK(h.amplitude_of(0b0110) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)apply_create(7, v), DimensionError);
}

TEST_CASE("sector vector arithmetic") {
  auto a = basis_state<cplx>(4, 0b0011);
  auto b = basis_state<cplx>(4, 0b1100);
  auto s = a + b;
  CHECK(s.norm() == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(inner(a, s) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(s.normalized().norm() - 1.0) < 1e-15);
  auto c = basis_state<cplx>(4, 0b0001);
  CHECK_THROWS_AS(a += c, DimensionError);
  CHECK_THROWS_AS((void)SectorVector(enumerate_sector(4, 2)).normalized(), NormalizationError);
}

TEST_CASE("orbital basis validation") {
  CHECK_NOTHROW(OrbitalBasis(4, {{0, 2}, {1, 3}}));
  CHECK_THROWS_AS(OrbitalBasis(3), DimensionError);
  CHECK_THROWS_AS(OrbitalBasis(4, {{0, 1}, {1, 2}}), DimensionError);
  CHECK_THROWS_AS(OrbitalBasis(4, {{0, 1}}), DimensionError);
  const OrbitalBasis b(6);
  CHECK(b.pair_count() == 3);
  CHECK(b.up(2) == 4);
  CHECK(b.down(2) == 5);
}
