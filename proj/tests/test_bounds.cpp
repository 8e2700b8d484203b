#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "wedgelab/bounds.hpp"
#include "wedgelab/errors.hpp"
#include "wedgelab/random_state.hpp"

using namespace wedgelab;

TEST_CASE("closed forms") {
  CHECK(theorem1_rhs(2, 0.3) == doctest::Approx(2.0));
  CHECK(theorem1_rhs(4, 1.0) == doctest::Approx(2.0));
  CHECK(theorem1_rhs(4, 0.25) == doctest::Approx(3.2));
  CHECK(asymptotic_expansion(4, 0.25) == doctest::Approx(3.0));
  CHECK(theorem2_bound(4, 0.25, 0.5) == doctest::Approx(1.0));
  CHECK(theorem2_bound(4, 0.125, std::sqrt(0.125)) == doctest::Approx(3.0));
  CHECK_THROWS((void)theorem1_rhs(4, -0.1));
  CHECK_THROWS((void)theorem1_rhs(4, 1.5));
  CHECK_THROWS((void)theorem1_rhs(0, 0.5));
}

TEST_CASE("correlational bound on random states") {
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    for (const auto& r : verify_theorem1(random_state(6, 3, seed))) {
      CHECK(r.pass.value());
      CHECK(r.margin >= -1e-8);
      CHECK(r.observed <= r.bound + 1e-8);
    }
}

TEST_CASE("correlational bound examples") {
  const auto slater = verify_theorem1(basis_state<cplx>(4, 0b0011));
  REQUIRE(slater.size() == 1);
  CHECK(slater[0].observed == doctest::Approx(2.0));
  CHECK(slater[0].bound == doctest::Approx(2.0));
  CHECK(std::abs(slater[0].margin) < 1e-10);

  const auto op = PairOperator::standard(oracle::uniform(4));
  const auto yang = verify_theorem1(build_pairing_state(op, 2).normalized_sector_vector());
  REQUIRE(!yang.empty());
  CHECK(yang[0].observed == doctest::Approx(3.0));
  CHECK(yang[0].details.at("sum_lambda4") == doctest::Approx(0.25));
  CHECK(yang[0].bound == doctest::Approx(3.2));
  CHECK(yang[0].margin == doctest::Approx(0.2));
}

TEST_CASE("pairing-state lower bound") {
  const auto k4 = verify_theorem2(CanonicalForm::paired(oracle::uniform(4)), 4);
  CHECK(k4.observed == doctest::Approx(3.0));
  CHECK(k4.bound == doctest::Approx(1.0));
  CHECK(k4.pass.value());

  const auto k8 = verify_theorem2(CanonicalForm::paired(oracle::uniform(8)), 4);
  CHECK(k8.observed == doctest::Approx(3.5));
  CHECK(k8.bound == doctest::Approx(3.0));
  CHECK(k8.pass.value());

  const auto heavy = CanonicalForm::paired(oracle::harmonic(8));
  const auto skipped = verify_theorem2(heavy, 4);
  CHECK(skipped.skipped);
  CHECK(!skipped.pass.has_value());
  const auto forced = verify_theorem2(heavy, 4, 1e-8, false);
  CHECK(!forced.skipped);
  CHECK(forced.observed == doctest::Approx(2.670961).epsilon(1e-6));
  CHECK(forced.pass.value());

  for (int n : {2, 4, 6})
    for (double r : {0.9, 0.95}) {
      const auto rep = verify_theorem2(CanonicalForm::paired(oracle::geometric(r, 12)), n);
      if (!rep.skipped) CHECK(rep.pass.value());
    }
  CHECK(verify_theorem2(CanonicalForm::paired(oracle::uniform(4)), 3).skipped);
}

TEST_CASE("pair-operator inequality gap") {
  for (int k : {2, 3, 4}) {
    for (const auto& lam : {oracle::uniform(k), oracle::geometric(0.6, k), oracle::harmonic(k)}) {
      const auto op = PairOperator::standard(lam);
      for (int n : {2, 4}) {
        if (n > 2 * k) continue;
        const auto dense = proposition_gap(op, n, GapMethod::dense);
        const auto blocks = proposition_gap(op, n, GapMethod::blocks);
        CHECK(dense.min_eigenvalue >= -1e-10);
        CHECK(std::abs(dense.min_eigenvalue - blocks.min_eigenvalue) < 1e-10);
        CHECK(dense.kernel_residual < 1e-10);
        CHECK(blocks.kernel_residual < 1e-10);
      }
    }
  }
  // Support smaller than N/2: the pairing state vanishes.
  const PairOperator narrow(OrbitalBasis(8), {1.0});
  const auto g = proposition_gap(narrow, 4);
  CHECK(g.degenerate);
  CHECK(g.min_eigenvalue >= -1e-10);
}

TEST_CASE("occupation inequality for eigenvectors") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto psi = random_state(6, 3, seed);
    const auto sp = spectral_decompose(compute_gamma2(psi));
    for (const auto& r : eigenvector_occupation_check(psi, sp)) CHECK(r.pass.value());
  }
}

TEST_CASE("norm recursion") {
  for (const auto& lam : {oracle::uniform(6), oracle::geometric(0.5, 6), oracle::harmonic(6)}) {
    const auto reps = norm_recursion_check(PairOperator::standard(lam), 6);
    CHECK(reps.size() == 6);
    for (const auto& r : reps) CHECK(r.pass.value());
  }
}

TEST_CASE("supremum over states") {
  // Frozen brute-force values.
  CHECK(sup_over_states(CanonicalForm::paired(oracle::uniform(4)), 4) == doctest::Approx(3.0));
  CHECK(sup_over_states(CanonicalForm::paired(oracle::uniform(8)), 4) == doctest::Approx(3.5));
  CHECK(sup_over_states(CanonicalForm::paired({1.0}), 4) == doctest::Approx(2.0));

  // Jordan-Wigner oracle with spectators: max over active n <= N.
  for (const auto& lam : {oracle::geometric(0.6, 3), oracle::harmonic(3), oracle::uniform(3)}) {
    const auto c = oracle::annihilators(6);
    const oracle::Mat b = oracle::pair_operator(c, lam);
    const oracle::Mat h = b.adjoint() * b;
    const auto cf = CanonicalForm::paired(lam);
    for (int n = 2; n <= 6; ++n) {
      double ref = 0.0;
      for (int a = 2; a <= n; ++a) ref = std::max(ref, oracle::top_eigenvalue(oracle::restrict_to(h, a)));
      ref *= 2.0;
      CHECK(sup_over_states(cf, n, SupMethod::seniority) == doctest::Approx(ref).epsilon(1e-10));
      CHECK(sup_over_states(cf, n, SupMethod::dense) == doctest::Approx(ref).epsilon(1e-10));
      CHECK(sup_over_states(cf, n, SupMethod::iterative) == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("explore reports without verdicts") {
  const auto reps = explore_conjecture(CanonicalForm::paired(oracle::uniform(12)), {2, 3, 4, 6, 14});
  REQUIRE(reps.size() == 5);
  for (const auto& r : reps) CHECK(!r.pass.has_value());
  CHECK(reps[1].skipped);
  CHECK(reps[4].skipped);
  CHECK(reps[2].details.at("sup") == doctest::Approx(2.0 * 2 * 11 / 12));
}

TEST_CASE("counterexample driver") {
  // Frozen values for lambda ~ 1/k with K = N.
  const std::vector<std::array<double, 4>> frozen{
      {4, 2.365854, 2.286585, 1.524390}, {6, 2.814863, 2.683181, 2.012386}, {8, 3.192050, 3.022555, 2.418044}};
  double prev = 0.0;
  for (const auto& [n, obs, b1, b2] : frozen) {
    const auto r = counterexample_driver(oracle::harmonic(static_cast<int>(n)), static_cast<int>(n));
    CHECK(r.observed == doctest::Approx(obs).epsilon(1e-6));
    CHECK(r.details.at("overlap_bound") == doctest::Approx(b1).epsilon(1e-6));
    CHECK(r.details.at("half_square_bound") == doctest::Approx(b2).epsilon(1e-6));
    CHECK(r.pass.value());
    CHECK(r.observed > prev);
    prev = r.observed;
  }
  CHECK_THROWS_AS((void)counterexample_driver(oracle::harmonic(3), 4), DimensionError);
}
