#include "wedgelab/random_state.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <random>

namespace wedgelab {

namespace {

class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint32_t tag, std::uint32_t a, std::uint32_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), tag, a, b};
    engine_.seed(seq);
  }

  cplx next_complex() {
    // Box-Muller on two 53-bit uniforms; u1 in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
};

}  // namespace

SectorVector random_state(int modes, int particles, std::uint64_t seed, const Limits& limits) {
  SectorVector v(enumerate_sector(modes, particles, limits));
  GaussianStream g(seed, 1u, static_cast<std::uint32_t>(modes), static_cast<std::uint32_t>(particles));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = g.next_complex();
  return v.normalized();
}

AntisymmetricTensor random_tensor(int modes, std::uint64_t seed) {
  AntisymmetricTensor t(modes);
  GaussianStream g(seed, 2u, static_cast<std::uint32_t>(modes), 0u);
  for (int j = 1; j < modes; ++j)
    for (int i = 0; i < j; ++i) t.set(i, j, g.next_complex());
  return t.normalized();
}

Eigen::MatrixXcd random_unitary(int modes, std::uint64_t seed) {
  GaussianStream g(seed, 3u, static_cast<std::uint32_t>(modes), 0u);
  Eigen::MatrixXcd z(modes, modes);
  for (int j = 0; j < modes; ++j)
    for (int i = 0; i < modes; ++i) z(i, j) = g.next_complex();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < modes; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace wedgelab
