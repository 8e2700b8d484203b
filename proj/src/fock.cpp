#include "wedgelab/fock.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace wedgelab {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

namespace {

std::vector<std::pair<int, int>> default_pairs(int modes) {
  std::vector<std::pair<int, int>> p;
  for (int k = 0; k < modes / 2; ++k) p.emplace_back(2 * k, 2 * k + 1);
  return p;
}

// Small Pascal table for colex ranking.
const std::vector<std::vector<std::uint64_t>>& pascal() {
  static const auto table = [] {
    std::vector<std::vector<std::uint64_t>> t(kMaxSupportedModes + 1,
                                              std::vector<std::uint64_t>(kMaxSupportedModes + 2, 0));
    for (int n = 0; n <= kMaxSupportedModes; ++n)
      for (int k = 0; k <= n + 1 && k <= kMaxSupportedModes + 1; ++k) t[n][k] = binomial(n, k);
    return t;
  }();
  return table;
}

}  // namespace

OrbitalBasis::OrbitalBasis(int modes) : OrbitalBasis(modes, default_pairs(modes)) {}

OrbitalBasis::OrbitalBasis(int modes, std::vector<std::pair<int, int>> pair_map)
    : modes_(modes), pairs_(std::move(pair_map)) {
  if (modes_ < 2 || modes_ % 2 != 0)
    throw DimensionError("paired orbital basis needs an even mode count >= 2");
  if (modes_ > kMaxSupportedModes) throw SizeError("mode count exceeds mask width");
  if (static_cast<int>(pairs_.size()) * 2 != modes_)
    throw DimensionError("pair map must cover every orbital exactly once");
  Mask seen = 0;
  for (const auto& [u, v] : pairs_) {
    for (int o : {u, v}) {
      if (o < 0 || o >= modes_) throw DimensionError("pair map orbital out of range");
      if (seen & bit(o)) throw DimensionError("pair map is not injective");
      seen |= bit(o);
    }
  }
}

SectorBasis::SectorBasis(int modes, int particles) : modes_(modes), particles_(particles) {
  states_.reserve(binomial(modes, particles));
  if (particles == 0) {
    states_.push_back(0);
    return;
  }
  // Gosper's hack walks popcount-N masks in increasing order.
  Mask m = (Mask{1} << particles) - 1;
  const Mask end = Mask{1} << modes;
  while (m < end) {
    states_.push_back(m);
    const Mask c = m & (~m + 1);
    const Mask r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

std::size_t SectorBasis::index_of(Mask m) const {
  const auto& t = pascal();
  std::size_t rank = 0;
  int k = 1;
  while (m) {
    const int pos = std::countr_zero(m);
    rank += t[pos][k];
    ++k;
    m &= m - 1;
  }
  return rank;
}

std::ptrdiff_t SectorBasis::find(Mask m) const {
  if (std::popcount(m) != particles_) return -1;
  if (modes_ < 64 && (m >> modes_) != 0) return -1;
  return static_cast<std::ptrdiff_t>(index_of(m));
}

SectorHandle enumerate_sector(int modes, int particles, const Limits& limits) {
  if (modes < 0 || particles < 0 || particles > modes)
    throw SizeError("sector requires 0 <= N <= d (got d=" + std::to_string(modes) +
                    ", N=" + std::to_string(particles) + ")");
  if (modes > limits.max_modes || modes > kMaxSupportedModes)
    throw SizeError("mode count " + std::to_string(modes) + " exceeds the configured cap");
  if (binomial(modes, particles) > limits.max_sector_dim)
    throw SizeError("sector dimension exceeds the configured cap");

  static std::mutex mu;
  static std::map<std::pair<int, int>, SectorHandle> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{modes, particles}];
  if (!slot) slot = std::make_shared<const SectorBasis>(modes, particles);
  return slot;
}

SectorVector apply_create(const Eigen::VectorXcd& f, const SectorVector& v) {
  const int d = v.modes();
  if (f.size() != d) throw DimensionError("single-particle vector length != mode count");
  if (v.particles() + 1 > d) throw SizeError("creation would exceed the mode count");
  SectorVector out(enumerate_sector(d, v.particles() + 1));
  const auto states = v.basis().states();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const cplx a = v[static_cast<Eigen::Index>(i)];
    if (a == cplx(0)) continue;
    const Mask m = states[i];
    for (int o = 0; o < d; ++o) {
      if ((m & bit(o)) || f(o) == cplx(0)) continue;
      out[static_cast<Eigen::Index>(out.basis().index_of(m | bit(o)))] +=
          static_cast<double>(fermion_sign(m, o)) * f(o) * a;
    }
  }
  return out;
}

SectorVector apply_annihilate(const Eigen::VectorXcd& f, const SectorVector& v) {
  const int d = v.modes();
  if (f.size() != d) throw DimensionError("single-particle vector length != mode count");
  if (v.particles() < 1) throw SizeError("annihilation on the vacuum sector");
  SectorVector out(enumerate_sector(d, v.particles() - 1));
  const auto states = v.basis().states();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const cplx a = v[static_cast<Eigen::Index>(i)];
    if (a == cplx(0)) continue;
    Mask rest = states[i];
    while (rest) {
      const int o = std::countr_zero(rest);
      rest &= rest - 1;
      if (f(o) == cplx(0)) continue;
      out[static_cast<Eigen::Index>(out.basis().index_of(states[i] ^ bit(o)))] +=
          static_cast<double>(fermion_sign(states[i], o)) * std::conj(f(o)) * a;
    }
  }
  return out;
}

}  // namespace wedgelab
