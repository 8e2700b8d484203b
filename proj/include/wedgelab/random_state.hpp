#pragma once

#include <cstdint>
#include <string_view>

#include "wedgelab/canonical.hpp"
#include "wedgelab/fock.hpp"

namespace wedgelab {

/// Pinned in every report; bump the suffix if the stream ever changes.
inline constexpr std::string_view kRngName = "mt19937_64+seed_seq+box-muller/v1";

/// Complex standard-normal amplitudes, normalized. Deterministic per
/// (modes, particles, seed) on every platform: only the engine (whose output
/// the standard fixes) and hand-written transforms are used.
[[nodiscard]] SectorVector random_state(int modes, int particles, std::uint64_t seed, const Limits& limits = {});

/// Gaussian antisymmetric tensor, normalized.
[[nodiscard]] AntisymmetricTensor random_tensor(int modes, std::uint64_t seed);

/// d x d Haar-ish unitary (QR of a Gaussian matrix with phase fix).
[[nodiscard]] Eigen::MatrixXcd random_unitary(int modes, std::uint64_t seed);

}  // namespace wedgelab
