#pragma once

// Plain-text formats.
//
// Tensor:        first line `d`, then one strictly-upper entry per line
//                `i j re im` with 0-based i < j. Blank lines and lines
//                starting with '#' are ignored.
// Sector vector: optional header `# modes D particles N`, then
//                `mask re im` per line (mask as a decimal integer, bit i =
//                orbital i). Masks not listed have amplitude zero.

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "wedgelab/canonical.hpp"
#include "wedgelab/fock.hpp"

namespace wedgelab {

[[nodiscard]] AntisymmetricTensor read_tensor(std::istream& in);
[[nodiscard]] AntisymmetricTensor read_tensor(const std::filesystem::path& path);
void write_tensor(std::ostream& out, const AntisymmetricTensor& t);

/// Without a header, `modes` must be given; N is taken from the first mask.
[[nodiscard]] SectorVector read_sector_vector(std::istream& in, std::optional<int> modes = std::nullopt);
[[nodiscard]] SectorVector read_sector_vector(const std::filesystem::path& path, std::optional<int> modes = std::nullopt);

/// Writes every amplitude with |a| > skip_below (all of them by default).
void write_sector_vector(std::ostream& out, const SectorVector& v, double skip_below = -1.0);

}  // namespace wedgelab
