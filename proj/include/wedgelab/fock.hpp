#pragma once

/*
 * Finite-dimensional fermionic Fock space.
 *
 * Occupation states are bit masks: orbital i is bit i (least significant bit
 * is orbital 0). The N-particle sector lists all popcount-N masks in
 * ascending integer order, which coincides with colexicographic order, so a
 * mask's position is its combinatorial rank and lookup needs no table.
 *
 * Creation on orbital i picks up (-1)^(number of occupied orbitals below i).
 */

#include <Eigen/Core>

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wedgelab/errors.hpp"

namespace wedgelab {

using Mask = std::uint64_t;
using cplx = std::complex<double>;

/// Size caps. These are configuration, not physics.
struct Limits {
  int max_modes = 24;
  std::size_t max_sector_dim = 3'000'000;  // iterative / matrix-free paths
  std::size_t max_dense_dim = 5'000;       // dense diagonalization
};

inline constexpr int kMaxSupportedModes = 62;

[[nodiscard]] inline Mask bit(int orbital) { return Mask{1} << orbital; }

/// (-1)^(occupied orbitals strictly below `orbital`).
[[nodiscard]] inline int fermion_sign(Mask m, int orbital) {
  return (std::popcount(m & (bit(orbital) - 1)) & 1) ? -1 : 1;
}

/// Binomial coefficient; exact for the sizes admitted by kMaxSupportedModes.
[[nodiscard]] std::uint64_t binomial(int n, int k);

/// Single-particle modes with the pairing structure (k,up) -> u_k,
/// (k,down) -> v_k. Default layout puts u_k at 2k and v_k at 2k+1.
class OrbitalBasis {
 public:
  explicit OrbitalBasis(int modes);
  OrbitalBasis(int modes, std::vector<std::pair<int, int>> pair_map);

  [[nodiscard]] int modes() const { return modes_; }
  [[nodiscard]] int pair_count() const { return static_cast<int>(pairs_.size()); }
  [[nodiscard]] int up(int k) const { return pairs_.at(k).first; }
  [[nodiscard]] int down(int k) const { return pairs_.at(k).second; }
  [[nodiscard]] const std::vector<std::pair<int, int>>& pair_map() const { return pairs_; }

  friend bool operator==(const OrbitalBasis&, const OrbitalBasis&) = default;

 private:
  int modes_;
  std::vector<std::pair<int, int>> pairs_;
};

/// All popcount-N masks over d modes, ascending.
class SectorBasis {
 public:
  SectorBasis(int modes, int particles);

  [[nodiscard]] int modes() const { return modes_; }
  [[nodiscard]] int particles() const { return particles_; }
  [[nodiscard]] std::size_t size() const { return states_.size(); }
  [[nodiscard]] std::span<const Mask> states() const { return states_; }
  [[nodiscard]] Mask state(std::size_t i) const { return states_[i]; }

  /// Colex rank of `m`. Precondition: popcount(m) == particles(), m < 2^modes.
  [[nodiscard]] std::size_t index_of(Mask m) const;

  /// index_of with validation; returns -1 for masks outside the sector.
  [[nodiscard]] std::ptrdiff_t find(Mask m) const;

  friend bool operator==(const SectorBasis& a, const SectorBasis& b) {
    return a.modes_ == b.modes_ && a.particles_ == b.particles_;
  }

 private:
  int modes_;
  int particles_;
  std::vector<Mask> states_;
};

using SectorHandle = std::shared_ptr<const SectorBasis>;

/// Validates (d, N) against `limits` and returns the (shared, memoized) sector.
[[nodiscard]] SectorHandle enumerate_sector(int modes, int particles,
                                            const Limits& limits = {});

/// Amplitudes over a sector basis.
template <typename Scalar>
class BasicSectorVector {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit BasicSectorVector(SectorHandle basis)
      : basis_(std::move(basis)), amp_(Vector::Zero(static_cast<Eigen::Index>(basis_->size()))) {}

  BasicSectorVector(SectorHandle basis, Vector amplitudes)
      : basis_(std::move(basis)), amp_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amp_.size()) != basis_->size())
      throw DimensionError("amplitude vector length does not match sector size");
  }

  [[nodiscard]] const SectorBasis& basis() const { return *basis_; }
  [[nodiscard]] const SectorHandle& basis_handle() const { return basis_; }
  [[nodiscard]] int modes() const { return basis_->modes(); }
  [[nodiscard]] int particles() const { return basis_->particles(); }
  [[nodiscard]] Eigen::Index size() const { return amp_.size(); }

  [[nodiscard]] const Vector& amplitudes() const { return amp_; }
  [[nodiscard]] Vector& amplitudes() { return amp_; }
  [[nodiscard]] Scalar& operator[](Eigen::Index i) { return amp_(i); }
  [[nodiscard]] const Scalar& operator[](Eigen::Index i) const { return amp_(i); }

  [[nodiscard]] double norm() const { return amp_.norm(); }
  [[nodiscard]] double squared_norm() const { return amp_.squaredNorm(); }

  [[nodiscard]] BasicSectorVector normalized() const {
    const double n = norm();
    if (n == 0.0) throw NormalizationError("cannot normalize the zero vector");
    return BasicSectorVector(basis_, amp_ / n);
  }

  /// Amplitude on `m`, zero when m lies outside the sector.
  [[nodiscard]] Scalar amplitude_of(Mask m) const {
    const auto i = basis_->find(m);
    return i < 0 ? Scalar(0) : amp_(i);
  }

  BasicSectorVector& operator+=(const BasicSectorVector& o) {
    require_same_sector(o);
    amp_ += o.amp_;
    return *this;
  }
  BasicSectorVector& operator-=(const BasicSectorVector& o) {
    require_same_sector(o);
    amp_ -= o.amp_;
    return *this;
  }
  BasicSectorVector& operator*=(Scalar s) {
    amp_ *= s;
    return *this;
  }
  friend BasicSectorVector operator+(BasicSectorVector a, const BasicSectorVector& b) { return a += b; }
  friend BasicSectorVector operator-(BasicSectorVector a, const BasicSectorVector& b) { return a -= b; }
  friend BasicSectorVector operator*(Scalar s, BasicSectorVector a) { return a *= s; }

  void require_same_sector(const BasicSectorVector& o) const {
    if (!(*basis_ == *o.basis_)) throw DimensionError("sector mismatch");
  }

 private:
  SectorHandle basis_;
  Vector amp_;
};

using SectorVector = BasicSectorVector<cplx>;

/// Omega: the single N = 0 state with amplitude 1.
template <typename Scalar = cplx>
[[nodiscard]] BasicSectorVector<Scalar> vacuum(int modes) {
  auto v = BasicSectorVector<Scalar>(enumerate_sector(modes, 0));
  v[0] = Scalar(1);
  return v;
}

/// Occupation basis state with the given orbitals occupied.
template <typename Scalar = cplx>
[[nodiscard]] BasicSectorVector<Scalar> basis_state(int modes, Mask m) {
  auto v = BasicSectorVector<Scalar>(enumerate_sector(modes, std::popcount(m)));
  const auto i = v.basis().find(m);
  if (i < 0) throw DimensionError("mask outside the mode range");
  v[i] = Scalar(1);
  return v;
}

/// <a, b>, conjugate-linear in a.
template <typename Scalar>
[[nodiscard]] Scalar inner(const BasicSectorVector<Scalar>& a, const BasicSectorVector<Scalar>& b) {
  a.require_same_sector(b);
  return a.amplitudes().dot(b.amplitudes());
}

namespace detail {
inline void check_orbital(int orbital, int modes) {
  if (orbital < 0 || orbital >= modes) throw DimensionError("orbital index out of range");
}
}  // namespace detail

/// c*_i: (d, N) -> (d, N+1).
template <typename Scalar>
[[nodiscard]] BasicSectorVector<Scalar> apply_create(int orbital, const BasicSectorVector<Scalar>& v) {
  const int d = v.modes();
  detail::check_orbital(orbital, d);
  if (v.particles() + 1 > d) throw SizeError("creation would exceed the mode count");
  BasicSectorVector<Scalar> out(enumerate_sector(d, v.particles() + 1));
  const auto states = v.basis().states();
  const Mask b = bit(orbital);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Mask m = states[i];
    if (m & b) continue;
    const auto j = static_cast<Eigen::Index>(out.basis().index_of(m | b));
    out[j] += static_cast<double>(fermion_sign(m, orbital)) * v[static_cast<Eigen::Index>(i)];
  }
  return out;
}

/// c_i: (d, N) -> (d, N-1). Adjoint of apply_create.
template <typename Scalar>
[[nodiscard]] BasicSectorVector<Scalar> apply_annihilate(int orbital, const BasicSectorVector<Scalar>& v) {
  const int d = v.modes();
  detail::check_orbital(orbital, d);
  if (v.particles() < 1) throw SizeError("annihilation on the vacuum sector");
  BasicSectorVector<Scalar> out(enumerate_sector(d, v.particles() - 1));
  const auto states = v.basis().states();
  const Mask b = bit(orbital);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Mask m = states[i];
    if (!(m & b)) continue;
    const auto j = static_cast<Eigen::Index>(out.basis().index_of(m ^ b));
    out[j] += static_cast<double>(fermion_sign(m, orbital)) * v[static_cast<Eigen::Index>(i)];
  }
  return out;
}

/// c*(f) = sum_i f_i c*_i for a single-particle vector f.
[[nodiscard]] SectorVector apply_create(const Eigen::VectorXcd& f, const SectorVector& v);

/// c(f) = sum_i conj(f_i) c_i; conjugate-linear in f.
[[nodiscard]] SectorVector apply_annihilate(const Eigen::VectorXcd& f, const SectorVector& v);

/// c*_i c_j, sector preserving.
template <typename Scalar>
[[nodiscard]] BasicSectorVector<Scalar> apply_hop(int to, int from, const BasicSectorVector<Scalar>& v) {
  return apply_create(to, apply_annihilate(from, v));
}

/// <v, n_i v> / <v, v>.
template <typename Scalar>
[[nodiscard]] double occupation(const BasicSectorVector<Scalar>& v, int orbital) {
  detail::check_orbital(orbital, v.modes());
  const double nn = v.squared_norm();
  if (nn == 0.0) throw NormalizationError("occupation of the zero vector");
  double acc = 0.0;
  const auto states = v.basis().states();
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] & bit(orbital)) acc += std::norm(v[static_cast<Eigen::Index>(i)]);
  return acc / nn;
}

/// <v, N v> / <v, v>, evaluated as the sum of mode occupations.
template <typename Scalar>
[[nodiscard]] double number_expectation(const BasicSectorVector<Scalar>& v) {
  const double nn = v.squared_norm();
  if (nn == 0.0) throw NormalizationError("number expectation of the zero vector");
  double acc = 0.0;
  const auto states = v.basis().states();
  for (std::size_t i = 0; i < states.size(); ++i)
    acc += std::popcount(states[i]) * std::norm(v[static_cast<Eigen::Index>(i)]);
  return acc / nn;
}

/// Dense matrix of a linear map between sectors, built column by column.
template <typename Scalar, typename Map>
[[nodiscard]] Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense_operator(
    const SectorHandle& from, const SectorHandle& to, Map&& apply) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      static_cast<Eigen::Index>(to->size()), static_cast<Eigen::Index>(from->size()));
  for (std::size_t c = 0; c < from->size(); ++c) {
    BasicSectorVector<Scalar> e(from);
    e[static_cast<Eigen::Index>(c)] = Scalar(1);
    const BasicSectorVector<Scalar> col = apply(e);
    if (!(col.basis() == *to)) throw DimensionError("dense_operator: map lands in the wrong sector");
    out.col(static_cast<Eigen::Index>(c)) = col.amplitudes();
  }
  return out;
}

}  // namespace wedgelab
