#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "apchemo/grid.hpp"

namespace apchemo {

/// Node-centred scalar field. Tag makes density and chemoattractant distinct types.
/// 2D fields use the flat Grid2D::index layout.
template <class Tag>
class NodeField {
 public:
  NodeField() = default;
  explicit NodeField(std::size_t n, double value = 0.0) : data_(n, value) {}
  explicit NodeField(std::vector<double> values) : data_(std::move(values)) {}

  std::size_t size() const noexcept { return data_.size(); }
  double operator[](std::size_t i) const noexcept { return data_[i]; }
  double& operator[](std::size_t i) noexcept { return data_[i]; }
  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }
  const std::vector<double>& vector() const noexcept { return data_; }

  bool operator==(const NodeField&) const = default;

 private:
  std::vector<double> data_;
};

using DensityField = NodeField<struct DensityTag>;
using ChemoField = NodeField<struct ChemoTag>;

/// Phase-space array: one contiguous spatial row per velocity node (k-major).
class PhaseArray {
 public:
  PhaseArray() = default;
  PhaseArray(std::size_t n_velocity, std::size_t n_space, double value = 0.0)
      : n_velocity_(n_velocity), n_space_(n_space), data_(n_velocity * n_space, value) {}

  std::size_t n_velocity() const noexcept { return n_velocity_; }
  std::size_t n_space() const noexcept { return n_space_; }

  double operator()(std::size_t k, std::size_t j) const noexcept {
    return data_[k * n_space_ + j];
  }
  double& operator()(std::size_t k, std::size_t j) noexcept { return data_[k * n_space_ + j]; }

  std::span<const double> row(std::size_t k) const noexcept {
    return {data_.data() + k * n_space_, n_space_};
  }
  std::span<double> row(std::size_t k) noexcept { return {data_.data() + k * n_space_, n_space_}; }

  /// All values at one spatial location, gathered across velocity nodes.
  std::vector<double> column(std::size_t j) const;

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  bool operator==(const PhaseArray&) const = default;

 private:
  std::size_t n_velocity_ = 0;
  std::size_t n_space_ = 0;
  std::vector<double> data_;
};

/// g at half nodes x_{j+1/2} (column j) times velocity nodes.
using PerturbationField = PhaseArray;

struct KineticState {
  double t = 0.0;
  DensityField rho;
  PerturbationField g;
  ChemoField c;
};

struct MacroState {
  double t = 0.0;
  DensityField rho;
  ChemoField c;
};

/// Throws InvalidArgument when the state does not match the grid.
void check_shape(const KineticState& s, const Grid1D& grid);
void check_shape(const MacroState& s, const Grid1D& grid);

/// (rho_j + rho_{j+1}) / 2 for every half node, wrapping at j = n-1.
std::vector<double> half_grid_average(const DensityField& rho);

struct VelocityKernels;

/// Diagnostic phase-space density f_{j,k} = rho_j psi0(v_k) + epsilon g_{j,k},
/// g interpolated to nodes from the two adjacent half nodes.
PhaseArray reconstruct_f(const KineticState& state, const VelocityKernels& kernels,
                         double epsilon);

}  // namespace apchemo
