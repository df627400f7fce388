#ifndef FRACSOB_CORE_HPP
#define FRACSOB_CORE_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "fracsob/closed_form.hpp"
#include "fracsob/errors.hpp"
#include "fracsob/types.hpp"

namespace fracsob {

using Index = Eigen::Index;
using ComplexArray = Eigen::ArrayXcd;
using RealArray = Eigen::ArrayXd;

struct Interval {
  Real lo = 0.0;
  Real hi = 0.0;

  Real length() const { return hi - lo; }
  bool contains(Real x, Real tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned box in one or two dimensions.
class DomainSpec {
 public:
  static DomainSpec line(Real lo, Real hi);
  static DomainSpec box(Interval x, Interval y);
  /// Parses "lo:hi" (1D) or "lo:hi,lo:hi" (2D).
  static DomainSpec parse(const std::string& text);

  int dimension() const { return dimension_; }
  const Interval& axis(int a) const { return bounds_[a]; }
  Real diameter() const;
  bool contains(const Point& x, Real tol = 0.0) const;
  /// True when `other` lies inside this box.
  bool encloses(const DomainSpec& other, Real tol = 0.0) const;
  std::string to_string() const;

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

 private:
  DomainSpec(int dimension, std::array<Interval, 2> bounds);

  int dimension_ = 1;
  std::array<Interval, 2> bounds_{};
};

/// Uniform tensor grid. Flat indices are row-major with axis 0 slowest.
///
/// Node coordinates are base + (first + i) * spacing, so sub-grids and
/// enlarged grids cut from the same lattice reproduce coordinates bit-exactly.
class Grid {
 public:
  static Grid line(Real origin, Real spacing, Index count);
  static Grid plane(std::array<Real, 2> origin, std::array<Real, 2> spacing,
                    std::array<Index, 2> count);
  /// Nodes lo + k*h covering the box; the upper bound is included when it is a node.
  static Grid covering(const DomainSpec& domain, Real spacing);

  int dimension() const { return dimension_; }
  Real origin(int axis) const { return coordinate(axis, 0); }
  Real spacing(int axis) const { return spacing_[axis]; }
  Index count(int axis) const { return count_[axis]; }
  Index size() const;
  Real cell_volume() const;

  Real coordinate(int axis, Index i) const {
    return base_[axis] + static_cast<Real>(first_[axis] + i) * spacing_[axis];
  }
  Point point(Index flat) const;
  std::array<Index, 2> unflatten(Index flat) const;
  Index flatten(Index i0, Index i1 = 0) const { return dimension_ == 1 ? i0 : i0 * count_[1] + i1; }

  DomainSpec extent() const;
  /// Every other node along each axis; the result keeps the origin.
  Grid coarsened() const;
  /// Grid on the same lattice whose node range is [first, first + count) relative to this grid.
  Grid lattice_window(std::array<Index, 2> first, std::array<Index, 2> count) const;

  friend bool operator==(const Grid& a, const Grid& b);

 private:
  Grid(int dimension, std::array<Real, 2> base, std::array<Real, 2> spacing,
       std::array<Index, 2> count);

  int dimension_ = 1;
  std::array<Real, 2> base_{};
  std::array<Index, 2> first_{};
  std::array<Real, 2> spacing_{1.0, 1.0};
  std::array<Index, 2> count_{2, 1};
};

/// Complex samples on a grid, optionally tied to the closed form they came from.
class SampledFunction {
 public:
  SampledFunction(Grid grid, ComplexArray values, std::optional<ClosedForm> source = std::nullopt);

  const Grid& grid() const { return grid_; }
  const ComplexArray& values() const { return values_; }
  const std::optional<ClosedForm>& source() const { return source_; }
  Complex operator[](Index flat) const { return values_[flat]; }

 private:
  Grid grid_;
  ComplexArray values_;
  std::optional<ClosedForm> source_;
};

/// Node-exact evaluation of a closed form; throws PoleError when a node hits a pole.
SampledFunction sample(const ClosedForm& f, const Grid& grid);

/// Values of `u` on the nodes that lie inside `domain`.
SampledFunction restrict_to(const SampledFunction& u, const DomainSpec& domain);

/// Sub-grid of `grid` whose nodes lie in `domain`, with the index offsets of its origin.
struct SubGrid {
  Grid grid;
  std::array<Index, 2> offset{};
};
SubGrid sub_grid(const Grid& grid, const DomainSpec& domain);

/// Trapezoidal quadrature weights (product rule in 2D), flat-indexed like the grid.
RealArray trapezoid_weights(const Grid& grid);

/// Values at the nodes of `grid.coarsened()`.
SampledFunction coarsen(const SampledFunction& u);

}  // namespace fracsob

#endif  // FRACSOB_CORE_HPP
