#include "fracsob/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracsob {

namespace {

Interval parse_interval(const std::string& text) {
  // "lo:hi"; the leading sign of lo must not be taken as a separator.
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw ConfigError("interval '" + text + "' is not of the form lo:hi");
  try {
    std::size_t used = 0;
    const Real lo = std::stod(text.substr(0, colon), &used);
    if (used != colon) throw ConfigError("bad interval bound in '" + text + "'");
    const std::string rest = text.substr(colon + 1);
    const Real hi = std::stod(rest, &used);
    if (used != rest.size()) throw ConfigError("bad interval bound in '" + text + "'");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ConfigError("bad interval '" + text + "'");
  }
}

void check_interval(const Interval& iv) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.hi > iv.lo)) {
    throw DomainError("domain bounds must be finite with lo < hi");
  }
}

}  // namespace

DomainSpec::DomainSpec(int dimension, std::array<Interval, 2> bounds)
    : dimension_(dimension), bounds_(bounds) {
  for (int a = 0; a < dimension_; ++a) check_interval(bounds_[a]);
}

DomainSpec DomainSpec::line(Real lo, Real hi) { return DomainSpec(1, {Interval{lo, hi}, Interval{}}); }

DomainSpec DomainSpec::box(Interval x, Interval y) { return DomainSpec(2, {x, y}); }

DomainSpec DomainSpec::parse(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    const Interval x = parse_interval(text);
    return line(x.lo, x.hi);
  }
  return box(parse_interval(text.substr(0, comma)), parse_interval(text.substr(comma + 1)));
}

Real DomainSpec::diameter() const {
  Real sum = 0.0;
  for (int a = 0; a < dimension_; ++a) sum += bounds_[a].length() * bounds_[a].length();
  return std::sqrt(sum);
}

bool DomainSpec::contains(const Point& x, Real tol) const {
  for (int a = 0; a < dimension_; ++a) {
    if (!bounds_[a].contains(x[a], tol)) return false;
  }
  return true;
}

bool DomainSpec::encloses(const DomainSpec& other, Real tol) const {
  if (other.dimension_ != dimension_) return false;
  for (int a = 0; a < dimension_; ++a) {
    if (other.bounds_[a].lo < bounds_[a].lo - tol || other.bounds_[a].hi > bounds_[a].hi + tol) return false;
  }
  return true;
}

std::string DomainSpec::to_string() const {
  std::ostringstream out;
  out.precision(12);
  for (int a = 0; a < dimension_; ++a) {
    if (a) out << ',';
    out << bounds_[a].lo << ':' << bounds_[a].hi;
  }
  return out.str();
}

Grid::Grid(int dimension, std::array<Real, 2> base, std::array<Real, 2> spacing,
           std::array<Index, 2> count)
    : dimension_(dimension), base_(base), spacing_(spacing), count_(count) {
  if (dimension_ != 1 && dimension_ != 2) throw ParameterError("grid dimension must be 1 or 2");
  for (int a = 0; a < dimension_; ++a) {
    if (!(spacing_[a] > 0.0)) throw ParameterError("grid spacing must be positive");
    if (count_[a] < 2) throw ParameterError("grid needs at least 2 nodes per axis");
  }
  if (dimension_ == 1) {
    base_[1] = 0.0;
    spacing_[1] = 1.0;
    count_[1] = 1;
  }
}

Grid Grid::line(Real origin, Real spacing, Index count) {
  return Grid(1, {origin, 0.0}, {spacing, 1.0}, {count, 1});
}

Grid Grid::plane(std::array<Real, 2> origin, std::array<Real, 2> spacing, std::array<Index, 2> count) {
  return Grid(2, origin, spacing, count);
}

Grid Grid::covering(const DomainSpec& domain, Real spacing) {
  if (!(spacing > 0.0)) throw ParameterError("grid spacing must be positive");
  std::array<Real, 2> origin{};
  std::array<Index, 2> count{2, 1};
  for (int a = 0; a < domain.dimension(); ++a) {
    const Interval& iv = domain.axis(a);
    origin[a] = iv.lo;
    count[a] = static_cast<Index>(std::floor(iv.length() / spacing + 1e-9)) + 1;
  }
  return Grid(domain.dimension(), origin, {spacing, spacing}, count);
}

Index Grid::size() const { return count_[0] * count_[1]; }

Real Grid::cell_volume() const { return dimension_ == 1 ? spacing_[0] : spacing_[0] * spacing_[1]; }

std::array<Index, 2> Grid::unflatten(Index flat) const {
  if (dimension_ == 1) return {flat, 0};
  return {flat / count_[1], flat % count_[1]};
}

Point Grid::point(Index flat) const {
  const auto idx = unflatten(flat);
  return {coordinate(0, idx[0]), dimension_ == 1 ? 0.0 : coordinate(1, idx[1])};
}

DomainSpec Grid::extent() const {
  const Interval x{origin(0), coordinate(0, count_[0] - 1)};
  if (dimension_ == 1) return DomainSpec::line(x.lo, x.hi);
  return DomainSpec::box(x, Interval{origin(1), coordinate(1, count_[1] - 1)});
}

Grid Grid::lattice_window(std::array<Index, 2> first, std::array<Index, 2> count) const {
  Grid out = *this;
  for (int a = 0; a < dimension_; ++a) {
    out.first_[a] = first_[a] + first[a];
    out.count_[a] = count[a];
    if (count[a] < 2) throw DomainError("grid window needs at least 2 nodes per axis");
  }
  return out;
}

bool operator==(const Grid& a, const Grid& b) {
  if (a.dimension_ != b.dimension_) return false;
  for (int k = 0; k < a.dimension_; ++k) {
    if (a.origin(k) != b.origin(k) || a.spacing_[k] != b.spacing_[k] || a.count_[k] != b.count_[k]) return false;
  }
  return true;
}

Grid Grid::coarsened() const {
  std::array<Index, 2> count = count_;
  std::array<Real, 2> spacing = spacing_;
  for (int a = 0; a < dimension_; ++a) {
    count[a] = (count_[a] + 1) / 2;
    spacing[a] = 2.0 * spacing_[a];
    if (count[a] < 2) throw DomainError("grid too small to coarsen");
  }
  return Grid(dimension_, {origin(0), origin(1)}, spacing, count);
}

SampledFunction::SampledFunction(Grid grid, ComplexArray values, std::optional<ClosedForm> source)
    : grid_(std::move(grid)), values_(std::move(values)), source_(std::move(source)) {
  if (values_.size() != grid_.size()) {
    throw DomainError("sample count " + std::to_string(values_.size()) + " does not match grid size " +
                      std::to_string(grid_.size()));
  }
}

SampledFunction sample(const ClosedForm& f, const Grid& grid) {
  ComplexArray values(grid.size());
  const Real tol = 1e-12 * std::max(grid.spacing(0), grid.spacing(1));
  for (Index k = 0; k < grid.size(); ++k) {
    const Point x = grid.point(k);
    if (f.is_pole(x, tol)) {
      std::ostringstream msg;
      msg << f.identifier() << " has a pole at grid node (" << x[0];
      if (grid.dimension() == 2) msg << ", " << x[1];
      msg << ")";
      throw PoleError(msg.str());
    }
    values[k] = f(x);
  }
  return SampledFunction(grid, std::move(values), f);
}

SubGrid sub_grid(const Grid& grid, const DomainSpec& domain) {
  if (domain.dimension() != grid.dimension()) throw DomainError("domain and grid dimensions differ");
  std::array<Index, 2> first{0, 0};
  std::array<Index, 2> count{1, 1};
  for (int a = 0; a < grid.dimension(); ++a) {
    const Real h = grid.spacing(a);
    const Real tol = 1e-9 * h;
    const Interval& iv = domain.axis(a);
    Index lo = static_cast<Index>(std::ceil((iv.lo - grid.origin(a)) / h - 1e-9));
    Index hi = static_cast<Index>(std::floor((iv.hi - grid.origin(a)) / h + 1e-9));
    lo = std::max<Index>(lo, 0);
    hi = std::min<Index>(hi, grid.count(a) - 1);
    if (hi < lo || grid.coordinate(a, lo) > iv.hi + tol) {
      throw DomainError("domain " + domain.to_string() + " does not intersect grid extent " +
                        grid.extent().to_string());
    }
    first[a] = lo;
    count[a] = hi - lo + 1;
    if (count[a] < 2) throw DomainError("domain " + domain.to_string() + " covers fewer than 2 nodes per axis");
  }
  return {grid.lattice_window(first, count), first};
}

SampledFunction restrict_to(const SampledFunction& u, const DomainSpec& domain) {
  const SubGrid sub = sub_grid(u.grid(), domain);
  const Grid& g = sub.grid;
  ComplexArray values(g.size());
  for (Index i0 = 0; i0 < g.count(0); ++i0) {
    for (Index i1 = 0; i1 < g.count(1); ++i1) {
      values[g.flatten(i0, i1)] = u[u.grid().flatten(i0 + sub.offset[0], i1 + sub.offset[1])];
    }
  }
  return SampledFunction(g, std::move(values), u.source());
}

RealArray trapezoid_weights(const Grid& grid) {
  auto axis_weights = [&](int a) {
    RealArray w = RealArray::Constant(grid.count(a), grid.spacing(a));
    w[0] *= 0.5;
    w[w.size() - 1] *= 0.5;
    return w;
  };
  const RealArray w0 = axis_weights(0);
  if (grid.dimension() == 1) return w0;
  const RealArray w1 = axis_weights(1);
  RealArray w(grid.size());
  for (Index i0 = 0; i0 < grid.count(0); ++i0) {
    w.segment(i0 * grid.count(1), grid.count(1)) = w0[i0] * w1;
  }
  return w;
}

SampledFunction coarsen(const SampledFunction& u) {
  const Grid g = u.grid().coarsened();
  ComplexArray values(g.size());
  for (Index i0 = 0; i0 < g.count(0); ++i0) {
    for (Index i1 = 0; i1 < g.count(1); ++i1) {
      const Index j1 = u.grid().dimension() == 1 ? 0 : 2 * i1;
      values[g.flatten(i0, i1)] = u[u.grid().flatten(2 * i0, j1)];
    }
  }
  return SampledFunction(g, std::move(values), u.source());
}

}  // namespace fracsob
