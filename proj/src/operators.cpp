#include "fracsob/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracsob/reduce.hpp"

namespace fracsob {

namespace {

Real bump_profile(Real t) { return t < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0; }

bool all_zero(const ComplexArray& v) { return (v == Complex(0.0)).all(); }

Real norm_of(const SampledFunction& u, const NormParams& params, const DomainSpec& domain,
             const QuadratureConfig& cfg) {
  return full_norm(u, params, domain, cfg).value;
}

/// 1D cutoff along one axis: 1 on [lo, hi], 0 beyond eps of [lo - eps, hi + eps].
RealArray axis_cutoff(const Grid& grid, int axis, Interval inner, Real eps) {
  const Real h = grid.spacing(axis);
  const Mollifier kernel(Grid::line(0.0, h, 2), eps);
  const Index reach = kernel.reach()[0];
  const RealArray& taps = kernel.taps();
  const Real lo = inner.lo - eps;
  const Real hi = inner.hi + eps;
  const Real tol = 1e-9 * h;

  RealArray chi(grid.count(axis));
  for (Index i = 0; i < grid.count(axis); ++i) {
    const Real x = grid.coordinate(axis, i);
    Real acc = 0.0;
    Index inside = 0;
    for (Index j = -reach; j <= reach; ++j) {
      const Real y = x + static_cast<Real>(j) * h;
      if (y >= lo - tol && y <= hi + tol) {
        acc += taps[j + reach];
        ++inside;
      }
    }
    chi[i] = inside == 2 * reach + 1 ? 1.0 : (inside == 0 ? 0.0 : acc);
  }
  return chi;
}

}  // namespace

Mollifier::Mollifier(const Grid& grid, Real epsilon) : epsilon_(epsilon), dimension_(grid.dimension()) {
  for (int a = 0; a < dimension_; ++a) {
    if (!(epsilon >= 2.0 * grid.spacing(a) * (1.0 - 1e-12))) {
      throw ParameterError("mollifier radius must be at least 2h to resolve the kernel");
    }
    reach_[a] = static_cast<Index>(std::floor(epsilon / grid.spacing(a) + 1e-9));
  }
  const Index w0 = 2 * reach_[0] + 1;
  const Index w1 = dimension_ == 1 ? 1 : 2 * reach_[1] + 1;
  taps_.resize(w0 * w1);
  for (Index a = 0; a < w0; ++a) {
    const Real dx = static_cast<Real>(a - reach_[0]) * grid.spacing(0);
    for (Index b = 0; b < w1; ++b) {
      const Real dy = dimension_ == 1 ? 0.0 : static_cast<Real>(b - reach_[1]) * grid.spacing(1);
      taps_[a * w1 + b] = bump_profile(std::hypot(dx, dy) / epsilon);
    }
  }
  taps_ /= pairwise_sum(taps_);
}

SampledFunction mollify(const SampledFunction& u, Real epsilon, unsigned workers) {
  const Grid& g = u.grid();
  const Mollifier kernel(g, epsilon);
  const auto& reach = kernel.reach();
  const RealArray& taps = kernel.taps();
  const Index n1 = g.dimension() == 1 ? 1 : g.count(1);
  const Index w1 = g.dimension() == 1 ? 1 : 2 * reach[1] + 1;
  const Index r1 = g.dimension() == 1 ? 0 : reach[1];

  ComplexArray out(g.size());
  parallel_for(g.size(), workers, 256, [&](Index begin, Index end) {
    for (Index k = begin; k < end; ++k) {
      const auto idx = g.unflatten(k);
      Complex acc = 0.0;
      for (Index a = -reach[0]; a <= reach[0]; ++a) {
        const Index j0 = idx[0] + a;
        if (j0 < 0 || j0 >= g.count(0)) continue;
        for (Index b = -r1; b <= r1; ++b) {
          const Index j1 = idx[1] + b;
          if (j1 < 0 || j1 >= n1) continue;
          acc += taps[(a + reach[0]) * w1 + (b + r1)] * u[j0 * n1 + j1];
        }
      }
      out[k] = acc;
    }
  });
  return SampledFunction(g, std::move(out));
}

SampledFunction zero_extension(const SampledFunction& u, const DomainSpec& from, const DomainSpec& to,
                               const ZeroExtensionOptions& opts) {
  if (from.dimension() != to.dimension()) throw DomainError("extension domains differ in dimension");
  if (!to.encloses(from)) throw DomainError("target " + to.to_string() + " does not contain " + from.to_string());
  const SampledFunction r = restrict_to(u, from);
  const Grid& g = r.grid();

  const Real tol = 1e-9;
  for (Index k = 0; k < g.size(); ++k) {
    const Point x = g.point(k);
    Real gap = std::numeric_limits<Real>::infinity();
    for (int a = 0; a < g.dimension(); ++a) {
      gap = std::min({gap, (x[a] - from.axis(a).lo) / g.spacing(a), (from.axis(a).hi - x[a]) / g.spacing(a)});
    }
    if (gap <= 2.0 + tol && r[k] != Complex(0.0)) {
      throw DomainError("support not compact in " + from.to_string() + ": nonzero value within 2h of its boundary");
    }
  }

  std::array<Index, 2> first{0, 0};
  std::array<Index, 2> count{1, 1};
  for (int a = 0; a < g.dimension(); ++a) {
    const Real h = g.spacing(a);
    const Index lo = std::llround((to.axis(a).lo - g.origin(a)) / h);
    const Index hi = std::llround((to.axis(a).hi - g.origin(a)) / h);
    if (std::abs(g.coordinate(a, lo) - to.axis(a).lo) > tol * h || std::abs(g.coordinate(a, hi) - to.axis(a).hi) > tol * h) {
      throw DomainError("target " + to.to_string() + " is not aligned with the grid lattice");
    }
    first[a] = lo;
    count[a] = hi - lo + 1;
  }
  const Grid target = g.lattice_window(first, count);

  ComplexArray values = ComplexArray::Zero(target.size());
  const Real e = opts.params.ultra_exponent();
  for (Index i0 = 0; i0 < g.count(0); ++i0) {
    for (Index i1 = 0; i1 < g.count(1); ++i1) {
      const Index src = g.flatten(i0, i1);
      const Index dst = target.flatten(i0 - first[0], g.dimension() == 1 ? 0 : i1 - first[1]);
      values[dst] = opts.weighted ? r[src] * ultra_weight(g.point(src), e) : r[src];
    }
  }
  return SampledFunction(target, std::move(values));
}

ExtensionReport extension_operator_norm(const std::vector<NamedForm>& members, const NormParams& params,
                                        const DomainSpec& from, const DomainSpec& to, Real h,
                                        const QuadratureConfig& cfg) {
  if (members.empty()) throw ParameterError("extension report needs at least one member");
  ExtensionReport rep;
  bool any = false;
  for (const NamedForm& m : members) {
    ExtensionRow row;
    row.member = m.id;
    const SampledFunction u = sample(m.form, Grid::covering(from, h));
    if (all_zero(u.values())) {
      row.excluded = true;
      row.reason = "zero function";
      rep.rows.push_back(row);
      continue;
    }
    SampledFunction ext = u;
    try {
      ext = zero_extension(u, from, to);
    } catch (const DomainError& err) {
      row.excluded = true;
      row.reason = err.what();
      rep.rows.push_back(row);
      continue;
    }
    for (Index k = 0; k < ext.grid().size(); ++k) {
      if (!from.contains(ext.grid().point(k), 1e-9 * h) && ext[k] != Complex(0.0)) rep.support_ok = false;
    }
    row.norm_before = norm_of(u, params, from, cfg);
    row.norm_after = norm_of(ext, params, to, cfg);
    row.ratio = row.norm_after / row.norm_before;
    if (!any) {
      rep.forward_constant = row.ratio;
      rep.inverse_constant = row.ratio;
      any = true;
    }
    rep.forward_constant = std::max(rep.forward_constant, row.ratio);
    rep.inverse_constant = std::min(rep.inverse_constant, row.ratio);
    rep.rows.push_back(row);
  }
  if (!any) {
    rep.forward_constant = std::numeric_limits<Real>::quiet_NaN();
    rep.inverse_constant = std::numeric_limits<Real>::quiet_NaN();
  }
  return rep;
}

RealArray interior_cutoff(const Grid& grid, const DomainSpec& inner, const DomainSpec& outer) {
  if (inner.dimension() != grid.dimension() || outer.dimension() != grid.dimension()) {
    throw DomainError("cutoff domains and grid differ in dimension");
  }
  Real margin = std::numeric_limits<Real>::infinity();
  Real h = 0.0;
  for (int a = 0; a < grid.dimension(); ++a) {
    margin = std::min({margin, inner.axis(a).lo - outer.axis(a).lo, outer.axis(a).hi - inner.axis(a).hi});
    h = std::max(h, grid.spacing(a));
  }
  if (!(margin >= 4.0 * h * (1.0 - 1e-12))) {
    throw DomainError("inner domain must sit inside the outer one with margin >= 4h");
  }
  const Real eps = 0.5 * margin;
  const RealArray chi0 = axis_cutoff(grid, 0, inner.axis(0), eps);
  if (grid.dimension() == 1) return chi0;
  const RealArray chi1 = axis_cutoff(grid, 1, inner.axis(1), eps);
  RealArray chi(grid.size());
  for (Index i0 = 0; i0 < grid.count(0); ++i0) chi.segment(i0 * grid.count(1), grid.count(1)) = chi0[i0] * chi1;
  return chi;
}

SampledFunction cutoff_interior_extension(const SampledFunction& u, const DomainSpec& inner, const DomainSpec& outer) {
  const RealArray chi = interior_cutoff(u.grid(), inner, outer);
  return SampledFunction(u.grid(), u.values() * chi.cast<Complex>());
}

MultiplicationReport multiply_by_class_function(const SampledFunction& u, const ClosedForm& phi,
                                                const NormParams& params, const DomainSpec& domain,
                                                const QuadratureConfig& cfg) {
  const SampledFunction r = restrict_to(u, domain);
  const SampledFunction f = sample(phi, r.grid());
  SampledFunction product(r.grid(), r.values() * f.values());
  const DomainSpec box = r.grid().extent();

  const NormReport nu = full_norm(r, params, box, cfg);
  const NormReport nphi = full_norm(f, params, box, cfg);
  const Real phi_sup = f.values().abs().maxCoeff();
  const Real u_sup = r.values().abs().maxCoeff();

  MultiplicationReport rep{full_norm(product, params, box, cfg), 0.0, 0.0, product};
  rep.bound = phi_sup * *nu.lp_part + phi_sup * *nu.seminorm_part + u_sup * *nphi.seminorm_part;

  const bool inf = params.p.is_infinite();
  const Real e = inf ? params.beta : params.p.value() * params.beta;
  for (Index k = 0; k < product.grid().size(); ++k) {
    const Point x = product.grid().point(k);
    const Real a = std::abs(product[k]);
    const Real q = (1.0 + std::pow(std::hypot(x[0], x[1]), e)) * (inf ? a : std::pow(a, params.p.value()));
    rep.weighted_sup = std::max(rep.weighted_sup, q);
  }
  if (!nu.is_finite() || !nphi.is_finite()) {
    rep.norm.verdict = Verdict::divergent;
    rep.norm.note = "a factor has a non-finite norm";
  }
  return rep;
}

}  // namespace fracsob
