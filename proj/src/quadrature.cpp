#include "fracsob/quadrature.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fracsob/reduce.hpp"
#include "fracsob/spectral.hpp"

namespace fracsob {

namespace {

constexpr Real kNaN = std::numeric_limits<Real>::quiet_NaN();

Real abs_pow(Complex d, Real p) {
  if (p == 2.0) return std::norm(d);
  if (p == 1.0) return std::abs(d);
  return std::pow(std::abs(d), p);
}

/// Smallest integer lattice distance that survives the puncture.
Index puncture_index(Real puncture) {
  if (!(puncture >= 1.0)) throw ParameterError("puncture radius must be at least one grid spacing");
  return static_cast<Index>(std::ceil(puncture - 1e-9));
}

/// |offset * h|^(-exponent) for every lattice offset, 0 inside the puncture.
class OffsetKernel {
 public:
  OffsetKernel(const Grid& g, Real exponent, Real puncture) : g_(g) {
    span0_ = 2 * g.count(0) - 1;
    span1_ = g.dimension() == 1 ? 1 : 2 * g.count(1) - 1;
    table_.resize(span0_ * span1_);
    const Real cutoff = puncture * (1.0 - 1e-12);
    for (Index a = 0; a < span0_; ++a) {
      const Real dx = static_cast<Real>(a - (g.count(0) - 1)) * g.spacing(0);
      for (Index b = 0; b < span1_; ++b) {
        const Real dy = g.dimension() == 1 ? 0.0 : static_cast<Real>(b - (g.count(1) - 1)) * g.spacing(1);
        const Real dist = std::hypot(dx, dy);
        const Real scale = std::min(g.spacing(0), g.spacing(1));
        table_[a * span1_ + b] = dist < cutoff * scale ? 0.0 : std::pow(dist, -exponent);
      }
    }
  }

  /// Calls fn(j, kernel) for every node j paired with node i.
  template <typename Fn>
  void for_each_partner(Index i, Fn&& fn) const {
    const auto a = g_.unflatten(i);
    const Index n0 = g_.count(0);
    const Index n1 = g_.dimension() == 1 ? 1 : g_.count(1);
    for (Index b0 = 0; b0 < n0; ++b0) {
      const Real* row = table_.data() + (a[0] - b0 + n0 - 1) * span1_ + (a[1] + n1 - 1);
      for (Index b1 = 0; b1 < n1; ++b1) fn(b0 * n1 + b1, row[-b1]);
    }
  }

 private:
  const Grid& g_;
  Index span0_ = 0;
  Index span1_ = 0;
  std::vector<Real> table_;
};

/// sum_{k >= 0} (a + k)^(-s) for s > 1, a >= 1 (direct terms plus an Euler-Maclaurin tail).
Real hurwitz_zeta(Real s, Real a) {
  constexpr int direct = 16;
  Real acc = 0.0;
  for (int k = 0; k < direct; ++k) acc += std::pow(a + k, -s);
  const Real m = a + direct;
  acc += std::pow(m, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(m, -s) + s * std::pow(m, -s - 1.0) / 12.0 -
         s * (s + 1.0) * (s + 2.0) * std::pow(m, -s - 3.0) / 720.0;
  return acc;
}

/// One-dimensional derivative estimate: central differences, second-order one-sided at the ends.
ComplexArray difference_derivative(const ComplexArray& v, Real h) {
  const Index n = v.size();
  ComplexArray d(n);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  for (Index i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  return d;
}

/// Pair sum raised to 1/p for u already restricted to the integration box.
Real gagliardo_value(const SampledFunction& u, const NormParams& params, const QuadratureConfig& cfg) {
  const Grid& g = u.grid();
  const Real p = params.p.value();
  const Real exponent = g.dimension() + p * params.beta;
  const RealArray tw = trapezoid_weights(g);
  const Index n = g.size();

  RealArray w = RealArray::Ones(n);
  if (params.weight == WeightMode::ultra) {
    for (Index i = 0; i < n; ++i) w[i] = ultra_weight(g.point(i), params.ultra_exponent());
  }

  const Index m = puncture_index(cfg.puncture);
  const OffsetKernel kernel(g, exponent, static_cast<Real>(m));
  const ComplexArray& v = u.values();

  RealArray rows(n);
  parallel_for(n, cfg.workers, cfg.tile_size, [&](Index begin, Index end) {
    for (Index i = begin; i < end; ++i) {
      Real acc = 0.0;
      const Complex vi = v[i];
      if (cfg.symmetrized_weight) {
        kernel.for_each_partner(i, [&](Index j, Real k) {
          if (k != 0.0) acc += tw[j] * k * 0.5 * (w[i] + w[j]) * abs_pow(vi - v[j], p);
        });
      } else {
        kernel.for_each_partner(i, [&](Index j, Real k) {
          if (k != 0.0) acc += tw[j] * k * abs_pow(vi - v[j], p);
        });
        acc *= w[i];
      }
      rows[i] = tw[i] * acc;
    }
  });

  if (cfg.diagonal_correction && g.dimension() == 1) {
    // Near the diagonal |u(x) - u(y)|^p ~ |u'(x)|^p |x - y|^p, and the lattice sum of
    // |k|^s over k >= m misses its integral by zeta(-s) - sum_{k<m} k^s (times h^(s+1)).
    const Real h = g.spacing(0);
    const Real s = p - 1.0 - p * params.beta;
    Real zeta = std::riemann_zeta(-s);
    for (Index k = 1; k < m; ++k) zeta -= std::pow(static_cast<Real>(k), s);
    const Real per_side = -zeta * std::pow(h, s + 1.0);
    const ComplexArray du = difference_derivative(v, h);
    for (Index i = 0; i < n; ++i) {
      const Real sides = (i > 0 ? 1.0 : 0.0) + (i + 1 < n ? 1.0 : 0.0);
      rows[i] += tw[i] * w[i] * sides * per_side * abs_pow(du[i], p);
    }
  }

  if (cfg.exterior_tail) {
    // Partners on the lattice outside the box at distances (i + k) h and (n - 1 - i + k) h, k >= 1.
    const Real q = p * params.beta;
    const Real scale = 2.0 * std::pow(g.spacing(0), -q);
    for (Index i = 0; i < n; ++i) {
      const Real mass = abs_pow(v[i], p);
      if (mass == 0.0) continue;
      const Real left = hurwitz_zeta(1.0 + q, static_cast<Real>(i + 1));
      const Real right = hurwitz_zeta(1.0 + q, static_cast<Real>(n - i));
      rows[i] += scale * tw[i] * mass * (left + right);
    }
  }

  const Real total = pairwise_sum(rows);
  return std::pow(std::max(total, 0.0), 1.0 / p);
}

struct HolderResult {
  Real value = 0.0;
  std::array<Index, 2> witness{0, 0};
};

HolderResult holder_value(const SampledFunction& u, Real alpha, bool weighted, const QuadratureConfig& cfg) {
  const Grid& g = u.grid();
  const Index n = g.size();
  const Real exponent = weighted ? g.dimension() + alpha : alpha;
  const OffsetKernel kernel(g, exponent, 1.0);
  RealArray w = RealArray::Ones(n);
  if (weighted) {
    for (Index i = 0; i < n; ++i) w[i] = ultra_weight(g.point(i), exponent);
  }
  const ComplexArray& v = u.values();

  std::vector<HolderResult> rows(static_cast<std::size_t>(n));
  parallel_for(n, cfg.workers, cfg.tile_size, [&](Index begin, Index end) {
    for (Index i = begin; i < end; ++i) {
      HolderResult best{-1.0, {i, i}};
      kernel.for_each_partner(i, [&](Index j, Real k) {
        if (j == i) return;
        const Real q = w[i] * std::abs(v[i] - v[j]) * k;
        if (q > best.value) best = {q, {i, j}};
      });
      rows[static_cast<std::size_t>(i)] = best;
    }
  });
  HolderResult best = rows.front();
  for (const HolderResult& r : rows) {
    if (r.value > best.value) best = r;
  }
  return best;
}

void check_min_nodes(const Grid& g) {
  for (int a = 0; a < g.dimension(); ++a) {
    if (g.count(a) < 4) throw DomainError("seminorm needs at least 4 nodes per axis inside the domain");
  }
}

bool can_coarsen(const Grid& g) {
  for (int a = 0; a < g.dimension(); ++a) {
    if ((g.count(a) + 1) / 2 < 4) return false;
  }
  return true;
}

NormReport base_report(const SampledFunction& r, const NormParams& params) {
  NormReport rep;
  rep.beta = params.beta;
  rep.p = params.p;
  rep.weight = params.weight;
  rep.dimension = r.grid().dimension();
  rep.h = r.grid().spacing(0);
  rep.nodes = r.grid().size();
  return rep;
}

}  // namespace

Real lp_norm(const SampledFunction& u, Exponent p, const DomainSpec& domain) {
  const SampledFunction r = restrict_to(u, domain);
  const ComplexArray& v = r.values();
  if (p.is_infinite()) return v.abs().maxCoeff();
  const RealArray tw = trapezoid_weights(r.grid());
  const Real q = p.value();
  Real acc = 0.0;
  for (Index i = 0; i < v.size(); ++i) acc += tw[i] * abs_pow(v[i], q);
  return std::pow(acc, 1.0 / q);
}

NormReport gagliardo_seminorm(const SampledFunction& u, const NormParams& params, const DomainSpec& domain,
                              const QuadratureConfig& cfg) {
  params.require_gagliardo();
  if (params.n != u.grid().dimension()) throw ParameterError("norm dimension does not match the grid");
  const SampledFunction r = restrict_to(u, domain);
  check_min_nodes(r.grid());
  if (cfg.exterior_tail && (r.grid().dimension() != 1 || params.weight != WeightMode::classical)) {
    throw ParameterError("exterior tail is available for 1D classical seminorms only");
  }

  NormReport rep = base_report(r, params);
  rep.puncture = static_cast<Real>(puncture_index(cfg.puncture)) * rep.h;
  rep.diagonal_correction = cfg.diagonal_correction && r.grid().dimension() == 1;
  rep.value = gagliardo_value(r, params, cfg);
  rep.error_estimate = kNaN;
  if (cfg.estimate_error && can_coarsen(r.grid())) {
    rep.error_estimate = std::abs(rep.value - gagliardo_value(coarsen(r), params, cfg));
  }
  return rep;
}

NormReport holder_seminorm(const SampledFunction& u, Real alpha, const DomainSpec& domain, bool weighted,
                           const QuadratureConfig& cfg) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must be in (0,1]");
  const SampledFunction r = restrict_to(u, domain);
  if (r.grid().size() < 2) throw DomainError("Hoelder seminorm needs at least two nodes");

  NormParams params{alpha, Exponent::infinity(), r.grid().dimension(),
                    weighted ? WeightMode::ultra : WeightMode::classical};
  NormReport rep = base_report(r, params);
  const HolderResult best = holder_value(r, alpha, weighted, cfg);
  rep.value = best.value;
  rep.witness = best.witness;
  rep.error_estimate = kNaN;
  const bool coarse_ok = [&] {
    for (int a = 0; a < r.grid().dimension(); ++a) {
      if ((r.grid().count(a) + 1) / 2 < 2) return false;
    }
    return true;
  }();
  if (cfg.estimate_error && coarse_ok) {
    rep.error_estimate = std::abs(rep.value - holder_value(coarsen(r), alpha, weighted, cfg).value);
  }
  return rep;
}

NormReport full_norm(const SampledFunction& u, const NormParams& params, const DomainSpec& domain,
                     const QuadratureConfig& cfg) {
  const SampledFunction r = restrict_to(u, domain);
  const DomainSpec box = r.grid().extent();
  NormReport sem;
  if (params.p.is_infinite()) {
    if (!(params.beta > 0.0 && params.beta < 1.0)) throw ParameterError("beta must be in (0,1)");
    sem = holder_seminorm(r, params.beta, box, params.weight == WeightMode::ultra, cfg);
  } else {
    sem = gagliardo_seminorm(r, params, box, cfg);
  }
  const Real lp = lp_norm(r, params.p, box);

  NormReport rep = sem;
  rep.beta = params.beta;
  rep.p = params.p;
  rep.weight = params.weight;
  rep.witness.reset();
  rep.lp_part = lp;
  rep.seminorm_part = sem.value;
  rep.value = lp + sem.value;

  auto p_power = [&](Real a, Real b) {
    if (params.p.is_infinite()) return std::max(a, b);
    const Real q = params.p.value();
    return std::pow(std::pow(a, q) + std::pow(b, q), 1.0 / q);
  };
  rep.p_power_value = p_power(lp, sem.value);

  if (std::isfinite(sem.error_estimate)) {
    const SampledFunction c = coarsen(r);
    const Real lp_coarse = lp_norm(c, params.p, c.grid().extent());
    const Real sem_coarse = params.p.is_infinite()
                                ? holder_value(c, params.beta, params.weight == WeightMode::ultra, cfg).value
                                : gagliardo_value(c, params, cfg);
    rep.error_estimate = std::abs(rep.value - (lp_coarse + sem_coarse));
    rep.p_power_error = std::abs(*rep.p_power_value - p_power(lp_coarse, sem_coarse));
  } else {
    rep.error_estimate = kNaN;
    rep.p_power_error = kNaN;
  }
  return rep;
}

Real sobolev_integer_norm(const SampledFunction& u, int k, Exponent p, const DomainSpec& domain) {
  if (k < 0 || k > 4) throw ParameterError("integer Sobolev order must be in [0, 4]");
  Real acc = 0.0;
  Real max_norm = 0.0;
  auto accumulate = [&](const SampledFunction& d) {
    const Real v = lp_norm(d, p, domain);
    if (p.is_infinite()) {
      max_norm = std::max(max_norm, v);
    } else {
      acc += std::pow(v, p.value());
    }
  };
  accumulate(u);
  for (int j = 1; j <= k; ++j) {
    if (u.grid().dimension() == 1) {
      accumulate(derivative(u, {j, 0}));
    } else {
      for (int a = 0; a <= j; ++a) accumulate(derivative(u, {j - a, a}));
    }
  }
  return p.is_infinite() ? max_norm : std::pow(acc, 1.0 / p.value());
}

TruncationSweep gagliardo_truncation_sweep(const ClosedForm& f, const NormParams& params,
                                           std::span<const Real> radii, Real h, const QuadratureConfig& cfg,
                                           Real growth_tol) {
  if (radii.size() < 2) throw ParameterError("truncation sweep needs at least two radii");
  TruncationSweep sweep;
  for (Real radius : radii) {
    const DomainSpec box = params.n == 1 ? DomainSpec::line(-radius, radius)
                                         : DomainSpec::box({-radius, radius}, {-radius, radius});
    const SampledFunction u = sample(f, Grid::covering(box, h));
    NormReport rep = gagliardo_seminorm(u, params, box, cfg);
    sweep.radii.push_back(radius);
    sweep.values.push_back(rep.value);
    sweep.report = rep;
  }
  const std::size_t last = sweep.values.size() - 1;
  const Real prev = sweep.values[last - 1];
  const Real growth = prev > 0.0 ? sweep.values[last] / prev - 1.0 : (sweep.values[last] > 0.0 ? 1.0 : 0.0);
  const Real doublings = std::log2(sweep.radii[last] / sweep.radii[last - 1]);
  const Real per_doubling = doublings > 0.0 ? growth / doublings : growth;
  std::ostringstream note;
  note << "relative growth per doubling at R=" << sweep.radii[last] << ": " << per_doubling;
  // Finite tails of order R^(-p beta) still grow at every radius; with three radii the
  // increments must also stop shrinking.
  bool stalled = true;
  if (last >= 2) {
    const Real before = sweep.values[last - 1] - sweep.values[last - 2];
    const Real after = sweep.values[last] - prev;
    stalled = after >= 0.95 * before;
    note << ", increment ratio " << (before != 0.0 ? after / before : 0.0);
  }
  sweep.report.note = note.str();
  if (per_doubling > growth_tol && stalled) sweep.report.verdict = Verdict::divergent;
  return sweep;
}

}  // namespace fracsob
