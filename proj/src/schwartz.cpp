#include "fracsob/schwartz.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "fracsob/reduce.hpp"
#include "fracsob/spectral.hpp"

namespace fracsob {

namespace {

constexpr Real kGrowthTol = 0.01;

std::string format_real(Real x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// Relative growth of the last value over the previous one.
Real last_growth(const std::vector<Real>& maxima) {
  const Real prev = maxima[maxima.size() - 2];
  const Real last = maxima.back();
  if (prev > 0.0) return last / prev - 1.0;
  return last > 0.0 ? std::numeric_limits<Real>::infinity() : 0.0;
}

}  // namespace

EtaResult eta_seminorm(const ClosedForm& f, int beta, int order, Real trunc, Real h) {
  if (beta < 0) throw ParameterError("eta weight order must be nonnegative");
  if (order < 0 || order > 4) throw ParameterError("eta derivative order must be in [0, 4]");
  if (!(trunc > 0.0 && h > 0.0)) throw ParameterError("truncation and spacing must be positive");

  EtaResult res;
  res.beta = beta;
  res.order = order;
  res.truncations = {trunc, 2.0 * trunc, 4.0 * trunc};
  const Real outer = res.truncations.back();
  const Grid g = Grid::covering(DomainSpec::line(-outer, outer), h);
  const SampledFunction u = sample(f, g);
  const SampledFunction d = derivative(u, {order, 0});

  Index best = -1;
  for (Real t : res.truncations) {
    Real m = 0.0;
    Index at = -1;
    for (Index k = 0; k < g.size(); ++k) {
      const Real x = g.coordinate(0, k);
      if (std::abs(x) > t + 1e-9 * h) continue;
      const Real q = (beta == 0 ? 1.0 : 1.0 + std::pow(std::abs(x), beta)) * std::abs(d[k]);
      if (at < 0 || q > m) {
        m = q;
        at = k;
      }
    }
    res.maxima.push_back(m);
    best = at;
  }
  res.value = res.maxima.back();
  res.argmax = g.coordinate(0, best);

  const Real growth = last_growth(res.maxima);
  const bool on_boundary = std::abs(res.argmax) >= outer - 0.5 * h;
  if (on_boundary && growth > kGrowthTol) {
    res.verdict = Verdict::divergent;
    res.note = "maximum at |x|=" + format_real(std::abs(res.argmax)) + " grows by " + format_real(100.0 * growth) +
               "% per doubling";
  }
  return res;
}

SeminormLattice eta_lattice(const ClosedForm& f, int max_beta, int max_order, Real trunc, Real h) {
  if (max_beta < 0 || max_order < 0) throw ParameterError("lattice bounds must be nonnegative");
  SeminormLattice lat;
  lat.max_beta = max_beta;
  lat.max_order = max_order;
  for (int b = 0; b <= max_beta; ++b) {
    for (int i = 0; i <= max_order; ++i) lat.table.push_back(eta_seminorm(f, b, i, trunc, h));
  }
  return lat;
}

StripReport strip_norm(const ClosedForm& f, int p, const StripSpec& spec) {
  if (p < 1) throw ParameterError("strip order p must be >= 1");
  if (spec.lines < 1 || !(spec.truncation > 0.0) || !(spec.h > 0.0)) throw ParameterError("invalid strip sampling");

  StripReport rep;
  rep.p = p;
  rep.half_width = p;
  if (!f.is_analytic()) {
    rep.verdict = Verdict::divergent;
    rep.value = std::numeric_limits<Real>::infinity();
    rep.note = f.identifier() + " is not entire";
    return rep;
  }
  for (Real y : f.pole_ordinates()) {
    if (std::abs(y) <= p) {
      rep.verdict = Verdict::divergent;
      rep.value = std::numeric_limits<Real>::infinity();
      rep.note = "singularity at Im xi=" + format_real(y) + " within the strip |Im xi|<=" + std::to_string(p);
      return rep;
    }
  }

  const Real reach = p - spec.standoff * p;
  const Index m = spec.lines;
  const Index line_count = 2 * m + 1;
  rep.lines_sampled = static_cast<int>(line_count);
  rep.truncations = {spec.truncation, 2.0 * spec.truncation, 4.0 * spec.truncation};
  const Real outer = rep.truncations.back();
  const Grid xs = Grid::covering(DomainSpec::line(-outer, outer), spec.h);

  struct LineMax {
    std::array<Real, 3> value{-1.0, -1.0, -1.0};
    std::array<Index, 3> at{0, 0, 0};
  };
  std::vector<LineMax> per_line(static_cast<std::size_t>(line_count));
  parallel_for(line_count, spec.workers, 1, [&](Index begin, Index end) {
    for (Index l = begin; l < end; ++l) {
      const Real y = reach * static_cast<Real>(l - m) / static_cast<Real>(m);
      LineMax lm;
      for (Index k = 0; k < xs.size(); ++k) {
        const Real x = xs.coordinate(0, k);
        const Complex z(x, y);
        const Real q = (1.0 + std::pow(std::abs(z), p)) * std::abs(f(z, 0.0));
        for (std::size_t t = 0; t < 3; ++t) {
          if (std::abs(x) <= rep.truncations[t] + 1e-9 * spec.h && q > lm.value[t]) {
            lm.value[t] = q;
            lm.at[t] = k;
          }
        }
      }
      per_line[static_cast<std::size_t>(l)] = lm;
    }
  });

  Index best_line = 0;
  for (std::size_t t = 0; t < 3; ++t) {
    Real m_t = -1.0;
    Index line_t = 0;
    for (Index l = 0; l < line_count; ++l) {
      if (per_line[static_cast<std::size_t>(l)].value[t] > m_t) {
        m_t = per_line[static_cast<std::size_t>(l)].value[t];
        line_t = l;
      }
    }
    rep.maxima.push_back(m_t);
    best_line = line_t;
  }
  const Index best_x = per_line[static_cast<std::size_t>(best_line)].at[2];
  rep.value = rep.maxima.back();
  rep.witness = Complex(xs.coordinate(0, best_x), reach * static_cast<Real>(best_line - m) / static_cast<Real>(m));
  rep.witness_on_outer_line = best_line == 0 || best_line == line_count - 1;

  const Real growth = last_growth(rep.maxima);
  if (std::abs(rep.witness.real()) >= outer - 0.5 * spec.h && growth > kGrowthTol) {
    rep.verdict = Verdict::divergent;
    rep.note = "supremum at Re xi=" + format_real(rep.witness.real()) + " grows by " + format_real(100.0 * growth) +
               "% per doubling";
  } else if (rep.witness_on_outer_line) {
    rep.note = "supremum on the outermost sampled line";
  }
  return rep;
}

std::string MembershipReport::summary() const {
  if (member()) return "member up to p=" + std::to_string(max_p);
  return "excluded at p=" + std::to_string(excluded_at);
}

MembershipReport class_membership_report(const ClosedForm& f, int max_p, const StripSpec& spec) {
  if (max_p < 1 || max_p > 4) throw ParameterError("max_p must be in [1, 4]");
  MembershipReport rep;
  rep.function = f.identifier();
  rep.max_p = max_p;
  for (int p = 1; p <= max_p; ++p) {
    rep.strips.push_back(strip_norm(f, p, spec));
    const StripReport& s = rep.strips.back();
    if (rep.excluded_at == 0 && !s.is_finite()) {
      rep.excluded_at = p;
      rep.reason = s.note;
    }
  }
  return rep;
}

std::vector<Real> default_y_sweep() {
  std::vector<Real> ys;
  for (int k = 1; k <= 10; ++k) ys.push_back(std::pow(10.0, -k));
  return ys;
}

VanishingReport vanishing_check(const ClosedForm& f, Interval interval, const std::vector<Real>& y_sweep, Real h) {
  if (y_sweep.empty()) throw ParameterError("vanishing check needs at least one y");
  for (std::size_t k = 0; k < y_sweep.size(); ++k) {
    if (!(y_sweep[k] > 0.0) || (k > 0 && !(y_sweep[k] < y_sweep[k - 1]))) {
      throw ParameterError("y sweep must be decreasing positives");
    }
  }
  const Grid xs = Grid::covering(DomainSpec::line(interval.lo, interval.hi), h);
  VanishingReport rep;
  for (Real y : y_sweep) {
    Real jump = 0.0;
    for (Index k = 0; k < xs.size(); ++k) {
      const Real x = xs.coordinate(0, k);
      jump = std::max(jump, std::abs(f(Complex(x, y), 0.0) - f(Complex(x, -y), 0.0)));
    }
    rep.y.push_back(y);
    rep.jump.push_back(jump);
  }
  bool nonincreasing = true;
  for (std::size_t k = 1; k < rep.jump.size(); ++k) nonincreasing = nonincreasing && rep.jump[k] <= rep.jump[k - 1];
  rep.vanishes = nonincreasing && rep.jump.back() < 1e-8;
  return rep;
}

}  // namespace fracsob
