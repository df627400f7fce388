#ifndef FRACSOB_SCHWARTZ_HPP
#define FRACSOB_SCHWARTZ_HPP

#include <string>
#include <vector>

#include "fracsob/closed_form.hpp"
#include "fracsob/core.hpp"
#include "fracsob/report.hpp"

namespace fracsob {

/// Outcome of a supremum monitored over nested truncations [-T, T], [-2T, 2T], [-4T, 4T].
struct EtaResult {
  int beta = 0;
  int order = 0;
  Verdict verdict = Verdict::finite;
  /// Supremum on the largest truncation.
  Real value = 0.0;
  /// Location of the first maximiser.
  Real argmax = 0.0;
  std::vector<Real> truncations;
  std::vector<Real> maxima;
  std::string note;

  bool is_finite() const { return verdict == Verdict::finite; }
};

/// sup over [-trunc, trunc] of (1 + |x|^beta) |D^order f(x)| on a grid of spacing h
/// (weight 1 for beta = 0),
/// repeated at 2 trunc and 4 trunc. Divergent when the maximiser sits on the
/// boundary and the value grows by more than 1% per doubling. order <= 4.
EtaResult eta_seminorm(const ClosedForm& f, int beta, int order, Real trunc = 8.0, Real h = 1.0 / 64.0);

/// eta_{beta,i} for beta = 0..max_beta and i = 0..max_order.
struct SeminormLattice {
  int max_beta = 0;
  int max_order = 0;
  /// Row-major: entry(beta, i) = table[beta * (max_order + 1) + i].
  std::vector<EtaResult> table;

  const EtaResult& entry(int beta, int order) const {
    return table[static_cast<std::size_t>(beta * (max_order + 1) + order)];
  }
};
SeminormLattice eta_lattice(const ClosedForm& f, int max_beta, int max_order, Real trunc = 8.0,
                            Real h = 1.0 / 64.0);

/// Sampling of the strip |Im xi| < p: lines Im xi = +-(p - standoff p) k / lines, k = 0..lines,
/// Re xi in [-truncation, truncation] with spacing h.
struct StripSpec {
  int lines = 64;
  Real truncation = 8.0;
  /// Distance from the strip boundary, as a fraction of the half-width.
  Real standoff = 1e-3;
  Real h = 1.0 / 64.0;
  unsigned workers = 1;
};

struct StripReport {
  int p = 1;
  Real half_width = 1.0;
  Verdict verdict = Verdict::finite;
  /// Supremum of (1 + |xi|^p) |f(xi)| over the sampled lines at the largest truncation.
  Real value = 0.0;
  Complex witness = 0.0;
  /// The witness lies on an outermost sampled line (supremum likely on the strip boundary).
  bool witness_on_outer_line = false;
  int lines_sampled = 0;
  std::vector<Real> truncations;
  std::vector<Real> maxima;
  std::string note;

  bool is_finite() const { return verdict == Verdict::finite; }
};

/// sup over |Im xi| < p of (1 + |xi|^p) |f(xi)|. A singularity with |ordinate| <= p
/// or a non-analytic f gives a divergent verdict without sampling.
StripReport strip_norm(const ClosedForm& f, int p, const StripSpec& spec = {});

struct MembershipReport {
  std::string function;
  std::vector<StripReport> strips;
  /// 0 when every tested p is finite.
  int excluded_at = 0;
  int max_p = 0;
  std::string reason;

  bool member() const { return excluded_at == 0; }
  /// "member up to p=4" or "excluded at p=2".
  std::string summary() const;
};

/// Strip norms for p = 1..max_p (max_p <= 4).
MembershipReport class_membership_report(const ClosedForm& f, int max_p, const StripSpec& spec = {});

struct VanishingReport {
  std::vector<Real> y;
  /// max over the interval nodes of |f(x + iy) - f(x - iy)| for each y.
  std::vector<Real> jump;
  bool vanishes = false;
};

/// Sweeps y through `y_sweep` (decreasing positives). Vanishes when the jumps are
/// nonincreasing and the last one is below 1e-8.
VanishingReport vanishing_check(const ClosedForm& f, Interval interval, const std::vector<Real>& y_sweep,
                                Real h = 1.0 / 64.0);
/// 1e-1, 1e-2, ..., 1e-10.
std::vector<Real> default_y_sweep();

}  // namespace fracsob

#endif  // FRACSOB_SCHWARTZ_HPP
