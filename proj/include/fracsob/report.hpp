#ifndef FRACSOB_REPORT_HPP
#define FRACSOB_REPORT_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "fracsob/params.hpp"

namespace fracsob {

/// Finiteness verdict. Divergence is a result, not an error.
enum class Verdict {
  finite,
  divergent,
  /// Value computed but the discretization did not resolve the integrand.
  divergence_suspected,
};

std::string_view to_string(Verdict v);

/// Value of a norm or seminorm together with its discretization metadata.
struct NormReport {
  Verdict verdict = Verdict::finite;
  Real value = 0.0;
  Real beta = 0.0;
  Exponent p = Exponent::finite(2.0);
  WeightMode weight = WeightMode::classical;
  int dimension = 1;
  Real h = 0.0;
  /// Puncture radius in absolute units (0 for operations without one).
  Real puncture = 0.0;
  /// |value(h) - value(2h)|.
  Real error_estimate = 0.0;
  Eigen::Index nodes = 0;
  bool diagonal_correction = false;

  /// Maximising pair (flat indices) for sup-type seminorms.
  std::optional<std::array<Eigen::Index, 2>> witness;
  /// Full norms only: (||u||_p^p + [u]^p)^(1/p) and its two-level estimate.
  std::optional<Real> p_power_value;
  std::optional<Real> p_power_error;
  /// Full norms only: the two additive parts.
  std::optional<Real> lp_part;
  std::optional<Real> seminorm_part;
  /// Free-form evidence for divergence verdicts or the reading used.
  std::string note;

  bool is_finite() const { return verdict == Verdict::finite; }
};

}  // namespace fracsob

#endif  // FRACSOB_REPORT_HPP
