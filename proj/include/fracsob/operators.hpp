#ifndef FRACSOB_OPERATORS_HPP
#define FRACSOB_OPERATORS_HPP

#include <string>
#include <vector>

#include "fracsob/closed_form.hpp"
#include "fracsob/core.hpp"
#include "fracsob/params.hpp"
#include "fracsob/quadrature.hpp"
#include "fracsob/report.hpp"

namespace fracsob {

/// Standard bump x -> c exp(-1 / (1 - |x/eps|^2)) on |x| < eps, tabulated on a grid
/// stencil and renormalised so that sum * h^n = 1.
class Mollifier {
 public:
  /// Throws ParameterError unless eps >= 2h on every axis.
  Mollifier(const Grid& grid, Real epsilon);

  Real epsilon() const { return epsilon_; }
  /// Stencil half-width in nodes per axis.
  const std::array<Index, 2>& reach() const { return reach_; }
  /// Tap weights (including h^n), row-major over the (2 reach + 1)^n stencil.
  const RealArray& taps() const { return taps_; }

 private:
  Real epsilon_;
  int dimension_;
  std::array<Index, 2> reach_{};
  RealArray taps_;
};

/// Discrete convolution with the normalised bump; nodes off the grid count as zero.
SampledFunction mollify(const SampledFunction& u, Real epsilon, unsigned workers = 1);

struct ZeroExtensionOptions {
  /// Multiply the copied values by (1 + |x|^(n + p beta)) (literal reading); off by default.
  bool weighted = false;
  NormParams params;
};

/// Copies u|from onto the lattice nodes of `to` and sets every other node to zero.
/// Requires from inside to, `to` aligned with the lattice of u, and a zero ring of
/// width 2h along the boundary of `from`.
SampledFunction zero_extension(const SampledFunction& u, const DomainSpec& from, const DomainSpec& to,
                               const ZeroExtensionOptions& opts = {});

struct ExtensionRow {
  std::string member;
  Real norm_before = 0.0;
  Real norm_after = 0.0;
  Real ratio = 0.0;
  /// Zero member (0/0) or precondition failure; not part of the constants.
  bool excluded = false;
  std::string reason;
};

struct ExtensionReport {
  std::vector<ExtensionRow> rows;
  /// max ratio (forward bound) and min ratio (its reciprocal bounds the inverse).
  Real forward_constant = 0.0;
  Real inverse_constant = 0.0;
  /// Every extension vanished bit-exactly outside `from`.
  bool support_ok = true;
};

struct NamedForm {
  std::string id;
  ClosedForm form;
};

/// Full norms before (on `from`) and after (on `to`) zero extension, sampled at spacing h.
ExtensionReport extension_operator_norm(const std::vector<NamedForm>& members, const NormParams& params,
                                        const DomainSpec& from, const DomainSpec& to, Real h,
                                        const QuadratureConfig& cfg = {});

/// Smooth cutoff that is exactly 1 on `inner` and exactly 0 outside the open box
/// `outer`: the indicator of inner enlarged by margin/2, mollified with eps = margin/2.
/// Requires inner strictly inside outer with margin >= 4h.
RealArray interior_cutoff(const Grid& grid, const DomainSpec& inner, const DomainSpec& outer);

/// u times interior_cutoff: equal to u on `inner`, zero outside `outer`.
SampledFunction cutoff_interior_extension(const SampledFunction& u, const DomainSpec& inner, const DomainSpec& outer);

struct MultiplicationReport {
  /// Full norm of u phi over the domain.
  NormReport norm;
  /// max over nodes of (1 + |x|^(p beta)) |u phi|^p.
  Real weighted_sup = 0.0;
  /// ||phi||_inf ||u||_p + ||phi||_inf [u] + ||u||_inf [phi].
  Real bound = 0.0;
  SampledFunction product;
};

/// Pointwise product with a closed form sampled on the grid of u.
MultiplicationReport multiply_by_class_function(const SampledFunction& u, const ClosedForm& phi,
                                                const NormParams& params, const DomainSpec& domain,
                                                const QuadratureConfig& cfg = {});

}  // namespace fracsob

#endif  // FRACSOB_OPERATORS_HPP
