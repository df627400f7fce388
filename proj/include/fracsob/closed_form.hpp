#ifndef FRACSOB_CLOSED_FORM_HPP
#define FRACSOB_CLOSED_FORM_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fracsob/types.hpp"

namespace fracsob {

enum class FormKind {
  gaussian,
  bump,
  lorentzian,
  sech,
  polynomial_decay,
  linear_ramp,
  constant,
  reciprocal,
};

std::string_view to_string(FormKind kind);

/// A test function with a complex evaluator that is valid off the real axis.
///
/// In two dimensions the radial members are evaluated through r^2 = z0^2 + z1^2
/// (no conjugation), so the evaluator stays holomorphic in each coordinate.
/// All singularities sit on the imaginary axis through the shift point; they
/// are described by their imaginary ordinates.
class ClosedForm {
 public:
  static ClosedForm gaussian(Real a = 1.0);
  static ClosedForm bump(Real center = 0.0, Real radius = 1.0);
  static ClosedForm lorentzian();
  static ClosedForm sech();
  static ClosedForm polynomial_decay(int k);
  static ClosedForm linear_ramp();
  static ClosedForm constant(Complex c = 1.0);
  /// 1/z. Not a corpus member; used by the vanishing diagnostics.
  static ClosedForm reciprocal();

  /// Builds a form from its kind name and parameter list; throws ConfigError.
  static ClosedForm make(std::string_view kind, std::span<const Real> params);

  /// Translate along axis 0: x -> f(x - a).
  ClosedForm shifted(Real a) const;

  Complex operator()(Complex z0, Complex z1 = 0.0) const;
  Complex operator()(const ComplexPoint& z) const { return (*this)(z[0], z[1]); }
  Complex operator()(const Point& x) const { return (*this)(Complex(x[0]), Complex(x[1])); }

  FormKind kind() const { return kind_; }
  const std::vector<Real>& params() const { return params_; }
  Real shift() const { return shift_; }
  /// e.g. "gaussian(1)" or "bump(0,0.5)".
  std::string identifier() const;

  /// Imaginary ordinates of poles or branch points (both signs listed).
  const std::vector<Real>& pole_ordinates() const { return poles_; }
  /// True when some singularity has |ordinate| <= half_width.
  bool has_pole_within(Real half_width) const;
  /// True at a real point that coincides with a singularity.
  bool is_pole(const Point& x, Real tol = 0.0) const;

  bool is_analytic() const { return kind_ != FormKind::bump; }
  bool is_entire() const { return is_analytic() && poles_.empty(); }
  /// Distance from a real point to the nearest singularity (infinity when none).
  /// For the bump this is the distance to the edge of its support.
  Real singularity_distance(const Point& x) const;

  bool compactly_supported() const { return kind_ == FormKind::bump; }
  /// Centre and radius of the support ball for compactly supported forms.
  Real support_center() const;
  Real support_radius() const;

 private:
  ClosedForm(FormKind kind, std::vector<Real> params, std::vector<Real> poles);

  FormKind kind_;
  std::vector<Real> params_;
  std::vector<Real> poles_;
  Real shift_ = 0.0;
};

}  // namespace fracsob

#endif  // FRACSOB_CLOSED_FORM_HPP
