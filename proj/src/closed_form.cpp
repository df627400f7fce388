#include "fracsob/closed_form.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracsob/errors.hpp"

namespace fracsob {

namespace {

std::string format_param(Real v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

std::string_view to_string(FormKind kind) {
  switch (kind) {
    case FormKind::gaussian: return "gaussian";
    case FormKind::bump: return "bump";
    case FormKind::lorentzian: return "lorentzian";
    case FormKind::sech: return "sech";
    case FormKind::polynomial_decay: return "polynomial_decay";
    case FormKind::linear_ramp: return "linear_ramp";
    case FormKind::constant: return "constant";
    case FormKind::reciprocal: return "reciprocal";
  }
  return "unknown";
}

ClosedForm::ClosedForm(FormKind kind, std::vector<Real> params, std::vector<Real> poles)
    : kind_(kind), params_(std::move(params)), poles_(std::move(poles)) {}

ClosedForm ClosedForm::gaussian(Real a) {
  if (!(a > 0.0)) throw ParameterError("gaussian width parameter must be positive");
  return ClosedForm(FormKind::gaussian, {a}, {});
}

ClosedForm ClosedForm::bump(Real center, Real radius) {
  if (!(radius > 0.0)) throw ParameterError("bump radius must be positive");
  return ClosedForm(FormKind::bump, {center, radius}, {});
}

ClosedForm ClosedForm::lorentzian() { return ClosedForm(FormKind::lorentzian, {}, {-1.0, 1.0}); }

ClosedForm ClosedForm::sech() {
  std::vector<Real> poles;
  for (int k = 0; k < 4; ++k) {
    const Real y = std::numbers::pi * (0.5 + k);
    poles.push_back(-y);
    poles.push_back(y);
  }
  return ClosedForm(FormKind::sech, {}, std::move(poles));
}

ClosedForm ClosedForm::polynomial_decay(int k) {
  if (k < 1) throw ParameterError("polynomial_decay order must be >= 1");
  return ClosedForm(FormKind::polynomial_decay, {static_cast<Real>(k)}, {-1.0, 1.0});
}

ClosedForm ClosedForm::linear_ramp() { return ClosedForm(FormKind::linear_ramp, {}, {}); }

ClosedForm ClosedForm::constant(Complex c) {
  if (c.imag() == 0.0) return ClosedForm(FormKind::constant, {c.real()}, {});
  return ClosedForm(FormKind::constant, {c.real(), c.imag()}, {});
}

ClosedForm ClosedForm::reciprocal() { return ClosedForm(FormKind::reciprocal, {}, {0.0}); }

ClosedForm ClosedForm::make(std::string_view kind, std::span<const Real> p) {
  auto need = [&](std::size_t n) {
    if (p.size() != n) {
      throw ConfigError(std::string(kind) + " expects " + std::to_string(n) + " parameter(s), got " +
                        std::to_string(p.size()));
    }
  };
  if (kind == "gaussian") {
    if (p.empty()) return gaussian();
    need(1);
    return gaussian(p[0]);
  }
  if (kind == "bump") {
    if (p.empty()) return bump();
    need(2);
    return bump(p[0], p[1]);
  }
  if (kind == "lorentzian") { need(0); return lorentzian(); }
  if (kind == "sech") { need(0); return sech(); }
  if (kind == "polynomial_decay") {
    need(1);
    const Real k = p[0];
    if (k != std::floor(k)) throw ConfigError("polynomial_decay order must be an integer");
    return polynomial_decay(static_cast<int>(k));
  }
  if (kind == "linear_ramp") { need(0); return linear_ramp(); }
  if (kind == "constant") {
    if (p.empty()) return constant();
    if (p.size() == 2) return constant(Complex(p[0], p[1]));
    need(1);
    return constant(p[0]);
  }
  if (kind == "reciprocal") { need(0); return reciprocal(); }
  throw ConfigError("unknown closed form kind '" + std::string(kind) + "'");
}

ClosedForm ClosedForm::shifted(Real a) const {
  ClosedForm out = *this;
  out.shift_ += a;
  return out;
}

Complex ClosedForm::operator()(Complex z0, Complex z1) const {
  z0 -= shift_;
  const Complex r2 = z0 * z0 + z1 * z1;
  switch (kind_) {
    case FormKind::gaussian:
      return std::exp(-params_[0] * r2);
    case FormKind::bump: {
      const Complex d = z0 - params_[0];
      const Complex s = (d * d + z1 * z1) / (params_[1] * params_[1]);
      if (s.real() >= 1.0) return 0.0;
      return std::exp(-1.0 / (1.0 - s));
    }
    case FormKind::lorentzian:
      return 1.0 / (1.0 + r2);
    case FormKind::sech:
      // sech is even, so sech(sqrt(r2)) does not depend on the branch of sqrt.
      return 1.0 / std::cosh(z1 == 0.0 ? z0 : std::sqrt(r2));
    case FormKind::polynomial_decay:
      return std::pow(1.0 + r2, -0.5 * params_[0]);
    case FormKind::linear_ramp:
      return z0;
    case FormKind::constant:
      return params_.size() == 2 ? Complex(params_[0], params_[1]) : Complex(params_[0]);
    case FormKind::reciprocal:
      return 1.0 / z0;
  }
  return 0.0;
}

std::string ClosedForm::identifier() const {
  std::string id(to_string(kind_));
  if (!params_.empty()) {
    id += '(';
    for (std::size_t i = 0; i < params_.size(); ++i) {
      if (i) id += ',';
      id += format_param(params_[i]);
    }
    id += ')';
  }
  if (shift_ != 0.0) id += "@" + format_param(shift_);
  return id;
}

bool ClosedForm::has_pole_within(Real half_width) const {
  for (Real y : poles_) {
    if (std::abs(y) <= half_width) return true;
  }
  return false;
}

bool ClosedForm::is_pole(const Point& x, Real tol) const {
  for (Real y : poles_) {
    if (y == 0.0 && std::abs(x[0] - shift_) <= tol && std::abs(x[1]) <= tol) return true;
  }
  return false;
}

Real ClosedForm::singularity_distance(const Point& x) const {
  Real best = std::numeric_limits<Real>::infinity();
  const Real dx = x[0] - shift_;
  if (kind_ == FormKind::bump) return std::abs(std::hypot(dx - params_[0], x[1]) - params_[1]);
  for (Real y : poles_) best = std::min(best, std::hypot(dx, x[1], y));
  return best;
}

Real ClosedForm::support_center() const {
  if (!compactly_supported()) throw ParameterError(identifier() + " is not compactly supported");
  return params_[0] + shift_;
}

Real ClosedForm::support_radius() const {
  if (!compactly_supported()) throw ParameterError(identifier() + " is not compactly supported");
  return params_[1];
}

}  // namespace fracsob
