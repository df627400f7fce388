#ifndef FRACSOB_SPECTRAL_HPP
#define FRACSOB_SPECTRAL_HPP

#include <array>
#include <functional>
#include <iosfwd>
#include <string>

#include "fracsob/core.hpp"
#include "fracsob/params.hpp"
#include "fracsob/report.hpp"

namespace fracsob {

/// Stamped into every spectrum and its CSV dump.
inline constexpr const char* kTransformConvention =
    "uhat(xi) = int u(x) exp(-i xi.x) dx; u(x) = (2pi)^-n int uhat(xi) exp(i xi.x) dxi";

struct TransformOptions {
  /// Escalate a boundary-decay failure from a flag to a DecayError.
  bool strict = false;
  /// Boundary values must be below this fraction of max |u|.
  Real decay_threshold = 1e-10;
  /// Minimum zero-padding factor; the padded length is the next power of two.
  int padding = 2;
};

/// Continuous Fourier transform sampled on the dual frequency grid.
struct SpectrumFunction {
  /// Ascending frequencies, spacing 2 pi / (M h) with M the padded length.
  Grid frequencies;
  ComplexArray amplitudes;
  /// Grid the transform was taken from; the inverse returns onto it.
  Grid spatial;
  std::string convention = kTransformConvention;
  bool boundary_decay_ok = true;
};

SpectrumFunction forward_transform(const SampledFunction& u, const TransformOptions& opts = {});
SampledFunction inverse_transform(const SpectrumFunction& spectrum);

/// Pointwise multiplication of the amplitudes by m(xi).
SpectrumFunction apply_multiplier(const SpectrumFunction& spectrum, const std::function<Complex(const Point&)>& m);

/// Multiplier |xi|^beta. Composition on spectra is exact: D^a D^b = D^(a+b).
SpectrumFunction fractional_derivative(const SpectrumFunction& spectrum, Real beta);
/// Inverse transform of |xi|^beta uhat back onto the grid of u. beta = 0 is the identity.
SampledFunction fractional_derivative(const SampledFunction& u, Real beta, const TransformOptions& opts = {});

/// Partial derivative D^order u (order per axis). Closed-form sources are
/// differentiated with a Cauchy integral on a circle clear of their singularities
/// (for the bump, of its support edge); other inputs spectrally, which requires
/// boundary decay.
SampledFunction derivative(const SampledFunction& u, std::array<int, 2> order);

/// sum over the frequency grid of (1 + |xi|^e) |uhat|^p dxi, with e = beta p
/// (classical) or n + p beta (ultra). Not raised to 1/p.
NormReport fourier_seminorm(const SampledFunction& u, const NormParams& params, const TransformOptions& opts = {});

/// Where the derivative term of the weak-derivative norm is measured.
enum class DerivativeTermReading {
  /// L^p over the frequency grid (the object lives on the frequency side).
  frequency,
  /// Inverse transform first, then L^p over the spatial domain.
  spatial,
};

struct WeakNormOptions {
  DerivativeTermReading reading = DerivativeTermReading::frequency;
  TransformOptions transform;
};

/// (||u||_{k,p}^p + ||D^beta((1 + |xi|^(n + p beta)) uhat)||_p^p)^(1/p) with k = ceil(beta);
/// additive for p = inf. With classical weight the factor (1 + ...) is replaced by 1.
NormReport weak_fractional_norm(const SampledFunction& u, const NormParams& params, const DomainSpec& domain,
                                const WeakNormOptions& opts = {});

/// Just the derivative term of weak_fractional_norm.
Real weak_derivative_term(const SampledFunction& u, const NormParams& params, const DomainSpec& domain,
                          const WeakNormOptions& opts = {});

/// CSV with a convention comment line and header xi,re,im (1D) or xi0,xi1,re,im (2D).
void write_spectrum_csv(std::ostream& out, const SpectrumFunction& spectrum);

}  // namespace fracsob

#endif  // FRACSOB_SPECTRAL_HPP
