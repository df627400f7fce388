#ifndef FRACSOB_TESTS_ORACLES_HPP
#define FRACSOB_TESTS_ORACLES_HPP

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

// Independent reference values. Nothing here calls into the library.
namespace oracle {

using std::numbers::pi;

/// C(beta) = 2 int_R (1 - cos t) / |t|^(1 + 2 beta) dt. After one integration by
/// parts this is (2 / beta) int_0^inf sin(t) t^(-2 beta) dt, an Ooura sine transform.
inline double bridge_constant(double beta) {
  boost::math::quadrature::ooura_fourier_sin<double> sine;
  const auto [value, err] = sine.integrate([beta](double t) { return std::pow(t, -2.0 * beta); }, 1.0);
  (void)err;
  return 2.0 / beta * value;
}

/// int_R g(xi) dxi for an even integrand g with rapid decay.
inline double even_line_integral(const std::function<double(double)>& g) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return 2.0 * integrator.integrate(g);
}

/// |uhat|^2 of gaussian(1) under uhat(xi) = int u exp(-i xi x) dx.
inline double gaussian_spectrum_sq(double xi) { return pi * std::exp(-xi * xi / 2.0); }

/// int (1 + |xi|^(2 beta)) |uhat|^2 dxi for gaussian(1).
inline double gaussian_fourier_seminorm(double beta) {
  return even_line_integral([beta](double xi) { return (1.0 + std::pow(xi, 2.0 * beta)) * gaussian_spectrum_sq(xi); });
}

/// (C(beta) / 2 pi) int |xi|^(2 beta) |uhat|^2 dxi: the squared whole-line Gagliardo seminorm of gaussian(1).
inline double gaussian_bridge(double beta) {
  const double moment =
      even_line_integral([beta](double xi) { return std::pow(xi, 2.0 * beta) * gaussian_spectrum_sq(xi); });
  return bridge_constant(beta) / (2.0 * pi) * moment;
}

/// sum_{i != j} |u_i - u_j|^p / |x_i - x_j|^(1 + p beta) h^2 with plain Riemann weights.
inline double raw_pair_sum(const std::vector<double>& u, double h, double beta, double p) {
  const std::size_t n = u.size();
  const double q = 1.0 + p * beta;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = std::abs(static_cast<double>(i) - static_cast<double>(j)) * h;
      row += std::pow(std::abs(u[i] - u[j]), p) / std::pow(d, q);
    }
    total += row;
  }
  return total * h * h;
}

/// Gagliardo seminorm^p of f on [lo, hi] by Richardson extrapolation of raw pair sums
/// at spacings h and h/2 (the excluded diagonal contributes O(h^(p(1 - beta)))).
inline double dense_gagliardo_power(const std::function<double(double)>& f, double lo, double hi, double h,
                                    double beta, double p) {
  auto samples = [&](double step) {
    std::vector<double> u;
    const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
    for (std::size_t k = 0; k < count; ++k) u.push_back(f(lo + static_cast<double>(k) * step));
    return u;
  };
  const double coarse = raw_pair_sum(samples(h), h, beta, p);
  const double fine = raw_pair_sum(samples(h / 2.0), h / 2.0, beta, p);
  const double gain = std::pow(2.0, p * (1.0 - beta));
  return (gain * fine - coarse) / (gain - 1.0);
}

/// max over node pairs of |u_i - u_j| / |x_i - x_j|^alpha, exhaustively.
inline double brute_holder(const std::vector<double>& u, double h, double alpha) {
  double best = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      best = std::max(best, std::abs(u[i] - u[j]) / std::pow(static_cast<double>(j - i) * h, alpha));
    }
  }
  return best;
}

/// max of g over [lo, hi] on a dense uniform sample.
inline double dense_max(const std::function<double(double)>& g, double lo, double hi, int samples = 200001) {
  double best = -INFINITY;
  for (int k = 0; k < samples; ++k) best = std::max(best, g(lo + (hi - lo) * k / (samples - 1)));
  return best;
}

/// sup over the line Im xi = y of (1 + |xi|^p) |exp(-xi^2)|, maximised densely along Re xi.
inline double gaussian_strip_line_max(double y, int p) {
  return dense_max(
      [y, p](double x) {
        const std::complex<double> z(x, y);
        return (1.0 + std::pow(std::abs(z), p)) * std::exp(y * y - x * x);
      },
      -6.0, 6.0);
}

}  // namespace oracle

#endif  // FRACSOB_TESTS_ORACLES_HPP
