#ifndef FRACSOB_QUADRATURE_HPP
#define FRACSOB_QUADRATURE_HPP

#include <span>
#include <vector>

#include "fracsob/core.hpp"
#include "fracsob/params.hpp"
#include "fracsob/report.hpp"

namespace fracsob {

/// Discretization controls for the pair sums.
struct QuadratureConfig {
  /// Pairs closer than puncture * h are dropped; must be >= 1.
  Real puncture = 1.0;
  /// Adds the zeta-function estimate of the punctured near-diagonal mass (1D only).
  bool diagonal_correction = true;
  /// Weight each pair by (w(x) + w(y)) / 2 instead of w(x).
  bool symmetrized_weight = false;
  /// Rows per work unit; does not affect results.
  Eigen::Index tile_size = 64;
  unsigned workers = 1;
  /// Also evaluate on the 2h grid and report the difference.
  bool estimate_error = true;
  /// Treat u as zero on the lattice nodes outside the box and add the pairs with
  /// one node outside (1D, classical weight), so the value approximates the
  /// seminorm over the whole line.
  bool exterior_tail = false;
};

/// Trapezoidal L^p norm of u over the nodes in `domain` (grid max for p = inf).
/// Terms are accumulated in flat order, so padding with zeros leaves the value unchanged.
Real lp_norm(const SampledFunction& u, Exponent p, const DomainSpec& domain);

/// Gagliardo seminorm
///   ( sum_{x != y} w(x) |u(x) - u(y)|^p / |x - y|^(n + p beta) )^(1/p)
/// over node pairs in `domain`, with w = 1 (classical) or 1 + |x|^(n + p beta)
/// (ultra). Requires beta in (0,1), finite p and at least 4 nodes per axis.
NormReport gagliardo_seminorm(const SampledFunction& u, const NormParams& params, const DomainSpec& domain,
                              const QuadratureConfig& cfg = {});

/// Hoelder-type seminorm max_{x != y} |u(x) - u(y)| / |x - y|^alpha. The weighted
/// variant uses (1 + |x|^(n + alpha)) |u(x) - u(y)| / |x - y|^(n + alpha).
/// The witness is the first maximising pair in row-major order.
NormReport holder_seminorm(const SampledFunction& u, Real alpha, const DomainSpec& domain, bool weighted,
                           const QuadratureConfig& cfg = {});

/// ||u||_p + [u] (canonical value) together with (||u||_p^p + [u]^p)^(1/p).
/// For p = inf the seminorm is the (weighted, when ultra) Hoelder seminorm of order beta.
NormReport full_norm(const SampledFunction& u, const NormParams& params, const DomainSpec& domain,
                     const QuadratureConfig& cfg = {});

/// (sum_{|a| <= k} ||D^a u||_p^p)^(1/p), or the max over a for p = inf. k <= 4.
Real sobolev_integer_norm(const SampledFunction& u, int k, Exponent p, const DomainSpec& domain);

/// Gagliardo seminorm of a closed form on growing boxes [-R, R]^n. The verdict is
/// divergent when the last doubling still grows the value by more than `growth_tol`
/// and, given three or more radii, the last increment is not smaller than the one before.
struct TruncationSweep {
  std::vector<Real> radii;
  std::vector<Real> values;
  NormReport report;
};
TruncationSweep gagliardo_truncation_sweep(const ClosedForm& f, const NormParams& params,
                                           std::span<const Real> radii, Real h,
                                           const QuadratureConfig& cfg = {}, Real growth_tol = 0.01);

}  // namespace fracsob

#endif  // FRACSOB_QUADRATURE_HPP
