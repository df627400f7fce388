#ifndef FRACSOB_PARAMS_HPP
#define FRACSOB_PARAMS_HPP

#include <cmath>
#include <string>
#include <string_view>

#include "fracsob/errors.hpp"
#include "fracsob/types.hpp"

namespace fracsob {

/// Integrability exponent: a finite p >= 1 or the symbol infinity.
class Exponent {
 public:
  static Exponent finite(Real p);
  static Exponent infinity() { return Exponent(); }
  /// "inf", "infinity" or a number.
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Throws ParameterError for the infinite exponent.
  Real value() const;
  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  Exponent() = default;

  bool infinite_ = true;
  Real p_ = 0.0;
};

enum class WeightMode { classical, ultra };

std::string_view to_string(WeightMode mode);
WeightMode parse_weight_mode(std::string_view text);

/// (beta, p, n) plus the weight selection shared by every norm in the library.
struct NormParams {
  Real beta = 0.5;
  Exponent p = Exponent::finite(2.0);
  int n = 1;
  WeightMode weight = WeightMode::classical;

  /// Exponent of the ultra weight 1 + |x|^e: n + p*beta, or n + beta when p is infinite.
  Real ultra_exponent() const { return p.is_infinite() ? n + beta : n + p.value() * beta; }
  /// Throws unless beta is in (0,1) and p is finite.
  void require_gagliardo() const;
};

/// Weight 1 + |x|^exponent, with |x| the Euclidean norm of a real point.
inline Real ultra_weight(const Point& x, Real exponent) {
  return 1.0 + std::pow(std::hypot(x[0], x[1]), exponent);
}

}  // namespace fracsob

#endif  // FRACSOB_PARAMS_HPP
