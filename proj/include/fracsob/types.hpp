#ifndef FRACSOB_TYPES_HPP
#define FRACSOB_TYPES_HPP

#include <array>
#include <complex>

namespace fracsob {

using Real = double;
using Complex = std::complex<Real>;

/// Real point in one or two dimensions; the second coordinate is 0 in 1D.
using Point = std::array<Real, 2>;

/// Complex point; unused coordinates are 0.
using ComplexPoint = std::array<Complex, 2>;

}  // namespace fracsob

#endif  // FRACSOB_TYPES_HPP
