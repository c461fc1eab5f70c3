#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace zetaprod {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// Absolute constant above which |chi(sigma+it)| = 1 forces sigma = 1/2.
inline constexpr double default_c0 = 6.3;

inline bool is_finite(const cplx& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline cplx ensure_finite(const cplx& z, const char* where) {
  if (!is_finite(z))
    throw NumericError(std::string(where) + ": non-finite result");
  return z;
}

inline double ensure_finite(double x, const char* where) {
  if (!std::isfinite(x))
    throw NumericError(std::string(where) + ": non-finite result");
  return x;
}

// Pairwise (tree) reduction of term(i) over [lo, hi).  Gives run-order
// independent rounding and O(log n) error growth; all the long Euler-product
// sums go through this so results are reproducible bit for bit.
template <class T, class F>
T pairwise_sum(std::size_t lo, std::size_t hi, F&& term) {
  const std::size_t n = hi - lo;
  if (n <= 64) {
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = lo + n / 2;
  return pairwise_sum<T>(lo, mid, term) + pairwise_sum<T>(mid, hi, term);
}

// An unwound (not reduced mod 2pi) argument together with a description of
// the continuation path along which it was tracked.
struct BranchTrackedArg {
  double value = 0.0;
  std::string path;
};

// Continue the argument of f along the straight segment from a to b, given
// the unwound argument arg_a of f(a).  The segment is subdivided until each
// increment of the principal argument is below pi/2, so the unwinding is
// well defined whenever f has no zero on the segment.
template <class F>
double continue_arg(F&& f, const cplx& a, const cplx& b, double arg_a,
                    int depth = 0) {
  const cplx fa = f(a);
  const cplx fb = f(b);
  if (fa == cplx(0.0) || fb == cplx(0.0))
    throw NumericError("continue_arg: zero on continuation path");
  double d = std::arg(fb) - std::arg(fa);
  d = std::remainder(d, 2.0 * pi);
  if (std::abs(d) < pi / 2.0) return arg_a + d;
  if (depth > 48)
    throw NumericError("continue_arg: segment subdivision did not converge");
  const cplx mid = 0.5 * (a + b);
  const double arg_mid = continue_arg(f, a, mid, arg_a, depth + 1);
  return continue_arg(f, mid, b, arg_mid, depth + 1);
}

} // namespace zetaprod
