#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>

#include "common.hpp"
#include "errors.hpp"

namespace zetaprod::specfun {

using zetaprod::cplx;

namespace detail {

// Lanczos approximation, g = 7, 9 coefficients.  Valid for Re z >= 1/2;
// relative error ~ 1e-14 over the range used here.
inline cplx log_gamma_lanczos(const cplx& z) {
  static const double c[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  cplx sum = c[0];
  for (int k = 1; k < 9; ++k) sum += c[k] / (z + static_cast<double>(k - 1));
  const cplx base = z + 6.5;
  return 0.5 * std::log(2.0 * zetaprod::pi) + (z - 0.5) * std::log(base) -
         base + std::log(sum);
}

} // namespace detail

// Principal branch of log Gamma, continuous on the cut plane.  For
// Re z < 1/2 the upward recurrence
//   log Gamma(z) = log Gamma(z + n) - sum_{k=0}^{n-1} log(z + k)
// is used instead of reflection; since Im z is fixed along the shift, each
// log stays on one side of the cut and the principal branch is preserved.
inline cplx log_gamma(const cplx& z) {
  if (std::abs(z.imag()) < 1e-13) {
    const double r = std::round(z.real());
    if (r <= 0.0 && std::abs(z.real() - r) < 1e-13)
      throw PoleError("log_gamma: pole at non-positive integer");
  }
  if (z.real() >= 0.5) return ensure_finite(detail::log_gamma_lanczos(z), "log_gamma");
  const int n = static_cast<int>(std::ceil(0.5 - z.real()));
  cplx shift = 0.0;
  for (int k = 0; k < n; ++k) shift += std::log(z + static_cast<double>(k));
  return ensure_finite(
      detail::log_gamma_lanczos(z + static_cast<double>(n)) - shift,
      "log_gamma");
}

// Dirichlet functional-equation factor
//   Psi(s) = (pi/q)^{s-1/2} Gamma((1+a-s)/2) / Gamma((a+s)/2),  a in {0,1}.
// Evaluated in log space.  Gamma poles of the numerator are poles of Psi;
// Gamma poles of the denominator are (exact) zeros.
inline cplx psi_factor(const cplx& s, long q, int parity) {
  if (q < 1) throw DomainError("psi_factor: modulus must be positive");
  if (parity != 0 && parity != 1)
    throw DomainError("psi_factor: parity must be 0 or 1");
  const cplx num = (1.0 + static_cast<double>(parity) - s) / 2.0;
  const cplx den = (static_cast<double>(parity) + s) / 2.0;
  cplx lg_den;
  try {
    lg_den = log_gamma(den);
  } catch (const PoleError&) {
    return cplx(0.0, 0.0);
  }
  cplx lg_num;
  try {
    lg_num = log_gamma(num);
  } catch (const PoleError&) {
    throw PoleError("psi_factor: pole of the Gamma ratio");
  }
  const cplx lg = (s - 0.5) * std::log(zetaprod::pi / static_cast<double>(q)) +
                  lg_num - lg_den;
  return ensure_finite(std::exp(lg), "psi_factor");
}

// chi(s) = pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2), the factor in
// zeta(s) = chi(s) zeta(1-s).  Poles at s = 1, 3, 5, ...
inline cplx chi(const cplx& s) { return psi_factor(s, 1, 0); }

// Riemann-Siegel theta: the continuous phase with -arg chi(1/2+it) = 2 theta(t),
// normalized by the continuation 2 -> 2+it -> 1/2+it (theta(0) = 0).
inline double theta(double t) {
  if (t < 0.0) throw DomainError("theta: t must be >= 0");
  return ensure_finite(
      std::imag(log_gamma(cplx(0.25, t / 2.0))) -
          (t / 2.0) * std::log(zetaprod::pi),
      "theta");
}

namespace detail {

// On the cut (z real negative) values are the limits from the upper half
// plane, consistent with the global limit-from-above convention; std::log
// already returns arg = +pi there.  The series handles that region; the
// continued fraction does not, so far out on the cut we give up.
inline bool use_series(const cplx& z) {
  if (std::abs(z) <= 4.0) return true;
  return z.real() <= 0.0 && std::abs(z.imag()) <= 4.0 && std::abs(z) <= 48.0;
}

inline void check_domain(const cplx& z, const char* who) {
  if (z == cplx(0.0)) throw DomainError(std::string(who) + ": z = 0");
  if (z.imag() == 0.0 && z.real() < 0.0 && std::abs(z) > 48.0)
    throw DomainError(std::string(who) +
                      ": too far out on the branch cut");
}

// E_1 by the alternating power series
//
//                            -----     k+1  k
//                             \    (-1)    z
//  E (z) = -gamma - log z +    )   ----------
//   1                         /      k * k!
//                            -----
//                            k >= 1
//
// used for |z| <= 4 where cancellation is mild.
inline cplx e1_series(const cplx& z) {
  cplx sum = 0.0;
  cplx u = 1.0;
  for (int k = 1; k <= 200; ++k) {
    u *= -z / static_cast<double>(k);
    const cplx term = -u / static_cast<double>(k);
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return -zetaprod::euler_gamma - std::log(z) + sum;
}

// Standard E_n(z) = integral_1^inf e^{-zt} t^{-n} dt by the modified Lentz
// continued fraction; used for |z| > 4.
inline cplx en_continued_fraction(int n, const cplx& z) {
  const double tiny = 1e-290;
  cplx b = z + static_cast<double>(n);
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i <= 200; ++i) {
    const double a = -static_cast<double>(i) * (n - 1 + i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-z);
}

} // namespace detail

// First exponential integral E_1(z), principal branch.
inline cplx e1(const cplx& z) {
  detail::check_domain(z, "e1");
  if (detail::use_series(z)) return ensure_finite(detail::e1_series(z), "e1");
  return ensure_finite(detail::en_continued_fraction(1, z), "e1");
}

// Second exponential integral in the normalization
//
//           inf
//             /     -w
//            |     e
//  E (z) =   | dw ----- ,
//   2        |      2
//           /      w
//            z
//
// i.e. (1/z) * integral_1^inf e^{-zu} u^{-2} du.  Equivalently
// E_2(z) = e^{-z}/z - E_1(z); for large |z| it is e^{-z}/z^2 (1 + O(1/|z|)).
inline cplx e2(const cplx& z) {
  detail::check_domain(z, "e2");
  if (detail::use_series(z))
    return ensure_finite(std::exp(-z) / z - detail::e1_series(z), "e2");
  return ensure_finite(detail::en_continued_fraction(2, z) / z, "e2");
}

// Kernel weighting each zero's contribution in the hybrid factorization:
// F_2(z) = 2 E_2(2z) - E_2(z).  Near 0, F_2(z) = log 4z + (analytic);
// the 1/z singularities of the two E_2 terms cancel.
inline cplx f2(const cplx& z) {
  detail::check_domain(z, "f2");
  return 2.0 * e2(2.0 * z) - e2(z);
}

} // namespace zetaprod::specfun
