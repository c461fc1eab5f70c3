#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "arith.hpp"
#include "common.hpp"
#include "errors.hpp"
#include "specfun.hpp"

namespace zetaprod::refzeta {

using zetaprod::cplx;

namespace detail {

inline constexpr double bernoulli_2k[16] = {
    0.0, // unused
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0};

inline int em_terms(double t) {
  return std::max(50, static_cast<int>(std::ceil(3.0 * std::abs(t))));
}

// Euler-Maclaurin for the Hurwitz zeta
//   zeta(s, a) = sum_{n>=0} (n+a)^{-s}
// with N leading terms and Bernoulli corrections through B_30.
// at_pole_limit replaces the (N+a)^{1-s}/(s-1) pole term by its finite part
// -log(N+a); callers use it to sum non-principal L-values at s = 1, where
// the poles of the individual Hurwitz terms cancel.
inline cplx hurwitz_em(const cplx& s, double a, int n_terms, int k_terms = 15,
                       bool at_pole_limit = false) {
  const int N = n_terms;
  cplx sum = pairwise_sum<cplx>(0, static_cast<std::size_t>(N), [&](std::size_t n) {
    return std::exp(-s * std::log(static_cast<double>(n) + a));
  });
  const double A = static_cast<double>(N) + a;
  const double log_a = std::log(A);
  const cplx a_ms = std::exp(-s * log_a); // A^{-s}
  if (at_pole_limit)
    sum += -log_a;
  else
    sum += a_ms * A / (s - 1.0);
  sum += 0.5 * a_ms;
  cplx poch = s;              // s(s+1)...(s+2k-2), starts at k=1
  double fact = 2.0;          // (2k)!
  cplx apow = a_ms / A;       // A^{-s-2k+1}
  cplx last = 0.0;
  for (int k = 1; k <= k_terms; ++k) {
    last = bernoulli_2k[k] / fact * poch * apow;
    sum += last;
    poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    fact *= (2 * k + 1) * (2 * k + 2);
    apow /= A * A;
  }
  if (std::abs(last) > 1e-12 * (std::abs(sum) + 1.0))
    throw NumericError("hurwitz_em: Bernoulli tail did not converge");
  return sum;
}

// zeta without the |s-1| <= 1/10 guard, for branch continuation paths that
// legitimately pass near the pole.
inline cplx zeta_em_raw(const cplx& s) {
  if (s == cplx(1.0)) throw PoleError("zeta_em: pole at s = 1");
  if (s.real() >= -2.0)
    return ensure_finite(hurwitz_em(s, 1.0, em_terms(s.imag())), "zeta_em");
  // reflect into the half-plane where the sum converges comfortably
  const cplx s1 = 1.0 - s;
  return ensure_finite(
      specfun::chi(s) * hurwitz_em(s1, 1.0, em_terms(s1.imag())), "zeta_em");
}

} // namespace detail

// Reference zeta by Euler-Maclaurin; relative error <= 1e-10 for |t| <= 1e4.
inline cplx zeta_em(const cplx& s) {
  if (std::abs(s - cplx(1.0)) <= 0.1)
    throw NearPoleError("zeta_em: inside the excluded disk |s-1| <= 1/10");
  return detail::zeta_em_raw(s);
}

// Hardy-Littlewood approximate functional equation with the symmetric cut
// X0 = sqrt(t/2pi):
//   zeta(s) ~ sum_{n<=X0} n^{-s} + chi(s) sum_{n<=t/(2 pi X0)} n^{s-1}.
inline cplx zeta_afe(const cplx& s) {
  const double sigma = s.real();
  const double t = s.imag();
  if (sigma < 0.0 || sigma > 1.0 || t < 10.0)
    throw DomainError("zeta_afe: need 0 <= sigma <= 1 and t >= 10");
  if (std::abs(s - cplx(1.0)) < 0.1)
    throw NearPoleError("zeta_afe: too close to the pole");
  const double x0 = std::sqrt(t / (2.0 * zetaprod::pi));
  const std::size_t n1 = static_cast<std::size_t>(std::floor(x0));
  const std::size_t n2 =
      static_cast<std::size_t>(std::floor(t / (2.0 * zetaprod::pi * x0)));
  const cplx direct = pairwise_sum<cplx>(1, n1 + 1, [&](std::size_t n) {
    return std::exp(-s * std::log(static_cast<double>(n)));
  });
  const cplx reflected = pairwise_sum<cplx>(1, n2 + 1, [&](std::size_t n) {
    return std::exp((s - 1.0) * std::log(static_cast<double>(n)));
  });
  return ensure_finite(direct + specfun::chi(s) * reflected, "zeta_afe");
}

// Hardy's real signal Z(t) = Re e^{i theta(t)} zeta(1/2 + it);
// |Z(t)| = |zeta(1/2+it)| and the sign changes are the on-line zeros.
inline double hardy_z(double t) {
  const cplx w = std::polar(1.0, specfun::theta(t)) *
                 detail::zeta_em_raw(cplx(0.5, t));
  return ensure_finite(w.real(), "hardy_z");
}

// S(t) = (1/pi) arg zeta(1/2 + it), argument continued along
// 2 -> 2 + it -> 1/2 + it.  Exactly at a zero ordinate the limit from above
// is taken (t nudged up by 1e-9).  S(0) = 0 by convention.
inline double s_of_t(double t) {
  if (t < 0.0) throw DomainError("s_of_t: t must be >= 0");
  if (t == 0.0) return 0.0;
  if (std::abs(detail::zeta_em_raw(cplx(0.5, t))) < 1e-10) t += 1e-9;
  // On sigma = 2 we have |zeta - 1| <= zeta(2) - 1 < 1, so Re zeta > 0 along
  // the whole vertical leg and its contribution is the principal argument.
  const double arg_top = std::arg(detail::zeta_em_raw(cplx(2.0, t)));
  const double arg_line = continue_arg(
      [](const cplx& s) { return detail::zeta_em_raw(s); }, cplx(2.0, t),
      cplx(0.5, t), arg_top);
  return arg_line / zetaprod::pi;
}

struct ArgDiagnostic {
  double t = 0.0;
  double s_of_t = 0.0;
  long n_of_t = 0;
};

// Exact counting formula N(t) = theta(t)/pi + 1 + S(t); the right side must
// round to an integer, which is the number of zeros with 0 < gamma < t.
inline long n_of_t(double t) {
  if (t <= 0.0) return 0;
  const double v = specfun::theta(t) / zetaprod::pi + 1.0 + s_of_t(t);
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-6)
    throw IntegralityError("n_of_t: counting formula residual " +
                           std::to_string(std::abs(v - r)) + " at t = " +
                           std::to_string(t));
  return static_cast<long>(r);
}

inline ArgDiagnostic arg_diagnostic(double t) {
  ArgDiagnostic d;
  d.t = t;
  d.s_of_t = s_of_t(t);
  d.n_of_t = n_of_t(t);
  return d;
}

// Ordered positive ordinates of on-line zeros, with the refinement tolerance
// they were bisected to.  Persists as plain text: `# label tol`, then one
// ordinate per line.
struct ZeroCache {
  std::string label = "zeta";
  std::vector<double> ordinates;
  double tol = 1e-9;

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("ZeroCache::save: cannot open " + path);
    char buf[64];
    std::snprintf(buf, sizeof buf, "# %s %.6g\n", label.c_str(), tol);
    out << buf;
    for (double g : ordinates) {
      std::snprintf(buf, sizeof buf, "%.15g\n", g);
      out << buf;
    }
  }

  static ZeroCache load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("ZeroCache::load: cannot open " + path);
    std::string hash, label;
    double tol;
    if (!(in >> hash >> label >> tol) || hash != "#")
      throw CacheMismatchError("ZeroCache::load: bad header in " + path);
    ZeroCache cache;
    cache.label = label;
    cache.tol = tol;
    double g;
    while (in >> g) cache.ordinates.push_back(g);
    if (!std::is_sorted(cache.ordinates.begin(), cache.ordinates.end()))
      throw CacheMismatchError("ZeroCache::load: ordinates not ascending in " +
                               path);
    return cache;
  }
};

namespace detail {

inline double scan_step(double t) {
  return 0.2 / std::log(std::abs(t) / (2.0 * zetaprod::pi) + 2.0);
}

template <class F>
double bisect_sign_change(F&& f, double lo, double hi, double flo, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline void scan_range_for_zeros(double lo, double hi, double refine,
                                 double tol, std::vector<double>* out) {
  double t0 = lo;
  double z0 = hardy_z(t0);
  while (t0 < hi) {
    double t1 = std::min(t0 + scan_step(t0) / refine, hi);
    const double z1 = hardy_z(t1);
    if (z0 == 0.0) {
      out->push_back(t0);
    } else if (z1 != 0.0 && (z0 < 0.0) != (z1 < 0.0)) {
      out->push_back(
          bisect_sign_change([](double t) { return hardy_z(t); }, t0, t1, z0, tol));
    }
    t0 = t1;
    z0 = z1;
  }
}

} // namespace detail

// All sign-change zeros of Z(t) in [t_min, t_max], bisection-refined to tol.
// The count is validated against N(t_max) - N(t_min); on mismatch the grid is
// halved (up to 4 times) before giving up.  jobs > 1 partitions the range.
inline ZeroCache find_zeros(double t_min, double t_max, double tol = 1e-9,
                            int jobs = 1) {
  if (!(t_min >= 0.0 && t_min < t_max && t_max <= 1e6))
    throw DomainError("find_zeros: need 0 <= t_min < t_max <= 1e6");
  if (!(tol > 0.0)) throw DomainError("find_zeros: tol must be positive");
  const long target = n_of_t(t_max) - n_of_t(t_min);
  jobs = std::max(1, jobs);
  for (double refine = 1.0; refine <= 8.0; refine *= 2.0) {
    std::vector<std::vector<double>> parts(static_cast<std::size_t>(jobs));
    if (jobs == 1) {
      detail::scan_range_for_zeros(t_min, t_max, refine, tol, &parts[0]);
    } else {
      std::vector<std::thread> workers;
      const double width = (t_max - t_min) / jobs;
      for (int j = 0; j < jobs; ++j) {
        const double lo = t_min + j * width;
        const double hi = (j == jobs - 1) ? t_max : t_min + (j + 1) * width;
        workers.emplace_back(detail::scan_range_for_zeros, lo, hi, refine, tol,
                             &parts[static_cast<std::size_t>(j)]);
      }
      for (auto& w : workers) w.join();
    }
    ZeroCache cache;
    cache.tol = tol;
    for (auto& p : parts)
      cache.ordinates.insert(cache.ordinates.end(), p.begin(), p.end());
    std::sort(cache.ordinates.begin(), cache.ordinates.end());
    if (static_cast<long>(cache.ordinates.size()) == target) return cache;
  }
  throw MissedZeroError("find_zeros: count still disagrees with N(t) after grid refinement");
}

// Reference L(s, chi) via L = q^{-s} sum_a chi(a) zeta(s, a/q).
inline cplx l_reference(const cplx& s, const arith::Character& chi) {
  bool principal = true;
  for (long m : chi.exponent_num)
    if (m > 0) { principal = false; break; }
  const bool at_pole = std::abs(s - cplx(1.0)) < 1e-12;
  if (principal && std::abs(s - cplx(1.0)) <= 0.1)
    throw NearPoleError("l_reference: principal character near s = 1");
  const int N = detail::em_terms(s.imag());
  cplx sum = 0.0;
  for (long a = 1; a <= chi.q; ++a) {
    const cplx v = chi(a);
    if (v == cplx(0.0)) continue;
    sum += v * detail::hurwitz_em(s, static_cast<double>(a) / chi.q, N, 15,
                                  at_pole);
  }
  return ensure_finite(
      std::exp(-s * std::log(static_cast<double>(chi.q))) * sum, "l_reference");
}

} // namespace zetaprod::refzeta
