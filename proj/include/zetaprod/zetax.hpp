#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "common.hpp"
#include "errors.hpp"
#include "eulerprod.hpp"
#include "refzeta.hpp"
#include "specfun.hpp"

namespace zetaprod::zetax {

using zetaprod::cplx;
using arith::WeightTable;
using refzeta::ZeroCache;

// Model function zeta_X(s) = P_X(s) + chi(s) conj(P_X(s)); the conjugate is
// P_X(s-bar) since the product has real coefficients.
inline cplx zeta_x(const cplx& s, const WeightTable& table) {
  const cplx p = eulerprod::p_x(s, table).value;
  return ensure_finite(p + specfun::chi(s) * std::conj(p), "zeta_x");
}

// Pole-corrected model zeta_X*(s) = P_X*(s) + chi(s) conj(P_X*(s)).
inline cplx zeta_x_star(const cplx& s, const WeightTable& table) {
  const cplx p = eulerprod::p_x_star(s, table).value;
  return ensure_finite(p + specfun::chi(s) * std::conj(p), "zeta_x_star");
}

// Critical-line phase F_X(t) = 2 theta(t) - 2 f_X(t), already continuous in t
// (no unwinding needed).  On the line zeta_X = P_X (1 + e^{-i F_X}), so the
// on-line zeros are exactly the solutions of F_X = pi (mod 2 pi).
inline double big_f_x(double t, const WeightTable& table) {
  return 2.0 * specfun::theta(t) - 2.0 * eulerprod::f_x(t, table);
}

// Phase of the pole-corrected model:
// F_X*(t) = F_X(t) - 2 Im F_2((-1/2 + it) log X).
inline double f_x_star_phase(double t, const WeightTable& table) {
  if (!(t > 0.0)) throw DomainError("f_x_star_phase: t must be > 0");
  return big_f_x(t, table) -
         2.0 * std::imag(specfun::f2(cplx(-0.5, t) * std::log(table.X)));
}

// F_X'(t) = 2 theta'(t) - 2 f_X'(t); theta' by central difference (theta is
// smooth and slowly varying, so the O(h^2) error is ~1e-9 at h = 1e-4).
inline double big_f_x_prime(double t, const WeightTable& table) {
  const double h = 1e-4;
  const double theta_prime =
      (specfun::theta(t + h) - specfun::theta(t - h)) / (2.0 * h);
  return 2.0 * theta_prime - 2.0 * eulerprod::f_x_prime(t, table);
}

enum class ZeroKind { first, second };

struct ZeroRecord {
  double gamma_x = 0.0;
  ZeroKind kind = ZeroKind::first;
  double fprime = 0.0;      // F_X'(gamma_x)
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  long level = 0;           // F_X(gamma_x) = (2*level + 1) pi
  bool multiple_flag = false;
};

struct ScanReport {
  double X = 0.0;
  double t_min = 0.0, t_max = 0.0;
  std::vector<ZeroRecord> zeros;
  double count_formula = 0.0; // right side of the counting formula at t_max
};

// Right side of N_X(t) = t/2pi log(t/2pi) - t/2pi - f_X(t)/pi.
inline double n_x_formula(double t, const WeightTable& table) {
  const double u = t / (2.0 * zetaprod::pi);
  return u * std::log(u) - u - eulerprod::f_x(t, table) / zetaprod::pi;
}

namespace detail {

inline double phase_step(double t) {
  return 0.5 / std::log(t / (2.0 * zetaprod::pi) + 2.0);
}

} // namespace detail

// Find all on-line zeros of zeta_X in [t_min, t_max] as crossings of odd
// multiples of pi by F_X.  Crossings that proceed to the adjacent odd
// multiple are zeros of the first kind; a pair of consecutive crossings at
// the same multiple (F_X returning, with an F_X' sign change between) are of
// the second kind.  |F_X'| < 1e-6 at a zero raises the multiplicity flag.
inline ScanReport scan_zeros(double t_min, double t_max,
                             const WeightTable& table, double tol = 1e-9,
                             double c0 = zetaprod::default_c0) {
  if (!(t_min >= c0)) throw DomainError("scan_zeros: t_min must be >= C_0");
  if (!(t_max >= t_min)) throw DomainError("scan_zeros: empty range");
  ScanReport report;
  report.X = table.X;
  report.t_min = t_min;
  report.t_max = t_max;
  report.count_formula = n_x_formula(t_max, table);
  if (t_max == t_min) return report;

  const auto level_of = [&](double f) { return (f - zetaprod::pi) / (2.0 * zetaprod::pi); };

  double t0 = t_min;
  double f0 = big_f_x(t0, table);
  while (t0 < t_max) {
    double t1 = std::min(t0 + detail::phase_step(t0), t_max);
    double f1 = big_f_x(t1, table);
    int halvings = 0;
    while (std::abs(f1 - f0) >= zetaprod::pi) {
      if (++halvings > 32)
        throw GridTooCoarseError("scan_zeros: phase jump >= pi at minimal step");
      t1 = 0.5 * (t0 + t1);
      f1 = big_f_x(t1, table);
    }
    const double l0 = level_of(f0), l1 = level_of(f1);
    // |f1 - f0| < pi means at most one integer level is crossed
    const double lmin = std::min(l0, l1), lmax = std::max(l0, l1);
    const long m = static_cast<long>(std::floor(lmax));
    if (static_cast<double>(m) > lmin && static_cast<double>(m) <= lmax) {
      double lo = t0, hi = t1;
      double glo = l0 - static_cast<double>(m);
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double gm = level_of(big_f_x(mid, table)) - static_cast<double>(m);
        if (gm == 0.0) { lo = hi = mid; break; }
        if ((glo < 0.0) == (gm < 0.0)) { lo = mid; glo = gm; }
        else hi = mid;
      }
      ZeroRecord z;
      z.gamma_x = 0.5 * (lo + hi);
      z.bracket_lo = t0;
      z.bracket_hi = t1;
      z.level = m;
      z.fprime = big_f_x_prime(z.gamma_x, table);
      z.multiple_flag = std::abs(z.fprime) < 1e-6;
      report.zeros.push_back(z);
    }
    t0 = t1;
    f0 = f1;
  }

  // kind classification: consecutive crossings at the same level pair up as
  // second-kind zeros, confirmed by an F_X' sign change between them
  for (std::size_t i = 0; i + 1 < report.zeros.size(); ++i) {
    if (report.zeros[i].level == report.zeros[i + 1].level) {
      bool sign_change =
          (report.zeros[i].fprime < 0.0) != (report.zeros[i + 1].fprime < 0.0);
      if (!sign_change) {
        // sample the interior for the turning point
        const double a = report.zeros[i].gamma_x;
        const double b = report.zeros[i + 1].gamma_x;
        const double fa = big_f_x_prime(a, table);
        for (int k = 1; k < 16 && !sign_change; ++k) {
          const double u = a + (b - a) * k / 16.0;
          sign_change = (fa < 0.0) != (big_f_x_prime(u, table) < 0.0);
        }
      }
      if (sign_change) {
        report.zeros[i].kind = ZeroKind::second;
        report.zeros[i + 1].kind = ZeroKind::second;
      }
    }
  }
  return report;
}

// Zero count on [C_0, t] together with the counting-formula value at t.
struct CountResult {
  long count = 0;
  double formula = 0.0;
};

inline CountResult n_x(double t, const WeightTable& table,
                       double c0 = zetaprod::default_c0) {
  if (!(t >= c0)) throw DomainError("n_x: t must be >= C_0");
  const ScanReport report = scan_zeros(c0, t, table);
  return {static_cast<long>(report.zeros.size()), report.count_formula};
}

inline void export_scan_report_csv(const ScanReport& report,
                                   const std::string& path,
                                   const std::string& comment = "") {
  std::ofstream out(path);
  if (!out) throw ConfigError("export_scan_report_csv: cannot open " + path);
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "gamma_x,kind,fprime,bracket_lo,bracket_hi\n";
  char buf[160];
  for (const auto& z : report.zeros) {
    std::snprintf(buf, sizeof buf, "%.15g,%s,%.15g,%.15g,%.15g\n", z.gamma_x,
                  z.kind == ZeroKind::first ? "first" : "second", z.fprime,
                  z.bracket_lo, z.bracket_hi);
    out << buf;
  }
}

// Zero-side factor of the hybrid formula zeta = P_X Z_X, truncated to the
// first M cached ordinates (each used as the pair 1/2 +- i gamma):
//   Z_X(s) ~ exp( sum_rho F_2((s - rho) log X) - F_2((s - 1) log X) ).
// tail_bound estimates the neglected |gamma| > gamma_M contribution from
// |F_2(z)| <~ 2 e^{-Re z} / |z|^2 and the zero-density log(u/2pi)/2pi.
struct ZxEvaluation {
  cplx value;
  double tail_bound = 0.0;
};

inline ZxEvaluation z_x_factor(const cplx& s, const ZeroCache& zeros, double X,
                               std::size_t M) {
  if (M == 0 || M > zeros.ordinates.size())
    throw DomainError("z_x_factor: M must be in [1, cache size]");
  const double lx = std::log(X);
  cplx sum = pairwise_sum<cplx>(0, M, [&](std::size_t i) {
    const double g = zeros.ordinates[i];
    const cplx up = s - cplx(0.5, g);
    const cplx dn = s - cplx(0.5, -g);
    if (std::abs(up) < 1e-12 || std::abs(dn) < 1e-12)
      throw ConventionError("z_x_factor: evaluation at a zero; nudge t");
    return specfun::f2(up * lx) + specfun::f2(dn * lx);
  });
  sum -= specfun::f2((s - 1.0) * lx);

  ZxEvaluation ze;
  ze.value = ensure_finite(std::exp(sum), "z_x_factor");
  const double gamma_m = zeros.ordinates[M - 1];
  const double delta = gamma_m - std::abs(s.imag());
  if (delta <= 0.0) {
    ze.tail_bound = HUGE_VAL;
  } else {
    const double amp = std::exp(-(s.real() - 0.5) * lx);
    ze.tail_bound = 2.0 * amp / (lx * lx) *
                    (std::log(gamma_m / (2.0 * zetaprod::pi)) + 1.0) /
                    (zetaprod::pi * delta);
  }
  return ze;
}

struct PhasePoint {
  double t = 0.0;
  double F = 0.0;      // F_X(t)
  double Fstar = 0.0;  // F_X*(t)
};

inline PhasePoint phase_point(double t, const WeightTable& table) {
  return {t, big_f_x(t, table), f_x_star_phase(t, table)};
}

// Zero-free interval diagnostic between two consecutive cached ordinates:
// on I = [gamma + eps*Delta, gamma' - eps*Delta] the phase F_X* stays away
// from odd multiples of pi, with a margin that grows with X.
struct IntervalMargin {
  double X = 0.0;
  double margin = 0.0; // min over I of distance from F_X* to odd multiples of pi
  bool admitted = true; // X >= exp(1/(eps*Delta))
};

struct IntervalReport {
  double gamma_lo = 0.0, gamma_hi = 0.0, eps = 0.0;
  std::vector<IntervalMargin> margins;
  bool margins_increasing = true;
};

inline IntervalReport zero_free_interval_check(const ZeroCache& zeros,
                                               std::size_t pair_index,
                                               double eps,
                                               const std::vector<double>& x_list,
                                               std::size_t grid_points = 64) {
  if (pair_index + 1 >= zeros.ordinates.size())
    throw DomainError("zero_free_interval_check: pair must be consecutive cached ordinates");
  if (!(eps > 0.0 && eps < 0.25))
    throw DomainError("zero_free_interval_check: eps must be in (0, 1/4)");
  IntervalReport report;
  report.gamma_lo = zeros.ordinates[pair_index];
  report.gamma_hi = zeros.ordinates[pair_index + 1];
  report.eps = eps;
  const double delta = report.gamma_hi - report.gamma_lo;
  const double lo = report.gamma_lo + eps * delta;
  const double hi = report.gamma_hi - eps * delta;
  const double x_min = std::exp(1.0 / (eps * delta));
  double prev = -1.0;
  for (double X : x_list) {
    IntervalMargin m;
    m.X = X;
    m.admitted = X >= x_min;
    if (!m.admitted) {
      report.margins.push_back(m);
      continue;
    }
    const WeightTable table = arith::build_weight_table(X);
    double margin = HUGE_VAL;
    for (std::size_t i = 0; i <= grid_points; ++i) {
      const double t = lo + (hi - lo) * static_cast<double>(i) / grid_points;
      const double f = f_x_star_phase(t, table);
      margin = std::min(margin,
                        std::abs(std::remainder(f - zetaprod::pi, 2.0 * zetaprod::pi)));
    }
    m.margin = margin;
    if (prev >= 0.0 && margin <= prev) report.margins_increasing = false;
    prev = margin;
    report.margins.push_back(m);
  }
  return report;
}

} // namespace zetaprod::zetax
