#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "arith.hpp"
#include "common.hpp"
#include "errors.hpp"
#include "eulerprod.hpp"
#include "specfun.hpp"
#include "zetax.hpp"

namespace zetaprod::lcombo {

using zetaprod::cplx;
using arith::Character;
using arith::WeightTable;

struct ComboTerm {
  double b = 0.0; // nonzero real coefficient
  Character chi;  // primitive, shared modulus and parity
};

// Linear combination sum_j b_j e^{i alpha_j} L_X(s, chi_j).  All characters
// must share the modulus and the parity bit so the functional-equation factor
// Psi is common; the n = 1 coefficient B(1) = sum b_j e^{i alpha_j} must be
// nonzero (specs with B(1) = 0 are rejected rather than guessed at).
struct ComboSpec {
  long q = 1;
  int parity = 0;
  std::vector<ComboTerm> terms;
  double B = 0.0;   // sum |b_j|
  cplx B1 = 0.0;    // sum b_j e^{i alpha_j}
  double c1 = 0.0;  // |B(1)| / B
  double omega = 0.0; // arg B(1)

  static ComboSpec make(long q, const std::vector<std::pair<double, Character>>& terms) {
    if (terms.empty()) throw ConfigError("ComboSpec: no terms");
    ComboSpec spec;
    spec.q = q;
    spec.parity = terms.front().second.parity;
    for (const auto& [b, chi] : terms) {
      if (b == 0.0) throw ConfigError("ComboSpec: zero coefficient");
      if (chi.q != q) throw ConfigError("ComboSpec: mixed moduli");
      if (!chi.primitive)
        throw DomainError("ComboSpec: characters must be primitive");
      if (chi.parity != spec.parity)
        throw ConfigError("ComboSpec: characters must share parity");
      spec.terms.push_back({b, chi});
      spec.B += std::abs(b);
      spec.B1 += b * std::polar(1.0, chi.alpha);
    }
    if (std::abs(spec.B1) < 1e-12)
      throw DomainError(
          "ComboSpec: B(1) = 0; the zero-counting argument requires B(1) != 0");
    spec.c1 = std::abs(spec.B1) / spec.B;
    spec.omega = std::arg(spec.B1);
    return spec;
  }
};

// Model L-function
//   L_X(s, chi) = P_X(s, chi) + e^{-2 i alpha} Psi(s) conj(P_X(s, chi)),
// using P_X(s-bar, chi-bar) = conj(P_X(s, chi)).  For q = 1 this is
// zeta_X(s) exactly (same code path, same summation order).
inline cplx l_x(const cplx& s, const Character& chi, const WeightTable& table) {
  if (!chi.primitive) throw DomainError("l_x: character must be primitive");
  const cplx p = eulerprod::p_x_chi(s, chi, table).value;
  const cplx psi = specfun::psi_factor(s, chi.q, chi.parity);
  const cplx rot =
      chi.alpha == 0.0 ? cplx(1.0) : std::polar(1.0, -2.0 * chi.alpha);
  return ensure_finite(p + rot * psi * std::conj(p), "l_x");
}

// Combined product script-P_X(s) = sum_j b_j e^{i alpha_j} P_X(s, chi_j).
inline cplx combined_product(const cplx& s, const ComboSpec& spec,
                             const WeightTable& table) {
  cplx sum = 0.0;
  for (const auto& term : spec.terms) {
    const cplx rot = term.chi.alpha == 0.0
                         ? cplx(1.0)
                         : std::polar(1.0, term.chi.alpha);
    sum += term.b * rot * eulerprod::p_x_chi(s, term.chi, table).value;
  }
  return sum;
}

// script-L_X(s) = sum_j b_j e^{i alpha_j} L_X(s, chi_j)
//               = script-P_X(s) + Psi(s) conj(script-P_X(s-bar))-form.
inline cplx combo(const cplx& s, const ComboSpec& spec,
                  const WeightTable& table) {
  cplx sum = 0.0;
  for (const auto& term : spec.terms) {
    const cplx rot = term.chi.alpha == 0.0
                         ? cplx(1.0)
                         : std::polar(1.0, term.chi.alpha);
    sum += term.b * rot * l_x(s, term.chi, table);
  }
  return ensure_finite(sum, "combo");
}

// arg Psi(1/2 + it), continuous in t:
// t log(pi/q) - 2 Im log Gamma((2a+1)/4 + it/2).
inline double arg_psi_line(double t, long q, int parity) {
  return t * std::log(zetaprod::pi / static_cast<double>(q)) -
         2.0 * std::imag(specfun::log_gamma(
                   cplx((2.0 * parity + 1.0) / 4.0, t / 2.0)));
}

// Critical-line phase of the combination,
//   script-F_X(t) = arg Psi(1/2+it) - 2 arg script-P_X(1/2+it),
// with arg script-P_X branch-tracked from sigma_0 = 2 + 1/c_1, where
// Re(e^{-i omega} script-P_X) > 0 and the principal argument is the true one.
// On-line zeros through this phase (case 2) are the crossings of odd
// multiples of pi; points where script-P_X itself nearly vanishes (case 1)
// raise ProductZeroError and are flagged separately by the counting scan.
inline double combo_phase(double t, const ComboSpec& spec,
                          const WeightTable& table) {
  const cplx line = combined_product(cplx(0.5, t), spec, table);
  if (std::abs(line) < 1e-12)
    throw ProductZeroError("combo_phase: script-P_X vanishes at t = " +
                           std::to_string(t));
  const double sigma0 = 2.0 + 1.0 / spec.c1;
  const cplx top = combined_product(cplx(sigma0, t), spec, table);
  const cplx rotated = std::polar(1.0, -spec.omega) * top;
  if (rotated.real() <= 0.0)
    throw NumericError("combo_phase: positivity anchor failed at sigma_0");
  const double arg_top = spec.omega + std::arg(rotated);
  const double arg_line = continue_arg(
      [&](const cplx& s) { return combined_product(s, spec, table); },
      cplx(sigma0, t), cplx(0.5, t), arg_top);
  return arg_psi_line(t, spec.q, spec.parity) - 2.0 * arg_line;
}

struct ComboCount {
  long count = 0;            // verified case-(2) crossings
  double lower_bound = 0.0;  // t/2pi log(tq/2pi) - t/2pi
  std::vector<double> case1_candidates; // t where |script-P_X| dips below threshold
};

// Count case-(2) zeros of the combination on [C_0, t_max].
inline ComboCount combo_zero_count(double t_max, const ComboSpec& spec,
                                   const WeightTable& table,
                                   double tol = 1e-9,
                                   double c0 = zetaprod::default_c0,
                                   double case1_threshold = 1e-6) {
  if (!(t_max >= c0)) throw DomainError("combo_zero_count: t_max must be >= C_0");
  ComboCount result;
  const double u = t_max / (2.0 * zetaprod::pi);
  result.lower_bound = u * std::log(u * spec.q) - u;

  // branch_offset compensates 2 pi k slips of arg script-P: the horizontal
  // continuation path from sigma_0 can wind around an off-line zero of
  // script-P as t passes its height, shifting the computed phase by an exact
  // multiple of 2 pi even though the on-line phase is continuous there
  double branch_offset = 0.0;
  const auto phase_at = [&](double t) {
    return combo_phase(t, spec, table) + branch_offset;
  };
  const auto level_of = [&](double f) {
    return (f - zetaprod::pi) / (2.0 * zetaprod::pi);
  };
  const double floor_step = std::max(16.0 * tol, 1e-9);

  double t0 = c0;
  double f0;
  for (;;) {
    try { f0 = phase_at(t0); break; }
    catch (const ProductZeroError&) {
      result.case1_candidates.push_back(t0);
      t0 += 16.0 * tol;
    }
  }
  while (t0 < t_max) {
    const double step =
        0.25 / std::log(t0 * spec.q / (2.0 * zetaprod::pi) + 2.0);
    double t1 = std::min(t0 + step, t_max);
    double f1;
    try {
      f1 = phase_at(t1);
    } catch (const ProductZeroError&) {
      result.case1_candidates.push_back(t1);
      t0 = t1 + 16.0 * tol;
      if (t0 >= t_max) break;
      f0 = phase_at(t0);
      continue;
    }
    bool restart = false;
    while (std::abs(f1 - f0) >= zetaprod::pi) {
      if (t1 - t0 <= floor_step) {
        // persistent jump across a vanishing interval: either a branch slip
        // (an exact multiple of 2 pi) or a genuine sign flip of script-P on
        // the line (an odd multiple of pi, case 1)
        const double k =
            std::round((f1 - f0) / (2.0 * zetaprod::pi));
        if (k != 0.0 &&
            std::abs(f1 - f0 - 2.0 * zetaprod::pi * k) < 0.9 * zetaprod::pi) {
          branch_offset -= 2.0 * zetaprod::pi * k;
          f1 -= 2.0 * zetaprod::pi * k;
        } else {
          result.case1_candidates.push_back(0.5 * (t0 + t1));
          restart = true;
        }
        break;
      }
      t1 = 0.5 * (t0 + t1);
      f1 = phase_at(t1);
    }
    if (restart) {
      t0 = t1;
      f0 = f1;
      continue;
    }
    if (std::abs(combined_product(cplx(0.5, 0.5 * (t0 + t1)), spec, table)) <
        case1_threshold)
      result.case1_candidates.push_back(0.5 * (t0 + t1));
    const double l0 = level_of(f0), l1 = level_of(f1);
    const long m = static_cast<long>(std::floor(std::max(l0, l1)));
    if (static_cast<double>(m) > std::min(l0, l1) &&
        static_cast<double>(m) <= std::max(l0, l1))
      ++result.count;
    t0 = t1;
    f0 = f1;
  }
  return result;
}

} // namespace zetaprod::lcombo
