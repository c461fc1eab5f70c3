#pragma once

#include <cmath>
#include <complex>

#include "arith.hpp"
#include "common.hpp"
#include "errors.hpp"
#include "specfun.hpp"

namespace zetaprod::eulerprod {

using zetaprod::cplx;
using arith::Character;
using arith::WeightTable;

// Value and canonical logarithm of a finite product evaluation.  log_value is
// computed directly from the defining sum, never from the value, so the
// branch is unambiguous; the product itself never vanishes.
struct ProductEvaluation {
  cplx value;
  cplx log_value;
  double X = 0.0;
};

namespace detail {

// sum over the weight table of  Lambda_X(n) n^{-s} / log n,
// optionally twisted by a character.
inline cplx log_product_sum(const cplx& s, const WeightTable& table,
                            const Character* chi) {
  const auto& e = table.entries;
  const double sigma = s.real();
  const double t = s.imag();
  const bool on_line = sigma == 0.5;
  return pairwise_sum<cplx>(0, e.size(), [&](std::size_t i) {
    const double amp_base =
        on_line ? e[i].inv_sqrt_n : std::exp(-sigma * e[i].log_n);
    const cplx term =
        std::polar(e[i].w / e[i].log_n * amp_base, -t * e[i].log_n);
    if (chi == nullptr) return term;
    return term * (*chi)(e[i].n);
  });
}

} // namespace detail

// Weighted finite Euler product
//   P_X(s) = exp( sum_{n <= X^2} Lambda_X(n) n^{-s} / log n ).
inline ProductEvaluation p_x(const cplx& s, const WeightTable& table) {
  ProductEvaluation pe;
  pe.X = table.X;
  pe.log_value = ensure_finite(detail::log_product_sum(s, table, nullptr), "p_x");
  pe.value = std::exp(pe.log_value);
  return pe;
}

// Character twist P_X(s, chi) = exp( sum Lambda_X(n) chi(n) n^{-s} / log n ).
// For q = 1 every chi(n) is 1 and this reduces to p_x exactly.
inline ProductEvaluation p_x_chi(const cplx& s, const Character& chi,
                                 const WeightTable& table) {
  if (chi.q == 1) return p_x(s, table);
  ProductEvaluation pe;
  pe.X = table.X;
  pe.log_value =
      ensure_finite(detail::log_product_sum(s, table, &chi), "p_x_chi");
  pe.value = std::exp(pe.log_value);
  return pe;
}

// Phase of the product on the critical line:
//   f_X(t) = sum Lambda_X(n) sin(t log n) / (sqrt(n) log n) = -arg P_X(1/2+it).
inline double f_x(double t, const WeightTable& table) {
  const auto& e = table.entries;
  return pairwise_sum<double>(0, e.size(), [&](std::size_t i) {
    return e[i].w * std::sin(t * e[i].log_n) * e[i].inv_sqrt_n / e[i].log_n;
  });
}

// Termwise derivative f_X'(t) = sum Lambda_X(n) cos(t log n) / sqrt(n).
inline double f_x_prime(double t, const WeightTable& table) {
  const auto& e = table.entries;
  return pairwise_sum<double>(0, e.size(), [&](std::size_t i) {
    return e[i].w * std::cos(t * e[i].log_n) * e[i].inv_sqrt_n;
  });
}

// Triangle-inequality bound for |P_X| on the critical line:
// exp( sum Lambda_X(n) / (sqrt(n) log n) ).
inline double line_modulus_bound(const WeightTable& table) {
  const auto& e = table.entries;
  return std::exp(pairwise_sum<double>(0, e.size(), [&](std::size_t i) {
    return e[i].w * e[i].inv_sqrt_n / e[i].log_n;
  }));
}

// Pole-corrected product P_X*(s) = P_X(s) exp(-F_2((s-1) log X)); the extra
// factor absorbs the zeta pole so the hybrid congruences have no 1/(s-1)
// defect.  The correction is O(X / t^2 log^2 X), so P_X* -> P_X for large t.
inline ProductEvaluation p_x_star(const cplx& s, const WeightTable& table) {
  if (s == cplx(1.0)) throw DomainError("p_x_star: undefined at s = 1");
  ProductEvaluation pe = p_x(s, table);
  pe.log_value -= specfun::f2((s - 1.0) * std::log(table.X));
  pe.value = std::exp(pe.log_value);
  return pe;
}

} // namespace zetaprod::eulerprod
