// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned here and nowhere else.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <zetaprod/zetaprod.hpp>

using namespace zetaprod;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail,
            double seconds) {
  std::printf("[%s] %d %s: %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, name,
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

void run(int id, const char* name,
         const std::function<std::pair<bool, std::string>()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    auto [p, d] = body();
    pass = p;
    detail = d;
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(id, name, pass, detail, seconds);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double ratio_at(double t, const arith::WeightTable& table) {
  const cplx s(0.5, t);
  return std::abs(zetax::zeta_x_star(s, table)) /
         (2.0 * std::abs(refzeta::detail::zeta_em_raw(s)));
}

} // namespace

int main() {
  // shared ordinate cache reaching past the 1000th zero
  refzeta::ZeroCache cache;
  {
    const auto start = std::chrono::steady_clock::now();
    cache = refzeta::find_zeros(0.0, 1425.0, 1e-9);
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("# zero cache: %zu ordinates on [0, 1425] (%.1fs)\n",
                cache.ordinates.size(), sec);
  }

  run(1, "functional equation residual", [&] {
    double worst = 0.0;
    for (double sigma = -1.0; sigma <= 2.0001; sigma += 0.25)
      for (double t = 5.0; t <= 100.0001; t += 0.5) {
        const cplx s(sigma, t);
        const cplx z = refzeta::zeta_em(s);
        const cplx rhs =
            specfun::chi(s) * std::conj(refzeta::zeta_em(std::conj(1.0 - s)));
        worst = std::max(worst, std::abs(z - rhs) / (1.0 + std::abs(z)));
      }
    return std::make_pair(worst < 1e-8, fmt("max residual %.3e (< 1e-8)", worst));
  });

  run(2, "zero count on [0, 100]", [&] {
    const auto zeros = refzeta::find_zeros(0.0, 100.0, 1e-9);
    const long n = refzeta::n_of_t(100.0);
    const double raw =
        specfun::theta(100.0) / pi + 1.0 + refzeta::s_of_t(100.0);
    const double residual = std::abs(raw - std::round(raw));
    const bool pass =
        zeros.ordinates.size() == 29 && n == 29 && residual < 1e-6;
    return std::make_pair(
        pass, fmt("found %zu zeros, n_of_t(100) = %ld, integrality %.2e",
                  zeros.ordinates.size(), n, residual));
  });

  run(3, "hybrid factorization residual", [&] {
    const auto table = arith::build_weight_table(10.0);
    const cplx s(0.75, 50.0);
    const cplx z = refzeta::zeta_em(s);
    const cplx p = eulerprod::p_x(s, table).value;
    auto residual = [&](std::size_t M) {
      return std::abs(z / (p * zetax::z_x_factor(s, cache, 10.0, M).value) -
                      1.0);
    };
    const double r100 = residual(100);
    const double r1000 = residual(1000);
    const bool pass = r1000 < 0.05 && r1000 < r100;
    return std::make_pair(
        pass, fmt("residual M=1000: %.3e (< 0.05), M=100: %.3e", r1000, r100));
  });

  run(4, "model zeros and moduli near t = 114 and t = 2000", [&] {
    const auto high = refzeta::find_zeros(1993.0, 2007.0, 1e-9);
    std::vector<double> low;
    for (double g : cache.ordinates)
      if (g >= 107.0 && g <= 121.0) low.push_back(g);

    const auto t10 = arith::build_weight_table(10.0);
    const auto t300 = arith::build_weight_table(300.0);

    bool pass = true;
    double worst10 = 0.0, worst300 = 0.0;
    auto check_window = [&](double lo, double hi,
                            const std::vector<double>& zeta_zeros) {
      const auto r10 = zetax::scan_zeros(lo, hi, t10, 1e-9);
      const auto r300 = zetax::scan_zeros(lo, hi, t300, 1e-9);
      for (double g : zeta_zeros) {
        if (g < lo || g > hi) continue;
        double d10 = HUGE_VAL, d300 = HUGE_VAL;
        for (const auto& z : r10.zeros)
          d10 = std::min(d10, std::abs(z.gamma_x - g));
        for (const auto& z : r300.zeros)
          d300 = std::min(d300, std::abs(z.gamma_x - g));
        worst10 = std::max(worst10, d10);
        worst300 = std::max(worst300, d300);
      }
    };
    check_window(108.0, 120.0, low);
    check_window(1994.0, 2006.0, high.ordinates);
    pass = pass && worst10 < 0.5 && worst300 < 0.1;

    // midpoint modulus ratios, both windows pooled
    std::vector<double> mids;
    for (std::size_t i = 0; i + 1 < low.size(); ++i)
      if (low[i] >= 108.0 && low[i + 1] <= 120.0)
        mids.push_back(0.5 * (low[i] + low[i + 1]));
    for (std::size_t i = 0; i + 1 < high.ordinates.size(); ++i)
      if (high.ordinates[i] >= 1994.0 && high.ordinates[i + 1] <= 2006.0)
        mids.push_back(0.5 * (high.ordinates[i] + high.ordinates[i + 1]));
    std::vector<double> ratio10, ratio300;
    for (double t : mids) {
      ratio10.push_back(ratio_at(t, t10));
      ratio300.push_back(ratio_at(t, t300));
    }
    const double med10 = median(ratio10);
    const double med300 = median(ratio300);
    pass = pass && med10 > 0.5 && med10 < 2.0 && med300 > 0.8 && med300 < 1.25;
    return std::make_pair(
        pass, fmt("max ordinate gap X=10: %.3f (< 0.5), X=300: %.4f (< 0.1); "
                  "median ratio X=10: %.3f, X=300: %.3f",
                  worst10, worst300, med10, med300));
  });

  run(5, "interval modulus convergence", [&] {
    const double g1 = cache.ordinates[0], g2 = cache.ordinates[1];
    const double delta = g2 - g1;
    const double lo = g1 + 0.2 * delta, hi = g2 - 0.2 * delta;
    std::vector<double> deviations;
    for (double X : {100.0, 1000.0, 10000.0}) {
      const auto table = arith::build_weight_table(X);
      double dev = 0.0;
      for (int i = 0; i <= 64; ++i) {
        const double t = lo + (hi - lo) * i / 64.0;
        dev = std::max(dev, std::abs(ratio_at(t, table) - 1.0));
      }
      deviations.push_back(dev);
    }
    const bool pass =
        deviations[1] < deviations[0] && deviations[2] < deviations[1];
    return std::make_pair(pass,
                          fmt("max deviation X=100: %.4f, X=1000: %.4f, "
                              "X=10000: %.4f (strictly decreasing)",
                              deviations[0], deviations[1], deviations[2]));
  });

  run(6, "simplicity and count formula on [C_0, 1000]", [&] {
    const auto table = arith::build_weight_table(10.0);
    const auto scan = zetax::scan_zeros(6.3, 1000.0, table, 1e-9);
    bool all_first = true;
    double min_fprime = HUGE_VAL;
    for (const auto& z : scan.zeros) {
      if (z.kind != zetax::ZeroKind::first) all_first = false;
      min_fprime = std::min(min_fprime, z.fprime);
    }
    const double count = static_cast<double>(scan.zeros.size());
    const long n1000 = refzeta::n_of_t(1000.0);
    const bool pass = all_first && min_fprime > 0.0 &&
                      std::abs(count - scan.count_formula) <= 2.0 &&
                      std::abs(count - static_cast<double>(n1000)) <= 10.0;
    return std::make_pair(
        pass, fmt("%zu zeros, all first kind %s, min F_X' %.2f, formula %.2f, "
                  "N(1000) = %ld",
                  scan.zeros.size(), all_first ? "yes" : "no", min_fprime,
                  scan.count_formula, n1000));
  });

  run(7, "chi modulus ordering off the half line", [&] {
    double worst_right = 0.0, worst_left = HUGE_VAL;
    for (double t = 6.3; t <= 100.0001; t += 0.1) {
      for (double sigma : {0.6, 0.75, 0.9})
        worst_right = std::max(worst_right, std::abs(specfun::chi(cplx(sigma, t))));
      for (double sigma : {0.1, 0.25, 0.4})
        worst_left = std::min(worst_left, std::abs(specfun::chi(cplx(sigma, t))));
    }
    const bool pass = worst_right < 1.0 && worst_left > 1.0;
    return std::make_pair(
        pass, fmt("max |chi| right of line %.6f (< 1), min left %.6f (> 1)",
                  worst_right, worst_left));
  });

  run(8, "partial-sum residual scaling", [&] {
    const cplx s(0.75, 500.0);
    const cplx z = refzeta::zeta_em(s);
    double lx[4], lr[4];
    const double xs[4] = {10.0, 100.0, 1000.0, 10000.0};
    for (int i = 0; i < 4; ++i) {
      const std::size_t X = static_cast<std::size_t>(xs[i]);
      const cplx part = pairwise_sum<cplx>(1, X + 1, [&](std::size_t n) {
        return std::exp(-s * std::log(static_cast<double>(n)));
      });
      lx[i] = std::log(xs[i]);
      lr[i] = std::log(std::abs(z - part));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < 4; ++i) {
      sx += lx[i]; sy += lr[i]; sxx += lx[i] * lx[i]; sxy += lx[i] * lr[i];
    }
    const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
    const bool pass = slope > -0.5 && slope < 0.0;
    return std::make_pair(pass,
                          fmt("slope %.3f (within 0.25 of -0.25)", slope));
  });

  run(9, "Dirichlet reduction and combined count", [&] {
    const auto table = arith::build_weight_table(10.0);
    const auto chars1 = arith::characters_mod(1);
    bool bit_identical = true;
    for (int k = 0; k < 100; ++k) {
      const cplx s(0.5, 10.0 + 0.5 * k);
      const cplx a = lcombo::l_x(s, chars1[0], table);
      const cplx b = zetax::zeta_x(s, table);
      if (a.real() != b.real() || a.imag() != b.imag()) bit_identical = false;
    }

    const auto chars5 = arith::characters_mod(5);
    std::size_t i1 = 0, i2 = 0;
    for (std::size_t i = 0; i < chars5.size(); ++i) {
      if (std::abs(chars5[i](2) - cplx(0, 1)) < 1e-12) i1 = i;
      if (std::abs(chars5[i](2) - cplx(0, -1)) < 1e-12) i2 = i;
    }
    const auto spec =
        lcombo::ComboSpec::make(5, {{1.0, chars5[i1]}, {1.0, chars5[i2]}});
    const auto result = lcombo::combo_zero_count(500.0, spec, table);
    const bool count_ok =
        static_cast<double>(result.count) >= result.lower_bound - 5.0;
    const bool pass = bit_identical && count_ok;
    return std::make_pair(
        pass, fmt("q=1 grid bit-identical %s; q=5 count %ld >= %.1f - 5 "
                  "(case-1 candidates: %zu)",
                  bit_identical ? "yes" : "no", result.count,
                  result.lower_bound, result.case1_candidates.size()));
  });

  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
