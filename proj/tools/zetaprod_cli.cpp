// zetaprod command line: weight tables, grid evaluation, zero scans and
// caches, counting comparisons, figure datasets, and the modulus-ratio
// experiment.  All outputs are CSV with a leading config comment so runs are
// reproducible and diffable; plots are left to an emitted plotter script.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <zetaprod/zetaprod.hpp>

namespace fs = std::filesystem;
using namespace zetaprod;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string g_config_line; // echoed into every CSV

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file " + path);
  out << "# zetaprod v" << kVersion << " " << g_config_line << "\n";
  return out;
}

void emit_plot_script(const std::string& csv_path) {
  std::ofstream out(csv_path + ".plot.py");
  if (!out) throw ConfigError("cannot write plotter script for " + csv_path);
  out << "#!/usr/bin/env python3\n"
         "import csv, sys\n"
         "import matplotlib.pyplot as plt\n"
         "path = sys.argv[1] if len(sys.argv) > 1 else "
      << "\"" << csv_path << "\"\n"
      << "rows = [r for r in csv.reader(open(path)) if r and not r[0].startswith('#')]\n"
         "head, data = rows[0], rows[1:]\n"
         "xs = [float(r[0]) for r in data]\n"
         "for j in range(1, len(head)):\n"
         "    ys = [float(r[j]) for r in data]\n"
         "    style = '-' if j == 1 else ':'\n"
         "    plt.plot(xs, ys, style, label=head[j])\n"
         "plt.xlabel(head[0])\n"
         "plt.legend()\n"
         "plt.savefig(path + '.png', dpi=150)\n";
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  if (out.empty()) throw ConfigError("empty list: " + csv);
  return out;
}

struct GlobalOpts {
  int jobs = 1;
  std::string cache_dir;
  bool rebuild_cache = false;
  double tol = 1e-9;
  double c0 = default_c0;
  bool plot = false;
};

std::string cache_path(const GlobalOpts& g, const std::string& label,
                       double t0, double t1) {
  fs::create_directories(g.cache_dir);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s_%g_%g.zeros", label.c_str(), t0, t1);
  return (fs::path(g.cache_dir) / buf).string();
}

// read-if-present else build-and-save; label/tol mismatch is a hard error
refzeta::ZeroCache zeta_cache(const GlobalOpts& g, double t0, double t1) {
  const std::string path = cache_path(g, "zeta", t0, t1);
  if (!g.rebuild_cache && fs::exists(path)) {
    auto cache = refzeta::ZeroCache::load(path);
    if (cache.label != "zeta")
      throw CacheMismatchError("cache label mismatch in " + path);
    if (cache.tol != g.tol)
      throw CacheMismatchError("cache tol mismatch in " + path);
    return cache;
  }
  auto cache = refzeta::find_zeros(t0, t1, g.tol, g.jobs);
  cache.label = "zeta";
  cache.save(path);
  return cache;
}

// Hardy-style real signal for L(1/2+it, chi):
// e^{i(alpha - arg Psi/2)} L is real on the line.
double hardy_l(double t, const arith::Character& chi) {
  const double phi = lcombo::arg_psi_line(t, chi.q, chi.parity);
  const cplx w = std::polar(1.0, chi.alpha - phi / 2.0) *
                 refzeta::l_reference(cplx(0.5, t), chi);
  return w.real();
}

refzeta::ZeroCache find_l_zeros(const arith::Character& chi, double t0,
                                double t1, double tol) {
  refzeta::ZeroCache cache;
  cache.tol = tol;
  double step0 = 0.1;
  std::vector<double> prev;
  for (int pass = 0; pass < 3; ++pass) {
    cache.ordinates.clear();
    double ta = t0, za = hardy_l(ta, chi);
    while (ta < t1) {
      double tb = std::min(ta + step0, t1);
      double zb = hardy_l(tb, chi);
      if (za != 0.0 && zb != 0.0 && (za < 0.0) != (zb < 0.0)) {
        double lo = ta, hi = tb, fl = za;
        while (hi - lo > tol) {
          double mid = 0.5 * (lo + hi), fm = hardy_l(mid, chi);
          if ((fl < 0.0) == (fm < 0.0)) { lo = mid; fl = fm; } else hi = mid;
        }
        cache.ordinates.push_back(0.5 * (lo + hi));
      }
      ta = tb; za = zb;
    }
    if (pass > 0 && cache.ordinates.size() == prev.size()) break;
    prev = cache.ordinates;
    step0 /= 2.0;
  }
  return cache;
}

int run_table(const GlobalOpts&, double x, const std::string& out) {
  auto table = arith::build_weight_table(x);
  std::ofstream o = open_csv(out);
  o << "n,lambda_x\n";
  for (const auto& e : table.entries)
    o << e.n << "," << fmt(e.w) << "\n";
  std::printf("wrote %zu entries to %s\n", table.entries.size(), out.c_str());
  return 0;
}

int run_eval(const GlobalOpts& g, const std::string& func, double sigma,
             double t0, double t1, double step, double x, long q,
             long char_index, const std::string& out) {
  if (!(step > 0.0) || !(t1 >= t0)) throw ConfigError("eval: bad grid");
  arith::WeightTable table;
  const bool needs_table = func == "zetax" || func == "zetaxstar" ||
                           func == "px" || func == "pxstar" || func == "lx";
  if (needs_table) table = arith::build_weight_table(x);
  arith::Character chi;
  if (func == "lx" || func == "lref") {
    auto chars = arith::characters_mod(q);
    if (char_index < 0 || char_index >= static_cast<long>(chars.size()))
      throw ConfigError("eval: char index out of range");
    chi = chars[static_cast<std::size_t>(char_index)];
  }
  std::ofstream o = open_csv(out);
  o << "t,re,im,abs\n";
  for (double t = t0; t <= t1 + 1e-12; t += step) {
    const cplx s(sigma, t);
    cplx v;
    if (func == "zeta") v = refzeta::zeta_em(s);
    else if (func == "chi") v = specfun::chi(s);
    else if (func == "zetax") v = zetax::zeta_x(s, table);
    else if (func == "zetaxstar") v = zetax::zeta_x_star(s, table);
    else if (func == "px") v = eulerprod::p_x(s, table).value;
    else if (func == "pxstar") v = eulerprod::p_x_star(s, table).value;
    else if (func == "lx") v = lcombo::l_x(s, chi, table);
    else if (func == "lref") v = refzeta::l_reference(s, chi);
    else throw ConfigError("eval: unknown function " + func);
    o << fmt(t) << "," << fmt(v.real()) << "," << fmt(v.imag()) << ","
      << fmt(std::abs(v)) << "\n";
  }
  if (g.plot) emit_plot_script(out);
  return 0;
}

int run_zeros(const GlobalOpts& g, const std::string& func, double t0,
              double t1, double x, long q, long char_index,
              const std::string& spec_path, const std::string& out) {
  if (func == "zeta") {
    auto cache = zeta_cache(g, t0, t1);
    if (!out.empty()) cache.save(out);
    std::printf("%zu zeros in [%g, %g]\n", cache.ordinates.size(), t0, t1);
    return 0;
  }
  if (func == "lfunc") {
    auto chars = arith::characters_mod(q);
    if (char_index < 0 || char_index >= static_cast<long>(chars.size()))
      throw ConfigError("zeros: char index out of range");
    auto cache = find_l_zeros(chars[static_cast<std::size_t>(char_index)], t0, t1, g.tol);
    cache.label = "L_" + std::to_string(q) + "_" + std::to_string(char_index);
    if (out.empty()) throw ConfigError("zeros --func lfunc needs --out");
    cache.save(out);
    std::printf("%zu zeros in [%g, %g]\n", cache.ordinates.size(), t0, t1);
    return 0;
  }
  if (func == "zetax") {
    auto table = arith::build_weight_table(x);
    auto report = zetax::scan_zeros(std::max(t0, g.c0), t1, table, g.tol, g.c0);
    if (out.empty()) throw ConfigError("zeros --func zetax needs --out");
    zetax::export_scan_report_csv(report, out,
                                  "zetaprod v" + std::string(kVersion) + " " + g_config_line);
    std::printf("%zu zeros, formula %s\n", report.zeros.size(),
                fmt(report.count_formula).c_str());
    return 0;
  }
  if (func == "combo") {
    auto spec = lcombo::combo_spec_from_json_file(spec_path);
    auto table = arith::build_weight_table(x);
    auto result = lcombo::combo_zero_count(t1, spec, table, g.tol, std::max(t0, g.c0));
    std::ofstream o = open_csv(out.empty() ? "combo_zeros.csv" : out);
    o << "quantity,value\n";
    o << "count," << result.count << "\n";
    o << "lower_bound," << fmt(result.lower_bound) << "\n";
    o << "case1_candidates," << result.case1_candidates.size() << "\n";
    std::printf("count %ld, lower bound %s, case-1 candidates %zu\n",
                result.count, fmt(result.lower_bound).c_str(),
                result.case1_candidates.size());
    return 0;
  }
  throw ConfigError("zeros: unknown function " + func);
}

int run_count(const GlobalOpts& g, const std::string& func, double t, double x,
              const std::string& spec_path, const std::string& out) {
  std::ofstream o = open_csv(out.empty() ? "count.csv" : out);
  o << "quantity,value\n";
  if (func == "zeta") {
    const long n = refzeta::n_of_t(t);
    o << "n_of_t," << n << "\n";
    std::printf("n_of_t(%g) = %ld\n", t, n);
  } else if (func == "zetax") {
    auto table = arith::build_weight_table(x);
    auto [count, formula] = zetax::n_x(t, table, g.c0);
    const long n = refzeta::n_of_t(t);
    o << "count," << count << "\nformula," << fmt(formula) << "\nn_of_t," << n << "\n";
    std::printf("count %ld, formula %s, n_of_t %ld\n", count, fmt(formula).c_str(), n);
  } else if (func == "combo") {
    auto spec = lcombo::combo_spec_from_json_file(spec_path);
    auto table = arith::build_weight_table(x);
    auto result = lcombo::combo_zero_count(t, spec, table, g.tol, g.c0);
    o << "count," << result.count << "\nlower_bound," << fmt(result.lower_bound)
      << "\ncase1_candidates," << result.case1_candidates.size() << "\n";
    std::printf("count %ld, lower bound %s\n", result.count, fmt(result.lower_bound).c_str());
  } else {
    throw ConfigError("count: unknown function " + func);
  }
  return 0;
}

int run_figures(const GlobalOpts& g, int which, const std::string& x_csv,
                double center, double halfwidth, double step,
                const std::string& out) {
  const auto xs = parse_list(x_csv);
  std::vector<arith::WeightTable> tables;
  for (double x : xs) tables.push_back(arith::build_weight_table(x));
  std::ofstream o = open_csv(out);
  const double t0 = center - halfwidth, t1 = center + halfwidth;
  if (which == 1 || which == 2) {
    o << "t,two_abs_zeta";
    for (double x : xs) o << ",abs_zetax_" << fmt(x);
    o << "\n";
    for (double t = t0; t <= t1 + 1e-12; t += step) {
      o << fmt(t) << "," << fmt(2.0 * std::abs(refzeta::zeta_em(cplx(0.5, t))));
      for (const auto& table : tables)
        o << "," << fmt(std::abs(zetax::zeta_x(cplx(0.5, t), table)));
      o << "\n";
    }
  } else if (which == 3) {
    o << "t,s_t";
    for (double x : xs) o << ",minus_fx_over_pi_" << fmt(x);
    o << "\n";
    for (double t = t0; t <= t1 + 1e-12; t += step) {
      o << fmt(t) << "," << fmt(refzeta::s_of_t(t));
      for (const auto& table : tables)
        o << "," << fmt(-eulerprod::f_x(t, table) / pi);
      o << "\n";
    }
  } else if (which == 4) {
    o << "t,n_t";
    for (double x : xs) o << ",fx_staircase_" << fmt(x);
    o << "\n";
    for (double t = t0; t <= t1 + 1e-12; t += step) {
      o << fmt(t) << "," << refzeta::n_of_t(t);
      for (const auto& table : tables)
        o << "," << fmt(zetax::big_f_x(t, table) / (2.0 * pi) + 1.0);
      o << "\n";
    }
  } else {
    throw ConfigError("figures: --which must be 1..4");
  }
  if (g.plot) emit_plot_script(out);
  return 0;
}

int run_ratio(const GlobalOpts& g, const std::string& x_csv, long pair_index,
              double eps, int points, const std::string& out) {
  const auto xs = parse_list(x_csv);
  auto cache = zeta_cache(g, 0.0, 30.0 + 10.0 * pair_index);
  if (pair_index + 1 >= static_cast<long>(cache.ordinates.size()))
    throw ConfigError("ratio: pair index beyond cache");
  const double g1 = cache.ordinates[static_cast<std::size_t>(pair_index)];
  const double g2 = cache.ordinates[static_cast<std::size_t>(pair_index + 1)];
  const double delta = g2 - g1;
  const double lo = g1 + eps * delta, hi = g2 - eps * delta;
  std::ofstream o = open_csv(out);
  o << "X,max_abs_deviation,phase_margin\n";
  for (double x : xs) {
    auto table = arith::build_weight_table(x);
    double dev = 0.0, margin = HUGE_VAL;
    for (int i = 0; i <= points; ++i) {
      const double t = lo + (hi - lo) * i / points;
      const double ratio = std::abs(zetax::zeta_x_star(cplx(0.5, t), table)) /
                           (2.0 * std::abs(refzeta::zeta_em(cplx(0.5, t))));
      dev = std::max(dev, std::abs(ratio - 1.0));
      margin = std::min(margin,
                        std::abs(std::remainder(
                            zetax::f_x_star_phase(t, table) - pi, 2.0 * pi)));
    }
    o << fmt(x) << "," << fmt(dev) << "," << fmt(margin) << "\n";
    std::printf("X = %g: max |ratio - 1| = %s, phase margin = %s\n", x,
                fmt(dev).c_str(), fmt(margin).c_str());
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite weighted Euler products for zeta and Dirichlet L-functions"};
  app.set_version_flag("--version", std::string("zetaprod v") + kVersion);

  GlobalOpts g;
  const char* env_cache = std::getenv("ZETAPROD_CACHE_DIR");
  g.cache_dir = env_cache ? env_cache : "zetaprod-cache";
  app.add_option("--jobs", g.jobs, "worker threads for zero scans");
  app.add_option("--cache-dir", g.cache_dir, "zero cache directory (env ZETAPROD_CACHE_DIR)");
  app.add_flag("--rebuild-cache", g.rebuild_cache, "ignore existing zero caches");
  app.add_option("--tol", g.tol, "refinement tolerance")->check(CLI::Range(1e-15, 1e-2));
  app.add_option("--c0", g.c0, "lower cutoff C_0 for on-line scans");
  app.add_flag("--plot", g.plot, "emit a python plotter script next to the CSV");
  app.require_subcommand(1);

  double x = 10.0, sigma = 0.5, t0 = 0.0, t1 = 100.0, step = 0.1;
  double t = 100.0, center = 114.0, halfwidth = 6.0, eps = 0.2;
  long q = 1, char_index = 0, pair_index = 0;
  int which = 1, points = 64;
  std::string func = "zeta", out, spec_path, x_csv = "10";

  auto* c_table = app.add_subcommand("table", "build and export a weight table");
  c_table->add_option("--x", x, "cutoff X")->required();
  c_table->add_option("--out", out, "output CSV");

  auto* c_eval = app.add_subcommand("eval", "evaluate a function over a t-grid");
  c_eval->add_option("--func", func, "zeta|chi|zetax|zetaxstar|px|pxstar|lx|lref")->required();
  c_eval->add_option("--sigma", sigma);
  c_eval->add_option("--t0", t0)->required();
  c_eval->add_option("--t1", t1)->required();
  c_eval->add_option("--step", step)->required();
  c_eval->add_option("--x", x);
  c_eval->add_option("--q", q);
  c_eval->add_option("--char-index", char_index);
  c_eval->add_option("--out", out);

  auto* c_zeros = app.add_subcommand("zeros", "zero cache build or on-line scan");
  c_zeros->add_option("--func", func, "zeta|lfunc|zetax|combo")->required();
  c_zeros->add_option("--t0", t0);
  c_zeros->add_option("--t1", t1)->required();
  c_zeros->add_option("--x", x);
  c_zeros->add_option("--q", q);
  c_zeros->add_option("--char-index", char_index);
  c_zeros->add_option("--spec", spec_path, "combo spec JSON");
  c_zeros->add_option("--out", out);

  auto* c_count = app.add_subcommand("count", "zero-count comparisons");
  c_count->add_option("--func", func, "zeta|zetax|combo")->required();
  c_count->add_option("--t", t)->required();
  c_count->add_option("--x", x);
  c_count->add_option("--spec", spec_path);
  c_count->add_option("--out", out);

  auto* c_figures = app.add_subcommand("figures", "figure datasets");
  c_figures->add_option("--which", which, "1..4")->required();
  c_figures->add_option("--x", x_csv, "comma-separated X list");
  c_figures->add_option("--center", center);
  c_figures->add_option("--halfwidth", halfwidth);
  c_figures->add_option("--step", step);
  c_figures->add_option("--out", out);

  auto* c_ratio = app.add_subcommand("ratio", "modulus-ratio experiment between consecutive zeros");
  c_ratio->add_option("--x", x_csv, "comma-separated X list");
  c_ratio->add_option("--pair-index", pair_index, "index of the lower zero of the pair");
  c_ratio->add_option("--eps", eps);
  c_ratio->add_option("--points", points);
  c_ratio->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  {
    std::ostringstream cfg;
    for (int i = 1; i < argc; ++i) cfg << (i > 1 ? " " : "") << argv[i];
    g_config_line = cfg.str();
  }

  try {
    if (c_table->parsed())
      return run_table(g, x, out.empty() ? "table.csv" : out);
    if (c_eval->parsed())
      return run_eval(g, func, sigma, t0, t1, step, x, q, char_index,
                      out.empty() ? "eval.csv" : out);
    if (c_zeros->parsed())
      return run_zeros(g, func, t0, t1, x, q, char_index, spec_path, out);
    if (c_count->parsed()) return run_count(g, func, t, x, spec_path, out);
    if (c_figures->parsed())
      return run_figures(g, which, x_csv, center, halfwidth, step,
                         out.empty() ? "figures.csv" : out);
    if (c_ratio->parsed())
      return run_ratio(g, x_csv, pair_index, eps, points,
                       out.empty() ? "ratio.csv" : out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const CacheMismatchError& e) {
    std::fprintf(stderr, "cache mismatch: %s\n", e.what());
    return 4;
  } catch (const Error& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
