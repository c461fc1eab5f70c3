#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "common.hpp"
#include "errors.hpp"

namespace zetaprod::arith {

using zetaprod::cplx;

inline constexpr std::int64_t default_sieve_cap = 1'000'000'000;

// All primes <= limit, ascending.
inline std::vector<std::int64_t> sieve_primes(
    std::int64_t limit, std::int64_t cap = default_sieve_cap) {
  if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2");
  if (limit > cap) throw CapacityError("sieve_primes: limit exceeds capacity bound");
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 2; p <= limit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    primes.push_back(p);
    for (std::int64_t m = p * p; m <= limit; m += p)
      composite[static_cast<std::size_t>(m)] = true;
  }
  return primes;
}

// von Mangoldt Lambda(n): log p if n = p^k, else 0.
inline double von_mangoldt(std::int64_t n) {
  if (n < 1) throw DomainError("von_mangoldt: n must be >= 1");
  if (n == 1) return 0.0;
  std::int64_t m = n;
  std::int64_t p = 0;
  for (std::int64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      p = d;
      while (m % d == 0) m /= d;
      break;
    }
  }
  if (p == 0) return std::log(static_cast<double>(n)); // n itself prime
  return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

struct WeightEntry {
  std::int64_t n;
  double w;          // Lambda_X(n) > 0
  double log_n;      // precomputed for the hot product loops
  double inv_sqrt_n; // likewise
};

// X plus the table n -> Lambda_X(n) over prime powers n <= X^2, where
//   Lambda_X(n) = Lambda(n)                          for n <= X,
//   Lambda_X(n) = Lambda(n) (2 - log n / log X)      for X < n <= X^2.
// Zero-weight entries (n = X^2 exactly) are omitted.
struct WeightTable {
  double X = 0.0;
  std::vector<WeightEntry> entries;
};

inline WeightTable build_weight_table(double X,
                                      std::int64_t cap = default_sieve_cap) {
  if (!(X >= 2.0)) throw DomainError("build_weight_table: X must be >= 2");
  const double x2 = X * X;
  if (x2 > static_cast<double>(cap))
    throw CapacityError("build_weight_table: X^2 exceeds sieve capacity");
  const std::int64_t limit = static_cast<std::int64_t>(std::floor(x2));
  const double log_x = std::log(X);
  WeightTable table;
  table.X = X;
  const auto primes = sieve_primes(std::max<std::int64_t>(limit, 2), cap);
  for (std::int64_t p : primes) {
    const double lam = std::log(static_cast<double>(p));
    for (double npow = static_cast<double>(p); npow <= x2;
         npow *= static_cast<double>(p)) {
      const std::int64_t n = static_cast<std::int64_t>(npow + 0.5);
      if (static_cast<double>(n) > x2) break;
      const double ln = std::log(static_cast<double>(n));
      const double w =
          static_cast<double>(n) <= X ? lam : lam * (2.0 - ln / log_x);
      if (w <= 0.0) continue;
      table.entries.push_back(
          {n, w, ln, 1.0 / std::sqrt(static_cast<double>(n))});
    }
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const WeightEntry& a, const WeightEntry& b) { return a.n < b.n; });
  return table;
}

// Lambda_X(n) for a single n (same case split as the table).
inline double lambda_x(std::int64_t n, double X) {
  const double lam = von_mangoldt(n);
  if (lam == 0.0) return 0.0;
  const double nd = static_cast<double>(n);
  if (nd <= X) return lam;
  if (nd <= X * X) return lam * (2.0 - std::log(nd) / std::log(X));
  return 0.0;
}

inline void export_weight_table_csv(const WeightTable& table,
                                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("export_weight_table_csv: cannot open " + path);
  out << "n,lambda_x\n";
  char buf[64];
  for (const auto& e : table.entries) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g\n",
                  static_cast<long long>(e.n), e.w);
    out << buf;
  }
}

inline WeightTable import_weight_table_csv(const std::string& path, double X) {
  std::ifstream in(path);
  if (!in) throw ConfigError("import_weight_table_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("n,lambda_x", 0) != 0)
    throw ConfigError("import_weight_table_csv: bad header in " + path);
  WeightTable table;
  table.X = X;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError("import_weight_table_csv: bad row in " + path);
    const std::int64_t n = std::stoll(line.substr(0, comma));
    const double w = std::stod(line.substr(comma + 1));
    table.entries.push_back(
        {n, w, std::log(static_cast<double>(n)),
         1.0 / std::sqrt(static_cast<double>(n))});
  }
  return table;
}

// ---------------------------------------------------------------------------
// Dirichlet characters.
// ---------------------------------------------------------------------------

// Character mod q, represented through a generator-exponent decomposition of
// (Z/q)^*.  Values are roots of unity e^{2 pi i m / L}; the integer numerator
// m is kept alongside the complex value so that equality tests (chi(a) = 1,
// parity) are exact.
struct Character {
  long q = 1;
  std::vector<cplx> values;            // index a mod q; 0 at gcd(a,q) > 1
  std::vector<long> exponent_num;      // m with chi(a) = e^{2 pi i m/L}; -1 if chi(a)=0
  long exponent_den = 1;               // L
  int parity = 0;                      // a-bit: chi(-1) = (-1)^parity
  bool primitive = false;
  cplx gauss = 1.0;                    // tau(chi)
  double alpha = 0.0;                  // root-number phase (primitive chi only)

  cplx operator()(std::int64_t n) const {
    std::int64_t r = n % q;
    if (r < 0) r += q;
    return values[static_cast<std::size_t>(r)];
  }
  bool value_is_one(std::int64_t n) const {
    std::int64_t r = n % q;
    if (r < 0) r += q;
    return exponent_num[static_cast<std::size_t>(r)] == 0;
  }
};

namespace detail {

inline std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = (__int128)r * b % m;
    b = (__int128)b * b % m;
    e >>= 1;
  }
  return r;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> fs;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

inline std::int64_t primitive_root_mod_pk(std::int64_t p, int k) {
  const std::int64_t phi_p = p - 1;
  const auto fs = prime_factors(phi_p);
  std::int64_t g = 2;
  for (;; ++g) {
    bool ok = true;
    for (auto f : fs)
      if (pow_mod(g, phi_p / f, p) == 1) { ok = false; break; }
    if (ok) break;
  }
  if (k == 1) return g;
  // lift: g is a primitive root mod p^k unless g^{p-1} = 1 mod p^2
  if (pow_mod(g, p - 1, p * p) == 1) g += p;
  return g;
}

// CRT: x = r mod m, x = 1 mod (q/m)
inline std::int64_t crt_lift(std::int64_t r, std::int64_t m, std::int64_t q) {
  const std::int64_t m2 = q / m;
  for (std::int64_t x = r; x < q + 1; x += m)
    if (x % m2 == 1 % m2) return x % q;
  throw NumericError("crt_lift: no solution (moduli not coprime?)");
}

struct GroupComponent {
  std::int64_t generator; // element of (Z/q)^*
  long order;
};

inline std::vector<GroupComponent> unit_group_components(long q) {
  std::vector<GroupComponent> comps;
  if (q == 1) return comps;
  std::int64_t rem = q;
  int e2 = 0;
  while (rem % 2 == 0) { rem /= 2; ++e2; }
  if (e2 == 2) {
    comps.push_back({crt_lift(3, 4, q), 2});
  } else if (e2 >= 3) {
    const std::int64_t m = std::int64_t(1) << e2;
    comps.push_back({crt_lift(m - 1, m, q), 2});
    comps.push_back({crt_lift(5, m, q), long(1) << (e2 - 2)});
  }
  std::int64_t n = rem;
  for (std::int64_t p = 3; p * p <= n; p += 2) {
    if (n % p == 0) {
      std::int64_t pk = 1;
      int k = 0;
      while (n % p == 0) { n /= p; pk *= p; ++k; }
      const std::int64_t g = primitive_root_mod_pk(p, k);
      comps.push_back({crt_lift(g % pk, pk, q), long(pk / p * (p - 1))});
    }
  }
  if (n > 1) {
    comps.push_back({crt_lift(primitive_root_mod_pk(n, 1), n, q), long(n - 1)});
  }
  return comps;
}

} // namespace detail

// All phi(q) Dirichlet characters mod q.  Enumeration order: characters are
// indexed by exponent tuples (k_1, ..., k_r) against the generator
// decomposition of (Z/q)^*, in mixed-radix order with the last component
// varying fastest; index 0 is the principal character.
inline std::vector<Character> characters_mod(long q, long q_cap = 1'000'000) {
  if (q < 1) throw DomainError("characters_mod: q must be >= 1");
  if (q > q_cap) throw CapacityError("characters_mod: q exceeds modulus bound");

  const auto comps = detail::unit_group_components(q);
  const std::size_t r = comps.size();
  long phi = 1;
  for (const auto& c : comps) phi *= c.order;
  long L = 1;
  for (const auto& c : comps) L = std::lcm(L, c.order);

  // discrete-log table: residue a -> exponent tuple
  std::vector<std::vector<long>> dlog(static_cast<std::size_t>(q));
  std::vector<bool> is_unit(static_cast<std::size_t>(q), false);
  {
    std::vector<long> exps(r, 0);
    for (long cnt = 0; cnt < phi; ++cnt) {
      std::int64_t a = 1 % q;
      for (std::size_t j = 0; j < r; ++j)
        a = (__int128)a * detail::pow_mod(comps[j].generator, exps[j], q) % q;
      dlog[static_cast<std::size_t>(a)] = exps;
      is_unit[static_cast<std::size_t>(a)] = true;
      for (std::size_t j = r; j-- > 0;) {
        if (++exps[j] < comps[j].order) break;
        exps[j] = 0;
      }
    }
  }

  std::vector<Character> chars;
  chars.reserve(static_cast<std::size_t>(phi));
  std::vector<long> k(r, 0);
  for (long idx = 0; idx < phi; ++idx) {
    Character ch;
    ch.q = q;
    ch.exponent_den = L;
    ch.values.assign(static_cast<std::size_t>(q), cplx(0.0));
    ch.exponent_num.assign(static_cast<std::size_t>(q), -1);
    for (long a = 0; a < q; ++a) {
      if (!is_unit[static_cast<std::size_t>(a)]) continue;
      long num = 0;
      for (std::size_t j = 0; j < r; ++j)
        num = (num + k[j] * dlog[static_cast<std::size_t>(a)][j] %
                         comps[j].order * (L / comps[j].order)) % L;
      ch.exponent_num[static_cast<std::size_t>(a)] = num;
      ch.values[static_cast<std::size_t>(a)] =
          num == 0 ? cplx(1.0)
                   : std::polar(1.0, 2.0 * zetaprod::pi *
                                         static_cast<double>(num) /
                                         static_cast<double>(L));
    }
    if (q == 1) {
      ch.exponent_num[0] = 0;
      ch.values[0] = cplx(1.0);
    }
    // parity from chi(-1)
    if (q <= 2) {
      ch.parity = 0;
    } else {
      const long m = ch.exponent_num[static_cast<std::size_t>(q - 1)];
      ch.parity = (m == 0) ? 0 : 1; // chi(-1) is +-1, so m is 0 or L/2
    }
    // primitivity: chi is induced by modulus q/p iff chi(a) = 1 for every
    // a = 1 (mod q/p) with gcd(a,q) = 1
    ch.primitive = true;
    for (std::int64_t p : detail::prime_factors(q)) {
      const std::int64_t m = q / p;
      bool separates = false;
      for (std::int64_t a = 1 % q;; a += m) {
        if (a >= q) break;
        if (is_unit[static_cast<std::size_t>(a)] &&
            ch.exponent_num[static_cast<std::size_t>(a)] != 0) {
          separates = true;
          break;
        }
      }
      if (!separates) { ch.primitive = false; break; }
    }
    if (q == 1) ch.primitive = true;
    // Gauss sum tau(chi) = sum_a chi(a) e^{2 pi i a / q}
    if (q == 1) {
      ch.gauss = cplx(1.0);
    } else {
      cplx tau = 0.0;
      for (long a = 1; a < q; ++a)
        if (is_unit[static_cast<std::size_t>(a)])
          tau += ch.values[static_cast<std::size_t>(a)] *
                 std::polar(1.0, 2.0 * zetaprod::pi * a / q);
      ch.gauss = tau;
    }
    chars.push_back(std::move(ch));
    for (std::size_t j = r; j-- > 0;) {
      if (++k[j] < comps[j].order) break;
      k[j] = 0;
    }
  }
  // fill alpha for primitive characters
  for (auto& ch : chars) {
    if (!ch.primitive) continue;
    const cplx ia = ch.parity == 0 ? cplx(1.0) : cplx(0.0, 1.0);
    const cplx w = ch.gauss / (ia * std::sqrt(static_cast<double>(q)));
    double alpha = -std::arg(w) / 2.0; // in [-pi/2, pi/2)
    if (alpha <= -zetaprod::pi / 2.0) alpha += zetaprod::pi;
    ch.alpha = alpha;
  }
  return chars;
}

// Root-number phase alpha(chi) with e^{-2 i alpha} = tau(chi)/(i^a sqrt(q)),
// canonical representative in (-pi/2, pi/2].
inline double alpha_of(const Character& chi) {
  if (!chi.primitive)
    throw DomainError("alpha_of: character is imprimitive");
  return chi.alpha;
}

} // namespace zetaprod::arith
