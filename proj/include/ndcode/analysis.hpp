#pragma once

#include <gmpxx.h>

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include "ndcode/word.hpp"

// Irreducible-word counting and rate analysis. All counts are exact
// arbitrary-precision integers; logarithms are taken from them directly,
// never from floating accumulation.

namespace ndcode {

/// |RL(m)|: strings of length m over Sigma_q with no 0^k substring.
/// RL(m) = q^m for m < k, RL(m) = (q-1) * sum_{i=1..k} RL(m-i) otherwise.
inline mpz_class count_rll(long m, int q, int k) {
  if (m < 0) return 0;
  std::vector<mpz_class> rl(static_cast<std::size_t>(m) + 1);
  mpz_class power = 1;
  for (long i = 0; i <= m; ++i) {
    if (i < k) {
      rl[static_cast<std::size_t>(i)] = power;
      power *= q;
    } else {
      mpz_class acc = 0;
      for (int d = 1; d <= k; ++d) acc += rl[static_cast<std::size_t>(i - d)];
      rl[static_cast<std::size_t>(i)] = acc * (q - 1);
    }
  }
  return rl[static_cast<std::size_t>(m)];
}

/// |Irr(n)| = q^k * RL(n-k): irreducible words have a free length-k head and
/// a 0^k-free lag-k difference.
inline mpz_class count_irreducible(long n, int q, int k) {
  if (n < k) return 0;
  mpz_class head;
  mpz_ui_pow_ui(head.get_mpz_t(), static_cast<unsigned long>(q),
                static_cast<unsigned long>(k));
  return head * count_rll(n - k, q, k);
}

/// log base q of an exact positive count.
inline double log_q(const mpz_class& v, int q) {
  signed long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return (std::log2(mant) + static_cast<double>(exp2)) / std::log2(static_cast<double>(q));
}

/// log_q of the dominant positive root of x^k = (q-1)(x^{k-1}+...+1),
/// located by bisection on [1,q] to 12 digits. Equals
/// lim (1/n) log_q |Irr(n)|.
inline double asymptotic_rate(int q, int k) {
  auto g = [&](double x) {
    double acc = 0, pw = 1;
    for (int i = 0; i < k; ++i) {
      acc += pw;
      pw *= x;
    }
    return pw - (q - 1) * acc;  // pw == x^k after the loop
  };
  double lo = 1.0, hi = static_cast<double>(q);
  while (hi - lo > 1e-13) {
    double mid = 0.5 * (lo + hi);
    (g(mid) <= 0 ? lo : hi) = mid;
  }
  double lambda = 0.5 * (lo + hi);
  return std::log(lambda) / std::log(static_cast<double>(q));
}

/// First-order closed form 1 - (q-1) log_q(e) / q^{k+1}; agrees with
/// asymptotic_rate up to o(q^-k).
inline double approx_rate_formula(int q, int k) {
  double logq_e = 1.0 / std::log(static_cast<double>(q));
  return 1.0 - (q - 1) * logq_e / std::pow(static_cast<double>(q), k + 1);
}

/// Denominator of the syndrome-partition pigeonhole bound:
/// 5 q^4 ceil((n-k)/2)^2 (4 ceil(n/k)^2 - 1)^k (n-k)^2.
inline mpz_class nd_bound_denominator(int q, int k, long n) {
  mpz_class d = 5;
  mpz_class qq = q;
  for (int i = 0; i < 4; ++i) d *= qq;
  long half = (n - k + 1) / 2;
  d *= mpz_class(half) * half;
  long ceil_nk = (n + k - 1) / k;
  mpz_class f = mpz_class(ceil_nk) * ceil_nk * 4 - 1;
  for (int i = 0; i < k; ++i) d *= f;
  d *= mpz_class(n - k) * (n - k);
  return d;
}

/// Guaranteed size of the largest syndrome class: |Irr(n)| / denominator.
inline mpq_class size_lower_bound(int q, int k, long n) {
  mpq_class r(count_irreducible(n, q, k), nd_bound_denominator(q, k, n));
  r.canonicalize();
  return r;
}

struct RateRow {
  int q = 0;
  int k = 0;
  long n = 0;
  double irr_count_log = 0;  // log_q |Irr(n)|
  double upper_rate = 0;     // (1/n) log_q |Irr(n)|
  double lower_rate = 0;     // upper minus the pigeonhole redundancy
};

inline RateRow rate_row(int q, int k, long n) {
  RateRow row{q, k, n, 0, 0, 0};
  row.irr_count_log = log_q(count_irreducible(n, q, k), q);
  row.upper_rate = row.irr_count_log / static_cast<double>(n);
  row.lower_rate =
      (row.irr_count_log - log_q(nd_bound_denominator(q, k, n), q)) / static_cast<double>(n);
  return row;
}

inline std::vector<RateRow> rate_table(int k, const std::vector<int>& q_list,
                                       long n_start, long n_end, long n_step) {
  std::vector<RateRow> rows;
  for (int q : q_list)
    for (long n = n_start; n <= n_end; n += n_step) {
      if (n <= 2 * k) throw std::invalid_argument("rate_table: n must exceed 2k");
      rows.push_back(rate_row(q, k, n));
    }
  return rows;
}

/// CSV with header `q,k,n,upper_rate,lower_rate`, 9 decimal places, LF endings.
inline void write_rates_csv(std::ostream& os, const std::vector<RateRow>& rows) {
  os << "q,k,n,upper_rate,lower_rate\n";
  for (const RateRow& r : rows) {
    std::ostringstream line;
    line << r.q << ',' << r.k << ',' << r.n << ',' << std::fixed
         << std::setprecision(9) << r.upper_rate << ',' << r.lower_rate;
    os << line.str() << '\n';
  }
}

}  // namespace ndcode
