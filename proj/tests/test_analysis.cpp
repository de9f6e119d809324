#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "ndcode/analysis.hpp"
#include "ndcode/transforms.hpp"
#include "test_util.hpp"

using namespace ndcode;

namespace {

// brute-force |RL(m)|: words with no 0^k substring
std::uint64_t rll_brute(int m, int q, int k) {
  std::uint64_t count = 0;
  if (m == 0) return 1;
  test_util::for_all_words(q, m, [&](const Word& z) {
    int run = 0;
    bool bad = false;
    for (Symbol v : z.s) {
      run = v == 0 ? run + 1 : 0;
      if (run >= k) bad = true;
    }
    if (!bad) ++count;
  });
  return count;
}

}  // namespace

TEST_CASE("run-length-limited counts match brute force") {
  CHECK(count_rll(0, 2, 2) == 1);
  CHECK(count_rll(2, 2, 2) == 3);  // 01, 10, 11
  for (int q = 2; q <= 3; ++q)
    for (int k = 1; k <= 3; ++k)
      for (int m = 0; m <= (q == 2 ? 12 : 10); ++m)
        CHECK(count_rll(m, q, k) == mpz_class(static_cast<unsigned long>(rll_brute(m, q, k))));
}

TEST_CASE("irreducible counts match a direct scan") {
  CHECK(count_irreducible(4, 2, 2) == 12);
  CHECK(count_irreducible(2, 2, 2) == 4);   // n == k: q^k
  CHECK(count_irreducible(3, 3, 3) == 27);
  for (int q = 2; q <= 3; ++q)
    for (int k = 1; k <= 3; ++k)
      for (int n = k; n <= (q == 2 ? 10 : 8); ++n) {
        std::uint64_t direct = 0;
        test_util::for_all_words(q, n, [&](const Word& x) {
          if (is_irreducible(x, k)) ++direct;
        });
        CHECK(count_irreducible(n, q, k) == mpz_class(static_cast<unsigned long>(direct)));
      }
}

TEST_CASE("asymptotic rates reproduce the quoted values") {
  CHECK(std::abs(asymptotic_rate(4, 2) - 0.9613) < 5e-5);
  CHECK(std::abs(asymptotic_rate(4, 3) - 0.9912) < 5e-5);
  CHECK(std::abs(asymptotic_rate(4, 4) - 0.9979) < 5e-5);

  // the finite-n recurrence approaches the same growth rate
  for (int q : {2, 4})
    for (int k : {2, 3}) {
      double finite = log_q(count_rll(1000, q, k), q) / 1000.0;
      CHECK(std::abs(finite - asymptotic_rate(q, k)) < 1e-3);
    }
}

TEST_CASE("closed-form approximation tracks the exact rate") {
  CHECK(std::abs(approx_rate_formula(4, 4) - asymptotic_rate(4, 4)) < 1e-3);
  for (int k = 1; k < 8; ++k)
    CHECK(approx_rate_formula(4, k + 1) > approx_rate_formula(4, k));
  CHECK(std::abs(approx_rate_formula(4, 40) - 1.0) < 1e-12);
}

TEST_CASE("irreducible count ratio approaches the dominant root") {
  const int q = 3, k = 2;
  double lambda = std::pow(static_cast<double>(q), asymptotic_rate(q, k));
  mpq_class ratio(count_irreducible(200, q, k), count_irreducible(199, q, k));
  CHECK(std::abs(ratio.get_d() - lambda) < 1e-6);
}

TEST_CASE("irreducible count sits within the optimal-code envelope") {
  // M/2 <= |Irr(n)| <= M with M the sum over the duplication tower
  const int q = 3, k = 2;
  for (long n = k; n <= 30; ++n) {
    mpz_class m_sum = 0;
    for (long i = 0; i <= n / k - 1; ++i) m_sum += count_irreducible(n - i * k, q, k);
    mpz_class irr = count_irreducible(n, q, k);
    CHECK(irr <= m_sum);
    CHECK(2 * irr >= m_sum);
  }
}

TEST_CASE("rate table shape and CSV format") {
  auto rows = rate_table(3, {3, 4}, 100, 160, 20);
  REQUIRE(rows.size() == 8);
  for (const RateRow& r : rows) {
    CHECK(r.lower_rate < r.upper_rate);
    CHECK(r.upper_rate <= 1.0);
  }
  // lower bound rises with n for fixed q, and with q at fixed n
  for (std::size_t i = 1; i < 4; ++i) CHECK(rows[i].lower_rate > rows[i - 1].lower_rate);
  for (std::size_t i = 0; i < 4; ++i) CHECK(rows[i + 4].lower_rate > rows[i].lower_rate);

  std::stringstream ss;
  write_rates_csv(ss, rows);
  std::string text = ss.str();
  CHECK(text.starts_with("q,k,n,upper_rate,lower_rate\n"));
  CHECK(text.find('\r') == std::string::npos);
  std::string first_line = text.substr(text.find('\n') + 1);
  first_line = first_line.substr(0, first_line.find('\n'));
  // q,k,n plus two 9-decimal fields
  CHECK(first_line.starts_with("3,3,100,"));
  std::string tail = first_line.substr(8);
  auto comma = tail.find(',');
  CHECK(tail.substr(0, comma).find('.') == 1);
  CHECK(tail.substr(0, comma).size() == 11);  // 0.xxxxxxxxx
  CHECK(tail.substr(comma + 1).size() == 11);

  CHECK_THROWS_AS(rate_table(3, {3}, 6, 10, 2), std::invalid_argument);  // n <= 2k
}

TEST_CASE("rate gap matches the redundancy estimate") {
  const int k = 3;
  for (int q : {3, 5})
    for (long n : {100L, 200L, 400L}) {
      RateRow r = rate_row(q, k, n);
      double gap = r.upper_rate - r.lower_rate;
      double logq_n = std::log(static_cast<double>(n)) / std::log(static_cast<double>(q));
      double estimate = ((2 * k + 4) * logq_n + (2 * k + 5)) / static_cast<double>(n);
      CHECK(std::abs(gap - estimate) <= 10.0 / static_cast<double>(n));
    }
}
