#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <sstream>

#include "ndcode/analysis.hpp"
#include "ndcode/channel.hpp"
#include "ndcode/nd_code.hpp"
#include "ndcode/root_change.hpp"
#include "ndcode/verify.hpp"
#include "test_util.hpp"

using namespace ndcode;
using test_util::w;

TEST_CASE("split string lengths are fixed by n and k") {
  CHECK(mu_string_lengths(8, 2) == std::vector<std::size_t>{3, 3});
  CHECK(mu_string_lengths(11, 3) == std::vector<std::size_t>{3, 3, 2});
  CHECK(mu_string_lengths(15, 3) == std::vector<std::size_t>{4, 4, 4});
}

TEST_CASE("syndrome tuple agrees with the reference implementation") {
  const int q = 3, k = 2, n = 8;
  std::uint64_t irreducible = 0;
  std::map<std::vector<int>, std::uint64_t> buckets;
  test_util::for_all_words(q, n, [&](const Word& x) {
    if (!is_irreducible(x, k)) {
      CHECK_THROWS_AS(oracle::nd_syndromes_ref(x, k), std::invalid_argument);
      return;
    }
    ++irreducible;
    CodeParams mine = nd_syndromes(x, k);
    CodeParams ref = oracle::nd_syndromes_ref(x, k);
    REQUIRE(mine == ref);
    CHECK(nd_membership(x, mine));
    ++buckets[flatten(mine)];
  });
  // the parameter classes partition Irr(n)
  mpz_class expect = count_irreducible(n, q, k);
  CHECK(mpz_class(irreducible) == expect);
  std::uint64_t total = 0;
  for (const auto& [key, count] : buckets) total += count;
  CHECK(total == irreducible);
}

TEST_CASE("membership rejects reducible words and length mismatches") {
  Word x = w("12012102", 3);  // irreducible for k=2
  REQUIRE(is_irreducible(x, 2));
  CodeParams p = nd_syndromes(x, 2);
  CHECK(nd_membership(x, p));
  CHECK_FALSE(nd_membership(w("12121210", 3), p));  // reducible (1212...)
  CHECK_THROWS_AS(nd_membership(w("1201210", 3), p), std::invalid_argument);
}

TEST_CASE("best codebook meets the pigeonhole bound") {
  const int q = 3, k = 2, n = 8;
  Codebook book = build_codebook_best(q, k, n);
  REQUIRE_FALSE(book.words.empty());
  for (const Word& c : book.words) CHECK(nd_membership(c, book.params));
  CHECK(std::is_sorted(book.words.begin(), book.words.end()));

  mpq_class bound = size_lower_bound(q, k, n);
  mpz_class ceil_bound;
  mpz_cdiv_q(ceil_bound.get_mpz_t(), bound.get_num().get_mpz_t(),
             bound.get_den().get_mpz_t());
  CHECK(mpz_class(static_cast<unsigned long>(book.words.size())) >= ceil_bound);

  // deterministic construction, and given-params reproduces the same book
  Codebook again = build_codebook_best(q, k, n);
  CHECK(again.params == book.params);
  CHECK(again.words == book.words);
  Codebook by_params = build_codebook(q, k, n, book.params);
  CHECK(by_params.words == book.words);
}

TEST_CASE("codebook exists at q=2 k=3") {
  Codebook book = build_codebook_best(2, 3, 10);
  CHECK_FALSE(book.words.empty());
  Codebook book11 = build_codebook_best(2, 3, 11);
  CHECK_FALSE(book11.words.empty());
}

TEST_CASE("codebook file round-trips bit-exactly") {
  Codebook book = build_codebook_best(2, 3, 10);
  std::stringstream first;
  write_codebook(first, book);
  Codebook reread = read_codebook(first);
  CHECK(reread.params == book.params);
  CHECK(reread.words == book.words);
  std::stringstream second;
  write_codebook(second, reread);
  CHECK(first.str() == second.str());

  // tampered codeword is rejected on read
  std::string text = second.str();
  std::stringstream bad(text + "0000000000\n");
  CHECK_THROWS_AS(read_codebook(bad), std::invalid_argument);
}

TEST_CASE("enumeration budget is enforced") {
  CHECK_THROWS_AS(build_codebook_best(3, 2, 8, 100), EnumerationLimitError);
}

TEST_CASE("size lower bound") {
  // independent arrangement of the same expression
  const int q = 3, k = 3;
  const long n = 100;
  mpz_class denom_ref;
  {
    mpz_class half((n - k + 1) / 2), nk((n + k - 1) / k), tail(n - k);
    mpz_class factor = 4 * nk * nk - 1;
    mpz_class fpow;
    mpz_pow_ui(fpow.get_mpz_t(), factor.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_class q4;
    mpz_ui_pow_ui(q4.get_mpz_t(), static_cast<unsigned long>(q), 4);
    denom_ref = 5 * q4 * half * half * fpow * tail * tail;
  }
  CHECK(nd_bound_denominator(q, k, n) == denom_ref);
  mpq_class bound = size_lower_bound(q, k, n);
  mpq_class ref(count_irreducible(n, q, k), denom_ref);
  ref.canonicalize();
  CHECK(bound == ref);

  for (int kk : {2, 3})
    for (long nn = 2 * kk + 1; nn <= 30; ++nn)
      CHECK(size_lower_bound(3, kk, nn) <= mpq_class(count_irreducible(nn, 3, kk)));
}

namespace {
// Transform-domain channel outputs of mu = 120102002120 (q=3, k=3), one per
// decoder branch.
struct DecodeCase {
  const char* z2;
  int delta;
  TqStage stage;
};
const DecodeCase kDecodeCases[] = {
    {"000020110020000102002000000100020", +6, TqStage::OddEven},
    {"000100020000102002000000100002021", +3, TqStage::Cusum},
    {"000100020000001101002000000100020", 0, TqStage::None},
    {"000100020000002100002000000100020", -3, TqStage::None},
};
}  // namespace

TEST_CASE("decoder handles all four root-length branches") {
  const int k = 3;
  Word head = w("120", 3);
  Word mu_x = w("120102002120", 3);
  Word x = phi_inv(TransformPair{head, mu_x, k});
  REQUIRE(x.size() == 15);
  REQUIRE(is_irreducible(x, k));
  CodeParams p = nd_syndromes(x, k);

  auto [clean, clean_trace] = nd_decode(x, p);
  CHECK(clean == x);
  CHECK(clean_trace.clean);

  for (const DecodeCase& c : kDecodeCases) {
    Word received = phi_inv(TransformPair{head, w(c.z2, 3), k});
    auto [decoded, trace] = nd_decode(received, p);
    CHECK(decoded == x);
    CHECK(trace.delta == c.delta);
    CHECK(trace.tq_stage == c.stage);
  }

  // debug cone cross-check accepts a genuine channel output
  auto [d2, t2] = sample_channel(x, k, 2, true, 5);
  DecodeOptions opt;
  opt.cone_check = true;
  auto [dec2, tr2] = nd_decode(d2, p, opt);
  CHECK(dec2 == x);
}

TEST_CASE("decode round-trips sampled channel outputs") {
  Codebook book = build_codebook_best(2, 3, 10);
  for (const Word& c : book.words)
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      for (int t = 0; t <= 2; ++t) {
        auto [d, ev] = sample_channel(c, 3, t, false, seed);
        CHECK(nd_decode(d, book.params).first == c);
      }
      auto [dn, evn] = sample_channel(c, 3, 2, true, seed);
      CHECK(nd_decode(dn, book.params).first == c);
    }
}

TEST_CASE("decode round-trips across parameter corners") {
  struct Inst {
    int q, k, n, t;
  };
  for (const Inst& in : {Inst{4, 2, 7, 2}, Inst{2, 2, 9, 2}, Inst{5, 2, 6, 2},
                         Inst{2, 4, 9, 2}, Inst{3, 1, 4, 2}, Inst{4, 3, 8, 2}}) {
    INFO("q=" << in.q << " k=" << in.k << " n=" << in.n);
    Codebook book = build_codebook_best(in.q, in.k, in.n);
    REQUIRE_FALSE(book.words.empty());
    std::size_t limit = std::min<std::size_t>(book.words.size(), 4);
    for (std::size_t wi = 0; wi < limit; ++wi) {
      const Word& c = book.words[wi];
      Word mu_c = mu(phi_bar(c, in.k), in.k);
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto [d, ev] = sample_channel(c, in.k, in.t, true, seed);
        auto [dec, trace] = nd_decode(d, book.params);
        REQUIRE(dec == c);
        // the branch taken always matches the classifier's delta
        RootChange rc = classify_root_change(mu_c, mu(phi_bar(d, in.k), in.k), in.k);
        REQUIRE(rc.delta == trace.delta);
        auto [d2, ev2] = sample_channel(c, in.k, in.t, false, seed);
        REQUIRE(nd_decode(d2, book.params).first == c);
      }
    }
  }
}

TEST_CASE("every irreducible word decodes its own cone, all branches exercised") {
  // every irreducible word is the codeword of its own syndrome class, so
  // this sweeps decoding across all parameter tuples, not just one class
  struct Inst {
    int q, k, n, t;
  };
  for (const Inst& in : {Inst{2, 2, 6, 3}, Inst{2, 3, 8, 3}}) {
    INFO("q=" << in.q << " k=" << in.k << " n=" << in.n);
    std::uint64_t decodes = 0, minus_k = 0, swaps = 0, multi_swaps = 0;
    test_util::for_all_words(in.q, in.n, [&](const Word& x) {
      if (!is_irreducible(x, in.k)) return;
      CodeParams p = nd_syndromes(x, in.k);
      for (const Word& d : descendants(x, in.k, in.t, 1)) {
        auto [dec, trace] = nd_decode(d, p);
        REQUIRE(dec == x);
        ++decodes;
        if (trace.delta == -in.k) ++minus_k;
        int swapped = 0;
        for (const std::string& note : trace.per_string)
          swapped += note.rfind("swap", 0) == 0;
        swaps += swapped;
        multi_swaps += swapped >= 2;
      }
    });
    CHECK(decodes > 1000);
    CHECK(minus_k > 0);   // the root-shrink branch is reachable
    CHECK(swaps > 0);     // transposition corrections are reachable
    if (in.k >= 3) CHECK(multi_swaps > 0);  // and so are simultaneous ones
  }
}

TEST_CASE("decode survives long exact-duplication chains") {
  Codebook book = build_codebook_best(2, 2, 14);
  REQUIRE_FALSE(book.words.empty());
  std::size_t limit = std::min<std::size_t>(book.words.size(), 5);
  for (std::size_t wi = 0; wi < limit; ++wi) {
    const Word& c = book.words[wi];
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      auto [d, ev] = sample_channel(c, 2, 6, true, seed);
      REQUIRE(d.size() == c.size() + 12);
      REQUIRE(nd_decode(d, book.params).first == c);
    }
  }
}

TEST_CASE("decoder is loud but safe on arbitrary input") {
  // outside the channel image the decoder must either throw DecodeError or
  // return a member of the class; it must never crash or mis-verify
  Word base = w("12012102", 3);
  CodeParams p = nd_syndromes(base, 2);
  std::mt19937_64 rng(2024);
  int threw = 0, decoded = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    std::size_t len = 8 + 2 * (rng() % 3);
    Word r{3, {}};
    for (std::size_t i = 0; i < len; ++i) r.s.push_back(static_cast<Symbol>(rng() % 3));
    try {
      auto [dec, trace] = nd_decode(r, p);
      CHECK(nd_membership(dec, p));
      ++decoded;
    } catch (const DecodeError&) {
      ++threw;
    }
  }
  CHECK(threw > 0);
  INFO("threw " << threw << ", decoded " << decoded);
}

TEST_CASE("decode rejects out-of-model input") {
  Word x = w("12012102", 3);
  CodeParams p = nd_syndromes(x, 2);
  CHECK_THROWS_AS(nd_decode(w("120", 3), p), DecodeError);         // too short
  CHECK_THROWS_AS(nd_decode(w("120121021", 3), p), DecodeError);   // length mismatch mod k
  // root length drops by 3k: no branch can fire
  CHECK_THROWS_AS(nd_decode(w("11111111", 3), p), DecodeError);
  // clean word against a corrupted weight residue: membership must reject it
  CodeParams off = p;
  off.b = (off.b + 1) % 5;
  CHECK_THROWS_AS(nd_decode(x, off), DecodeError);
}
