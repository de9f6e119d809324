#pragma once

#include <array>
#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ndcode/analysis.hpp"
#include "ndcode/channel.hpp"
#include "ndcode/errors.hpp"
#include "ndcode/guard.hpp"
#include "ndcode/indel.hpp"
#include "ndcode/transforms.hpp"
#include "ndcode/word.hpp"

// Construction of the noisy-duplication code: membership by syndrome tuple,
// codebook enumeration over the irreducible words, and the four-case decoder
// recovering the stored codeword from any descendant with at most one noisy
// duplication.

namespace ndcode {

/// Lengths |mu_j| = floor((n-k-j)/k) + 1 of the split strings, fixed by (n,k).
inline std::vector<std::size_t> mu_string_lengths(int n, int k) {
  std::vector<std::size_t> lengths(static_cast<std::size_t>(k));
  const int m = n - k;
  for (int j = 1; j <= k; ++j)
    lengths[static_cast<std::size_t>(j - 1)] =
        m >= j ? static_cast<std::size_t>((m - j) / k + 1) : 0;
  return lengths;
}

/// The full syndrome tuple defining one code: per-string VT residues a_j
/// (mod 2|s_j|+3), per-string prefix-sum residues c_j (mod 2|s_j|+1), the
/// shared weight b (mod 5), and the four Tenengolts pairs on the interleaved
/// root: odd/even (moduli ceil((n-k)/2)) and cusum/concatenation (moduli n-k).
struct CodeParams {
  int q = 2;
  int k = 1;
  int n = 0;
  std::vector<int> a;        // size k
  std::vector<int> c;        // size k
  int b = 0;
  std::array<int, 4> abar{};  // alpha residues mod q
  std::array<int, 4> bbar{};  // beta residues; [0],[1] mod ceil((n-k)/2), [2],[3] mod n-k

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// Flattened residue order used by the codebook file format and for
/// tie-breaking: a_1..a_k, c_1..c_k, b, abar_1..4, bbar_1..4.
inline std::vector<int> flatten(const CodeParams& p) {
  std::vector<int> out;
  out.insert(out.end(), p.a.begin(), p.a.end());
  out.insert(out.end(), p.c.begin(), p.c.end());
  out.push_back(p.b);
  out.insert(out.end(), p.abar.begin(), p.abar.end());
  out.insert(out.end(), p.bbar.begin(), p.bbar.end());
  return out;
}

inline void validate_code_params(const CodeParams& p) {
  detail::require(p.q >= 2 && p.k >= 1 && p.n > 2 * p.k,
                  "code params: need q >= 2, k >= 1, n > 2k");
  auto lengths = mu_string_lengths(p.n, p.k);
  detail::require(p.a.size() == lengths.size() && p.c.size() == lengths.size(),
                  "code params: residue vectors must have k entries");
  const int m_oe = (p.n - p.k + 1) / 2;
  const int m_full = p.n - p.k;
  for (std::size_t j = 0; j < lengths.size(); ++j) {
    int len = static_cast<int>(lengths[j]);
    detail::require(p.a[j] >= 0 && p.a[j] < 2 * len + 3, "code params: a_j out of range");
    detail::require(p.c[j] >= 0 && p.c[j] < 2 * len + 1, "code params: c_j out of range");
  }
  detail::require(p.b >= 0 && p.b < 5, "code params: b out of range");
  for (int i = 0; i < 4; ++i)
    detail::require(p.abar[static_cast<std::size_t>(i)] >= 0 &&
                        p.abar[static_cast<std::size_t>(i)] < p.q,
                    "code params: abar out of range");
  for (int i = 0; i < 2; ++i)
    detail::require(p.bbar[static_cast<std::size_t>(i)] >= 0 &&
                        p.bbar[static_cast<std::size_t>(i)] < m_oe,
                    "code params: bbar_1/2 out of range");
  for (int i = 2; i < 4; ++i)
    detail::require(p.bbar[static_cast<std::size_t>(i)] >= 0 &&
                        p.bbar[static_cast<std::size_t>(i)] < m_full,
                    "code params: bbar_3/4 out of range");
}

/// Computes the syndrome tuple of an irreducible word of length n.
inline CodeParams nd_syndromes(const Word& x, int k) {
  CodeParams p;
  p.q = x.q;
  p.k = k;
  p.n = static_cast<int>(x.size());
  detail::require(p.n > 2 * k, "nd_syndromes: need n > 2k");
  Word mu_w = mu(phi_bar(x, k), k);
  detail::require(mu_w.size() == static_cast<std::size_t>(p.n - k),
                  "nd_syndromes: word is not irreducible");
  int wsum = 0;
  for (int j = 1; j <= k; ++j) {
    Word sj = indicator(split(mu_w, j, k));
    int len = static_cast<int>(sj.size());
    p.a.push_back(vt_syndrome(sj, 2 * len + 3));
    p.c.push_back(detail::guard_ct(sj, 2 * len + 1));
    wsum += detail::weight(sj);
  }
  p.b = detail::mod_pos(wsum, 5);
  Word il = interleave(mu_w, k);
  const int m_oe = (p.n - k + 1) / 2;
  const int m_full = p.n - k;
  auto [od, ev] = odd_even(il);
  auto set = [&](int idx, std::pair<int, int> ab) {
    p.abar[static_cast<std::size_t>(idx)] = ab.first;
    p.bbar[static_cast<std::size_t>(idx)] = ab.second;
  };
  set(0, tq_syndromes(od, m_oe));
  set(1, tq_syndromes(ev, m_oe));
  set(2, tq_syndromes(cusum(il), m_full));
  set(3, tq_syndromes(il, m_full));
  return p;
}

/// Membership: irreducible of length n and every congruence of the tuple holds.
inline bool nd_membership(const Word& x, const CodeParams& p) {
  detail::require(x.size() == static_cast<std::size_t>(p.n), "nd_membership: length mismatch");
  detail::require(x.q == p.q, "nd_membership: alphabet mismatch");
  if (!is_irreducible(x, p.k)) return false;
  return nd_syndromes(x, p.k) == p;
}

struct Codebook {
  CodeParams params;
  std::vector<Word> words;  // irreducible, all members, sorted
};

namespace detail {

template <typename Fn>
void for_each_irreducible(int q, int k, int n, std::size_t budget, Fn&& fn) {
  mpz_class total = count_irreducible(n, q, k);
  if (total > static_cast<unsigned long>(budget))
    throw EnumerationLimitError("codebook enumeration exceeds node budget");
  // heads are free; tails run over the 0^k-free strings of length n-k
  Word tail{q, {}};
  tail.s.assign(static_cast<std::size_t>(n - k), 0);
  auto emit_heads = [&](const Word& t) {
    Word head{q, std::vector<Symbol>(static_cast<std::size_t>(k), 0)};
    while (true) {
      fn(phi_inv(TransformPair{head, t, k}));
      int pos = k - 1;
      while (pos >= 0 && head.s[static_cast<std::size_t>(pos)] == q - 1)
        head.s[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
      ++head.s[static_cast<std::size_t>(pos)];
    }
  };
  auto rec = [&](auto&& self, std::size_t at, int zero_run) -> void {
    if (at == tail.size()) {
      emit_heads(tail);
      return;
    }
    for (int v = 0; v < q; ++v) {
      if (v == 0 && zero_run + 1 == k) continue;
      tail.s[at] = static_cast<Symbol>(v);
      self(self, at + 1, v == 0 ? zero_run + 1 : 0);
    }
  };
  if (n == k)
    emit_heads(Word{q, {}});
  else
    rec(rec, 0, 0);
}

}  // namespace detail

/// Every irreducible word of length n whose tuple equals p, sorted.
inline Codebook build_codebook(int q, int k, int n, const CodeParams& p,
                               std::size_t budget = 10'000'000) {
  validate_code_params(p);
  detail::require(p.q == q && p.k == k && p.n == n, "build_codebook: parameter mismatch");
  Codebook book;
  book.params = p;
  detail::for_each_irreducible(q, k, n, budget, [&](const Word& x) {
    if (nd_syndromes(x, k) == p) book.words.push_back(x);
  });
  std::sort(book.words.begin(), book.words.end());
  return book;
}

/// The largest syndrome class; ties broken by the lexicographically smallest
/// flattened tuple. Reproducible across runs by construction.
inline Codebook build_codebook_best(int q, int k, int n, std::size_t budget = 10'000'000) {
  check_alphabet(q);
  detail::require(k >= 1 && n > 2 * k, "build_codebook_best: need k >= 1 and n > 2k");
  std::map<std::vector<int>, std::pair<CodeParams, std::vector<Word>>> buckets;
  detail::for_each_irreducible(q, k, n, budget, [&](const Word& x) {
    CodeParams p = nd_syndromes(x, k);
    auto& slot = buckets[flatten(p)];
    if (slot.second.empty()) slot.first = p;
    slot.second.push_back(x);
  });
  Codebook book;
  std::size_t best = 0;
  for (auto& [key, value] : buckets) {
    if (value.second.size() > best) {
      best = value.second.size();
      book.params = value.first;
      book.words = value.second;
    }
  }
  std::sort(book.words.begin(), book.words.end());
  return book;
}

// ---------------------------------------------------------------------------
// Codebook file format (text, bit-exact):
//   line 1: `q k n`
//   line 2: flattened residues a_1..a_k c_1..c_k b abar_1..4 bbar_1..4
//   then one codeword per line in word text form, sorted lexicographically.

inline void write_codebook(std::ostream& os, const Codebook& book) {
  os << book.params.q << ' ' << book.params.k << ' ' << book.params.n << '\n';
  std::vector<int> flat = flatten(book.params);
  for (std::size_t i = 0; i < flat.size(); ++i) os << (i ? " " : "") << flat[i];
  os << '\n';
  for (const Word& w : book.words) os << to_string(w) << '\n';
}

inline Codebook read_codebook(std::istream& is) {
  Codebook book;
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("codebook: missing header");
  {
    std::istringstream hs(line);
    if (!(hs >> book.params.q >> book.params.k >> book.params.n))
      throw std::invalid_argument("codebook: bad header line");
  }
  const int k = book.params.k;
  if (!std::getline(is, line)) throw std::invalid_argument("codebook: missing parameter line");
  {
    std::istringstream ps(line);
    std::vector<int> flat;
    int v;
    while (ps >> v) flat.push_back(v);
    if (flat.size() != static_cast<std::size_t>(2 * k + 9))
      throw std::invalid_argument("codebook: wrong residue count");
    std::size_t at = 0;
    book.params.a.assign(flat.begin(), flat.begin() + k);
    at += static_cast<std::size_t>(k);
    book.params.c.assign(flat.begin() + static_cast<std::ptrdiff_t>(at),
                         flat.begin() + static_cast<std::ptrdiff_t>(at) + k);
    at += static_cast<std::size_t>(k);
    book.params.b = flat[at++];
    for (int i = 0; i < 4; ++i) book.params.abar[static_cast<std::size_t>(i)] = flat[at++];
    for (int i = 0; i < 4; ++i) book.params.bbar[static_cast<std::size_t>(i)] = flat[at++];
  }
  validate_code_params(book.params);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    Word w = parse_word(line, book.params.q);
    if (!nd_membership(w, book.params))
      throw std::invalid_argument("codebook: word fails membership");
    book.words.push_back(std::move(w));
  }
  for (std::size_t i = 1; i < book.words.size(); ++i)
    if (!(book.words[i - 1] < book.words[i]))
      throw std::invalid_argument("codebook: words must be strictly increasing");
  return book;
}

// ---------------------------------------------------------------------------
// Decoder.

enum class TqStage { None, OddEven, Cusum, Concat };

inline const char* to_string(TqStage s) {
  switch (s) {
    case TqStage::None: return "none";
    case TqStage::OddEven: return "odd/even";
    case TqStage::Cusum: return "cusum";
    case TqStage::Concat: return "concatenation";
  }
  return "?";
}

struct DecodeTrace {
  int delta = 0;     // |mu''| - |mu|
  bool clean = false;  // no change at all
  TqStage tq_stage = TqStage::None;
  std::vector<std::string> per_string;
};

struct DecodeOptions {
  bool cone_check = false;  // debug cross-check: received must lie in the cone
  std::size_t cone_budget = 1'000'000;
};

namespace detail {

struct NdCandidate {
  std::vector<Word> strings;
  DecodeTrace trace;
};

inline Word erase2(const Word& w, std::size_t p1, std::size_t p2) {
  Word out{w.q, {}};
  out.s.reserve(w.size() - 2);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (i != p1 && i != p2) out.s.push_back(w.s[i]);
  return out;
}

}  // namespace detail

/// Recovers the unique codeword whose descendant cone (any number of exact
/// duplications, at most one noisy) contains `received`. Dispatches on
/// delta = |mu''| - |mu| and, within a branch, on the shared weight delta;
/// per-string indels are undone with the VT machinery and the one q-ary
/// residue error with the appropriate Tenengolts stage. Every path ends with
/// a full membership assertion.
inline std::pair<Word, DecodeTrace> nd_decode(const Word& received, const CodeParams& p,
                                              const DecodeOptions& opt = {}) {
  validate_code_params(p);
  detail::require(received.q == p.q, "nd_decode: alphabet mismatch");
  if (received.size() < static_cast<std::size_t>(p.n) ||
      (received.size() - static_cast<std::size_t>(p.n)) % static_cast<std::size_t>(p.k) != 0)
    throw DecodeError("nd_decode: received length not reachable by k-duplications");

  const int k = p.k;
  const int mu_len = p.n - k;
  const Word head{p.q, std::vector<Symbol>(received.s.begin(), received.s.begin() + k)};
  const Word mu2 = mu(phi_bar(received, k), k);
  const int delta = static_cast<int>(mu2.size()) - mu_len;
  if (delta != -k && delta != 0 && delta != k && delta != 2 * k)
    throw DecodeError("nd_decode: root length change outside {-k,0,+k,+2k}");

  const auto lengths = mu_string_lengths(p.n, k);
  std::vector<Word> mu2j(static_cast<std::size_t>(k));
  std::vector<Word> s2(static_cast<std::size_t>(k));
  int wsum = 0;
  for (int j = 1; j <= k; ++j) {
    mu2j[static_cast<std::size_t>(j - 1)] = split(mu2, j, k);
    s2[static_cast<std::size_t>(j - 1)] = indicator(mu2j[static_cast<std::size_t>(j - 1)]);
    wsum += detail::weight(s2[static_cast<std::size_t>(j - 1)]);
  }
  const int bd = detail::signed_mod5(wsum - p.b);

  auto vt_params = [&](int j0) {
    return VtParams{p.a[static_cast<std::size_t>(j0)],
                    2 * static_cast<int>(lengths[static_cast<std::size_t>(j0)]) + 3};
  };
  auto throw_branch = [](const char* msg) -> void {
    throw DecodeError(std::string("nd_decode: ") + msg);
  };

  std::vector<detail::NdCandidate> candidates;

  if (delta == -k) {
    if (bd != 0) throw_branch("delta -k with nonzero weight change");
    detail::NdCandidate cand;
    cand.trace.delta = delta;
    for (int j = 0; j < k; ++j) {
      VtReport rep = vt_decode_report(s2[static_cast<std::size_t>(j)],
                                      lengths[static_cast<std::size_t>(j)], vt_params(j));
      if (!rep.value || *rep.value != 0) throw_branch("delta -k expects a lost 0 per string");
      Word fixed = mu2j[static_cast<std::size_t>(j)];
      fixed.s.insert(fixed.s.begin() + static_cast<std::ptrdiff_t>(*rep.position - 1), 0);
      cand.strings.push_back(std::move(fixed));
      cand.trace.per_string.push_back("reinsert 0 @" + std::to_string(*rep.position));
    }
    candidates.push_back(std::move(cand));
  } else if (delta == 0) {
    std::vector<int> avv(static_cast<std::size_t>(k));
    std::vector<int> changed;
    for (int j = 0; j < k; ++j) {
      int ma = 2 * static_cast<int>(lengths[static_cast<std::size_t>(j)]) + 3;
      avv[static_cast<std::size_t>(j)] = detail::mod_pos(
          vt_syndrome(s2[static_cast<std::size_t>(j)], ma) - p.a[static_cast<std::size_t>(j)], ma);
      if (avv[static_cast<std::size_t>(j)] != 0) changed.push_back(j);
    }
    auto swap_fix = [&](int j) -> std::optional<std::pair<Word, std::size_t>> {
      const int len = static_cast<int>(lengths[static_cast<std::size_t>(j)]);
      const int ma = 2 * len + 3, mc = 2 * len + 1;
      const int ct2 = detail::guard_ct(s2[static_cast<std::size_t>(j)], mc);
      std::size_t pos;
      if (avv[static_cast<std::size_t>(j)] == 1)
        pos = static_cast<std::size_t>(detail::mod_pos(p.c[static_cast<std::size_t>(j)] - ct2, mc));
      else if (avv[static_cast<std::size_t>(j)] == ma - 1)
        pos = static_cast<std::size_t>(detail::mod_pos(ct2 - p.c[static_cast<std::size_t>(j)], mc));
      else
        return std::nullopt;
      const Word& cur = mu2j[static_cast<std::size_t>(j)];
      if (pos < 1 || pos + 1 > cur.size()) return std::nullopt;
      if ((cur.s[pos - 1] == 0) == (cur.s[pos] == 0)) return std::nullopt;
      Word w = cur;
      std::swap(w.s[pos - 1], w.s[pos]);
      return std::make_pair(std::move(w), pos);
    };

    if (changed.empty()) {
      detail::NdCandidate cand;
      cand.strings = mu2j;
      cand.trace.delta = 0;
      cand.trace.clean = true;
      cand.trace.per_string.assign(static_cast<std::size_t>(k), "stay");
      candidates.push_back(std::move(cand));
    } else if (changed.size() >= 2) {
      if (bd != 0) throw_branch("multi-string change at delta 0 must preserve weight");
      detail::NdCandidate cand;
      cand.trace.delta = 0;
      cand.strings = mu2j;
      cand.trace.per_string.assign(static_cast<std::size_t>(k), "stay");
      for (int j : changed) {
        auto fixed = swap_fix(j);
        if (!fixed) throw_branch("expected adjacent transposition");
        cand.strings[static_cast<std::size_t>(j)] = std::move(fixed->first);
        cand.trace.per_string[static_cast<std::size_t>(j)] =
            "swap @" + std::to_string(fixed->second);
      }
      candidates.push_back(std::move(cand));
    } else {
      const int j = changed.front();
      const Word& cur = mu2j[static_cast<std::size_t>(j)];
      const std::size_t len = lengths[static_cast<std::size_t>(j)];
      detail::NdCandidate cand;
      cand.trace.delta = 0;
      cand.strings = mu2j;
      cand.trace.per_string.assign(static_cast<std::size_t>(k), "stay");
      if (bd == 0) {
        auto fixed = swap_fix(j);
        if (!fixed) throw_branch("expected adjacent transposition");
        cand.strings[static_cast<std::size_t>(j)] = std::move(fixed->first);
        cand.trace.per_string[static_cast<std::size_t>(j)] =
            "swap @" + std::to_string(fixed->second);
      } else if (bd == 1 || bd == 2) {
        std::size_t pos;
        if (bd == 1) {
          pos = static_cast<std::size_t>(avv[static_cast<std::size_t>(j)]);
        } else {
          if (avv[static_cast<std::size_t>(j)] % 2 == 0)
            throw_branch("pair substitution needs odd VT delta");
          pos = static_cast<std::size_t>((avv[static_cast<std::size_t>(j)] - 1) / 2);
        }
        if (pos < 1 || pos > len) throw_branch("substitution position out of range");
        Word w = cur;
        if (w.s[pos - 1] == 0) throw_branch("substitution position must hold a nonzero");
        if (pos == len) {
          if (bd != 1) throw_branch("tail substitution must raise weight by one");
          w.s[pos - 1] = 0;
          cand.trace.per_string[static_cast<std::size_t>(j)] =
              "tail ->0 @" + std::to_string(pos);
        } else {
          Symbol sum = static_cast<Symbol>((w.s[pos - 1] + w.s[pos]) % p.q);
          w.s[pos - 1] = 0;
          w.s[pos] = sum;
          cand.trace.per_string[static_cast<std::size_t>(j)] =
              "pair ->0(c) @" + std::to_string(pos);
        }
        cand.strings[static_cast<std::size_t>(j)] = std::move(w);
      } else {
        throw_branch("delta 0 with impossible weight delta");
      }
      candidates.push_back(std::move(cand));
    }
  } else if (delta == k) {
    struct Rep {
      bool ok = false;
      Symbol value = 0;
      std::size_t position = 0;
    };
    std::vector<Rep> reps(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      try {
        VtReport r = vt_decode_report(s2[static_cast<std::size_t>(j)],
                                      lengths[static_cast<std::size_t>(j)], vt_params(j));
        reps[static_cast<std::size_t>(j)] = Rep{true, *r.value, *r.position};
      } catch (const DecodeError&) {
      }
    }
    auto zero_deleted = [&](int j) {
      Word w = mu2j[static_cast<std::size_t>(j)];
      w.s.erase(w.s.begin() +
                static_cast<std::ptrdiff_t>(reps[static_cast<std::size_t>(j)].position - 1));
      return w;
    };
    if (bd == 0) {
      detail::NdCandidate cand;
      cand.trace.delta = delta;
      for (int j = 0; j < k; ++j) {
        if (!reps[static_cast<std::size_t>(j)].ok || reps[static_cast<std::size_t>(j)].value != 0)
          throw_branch("delta +k with no weight change expects inserted 0s everywhere");
        cand.strings.push_back(zero_deleted(j));
        cand.trace.per_string.push_back(
            "drop 0 @" + std::to_string(reps[static_cast<std::size_t>(j)].position));
      }
      candidates.push_back(std::move(cand));
    } else if (bd == 1 || bd == 2) {
      for (int jstar = 0; jstar < k; ++jstar) {
        bool others_ok = true;
        for (int j = 0; j < k && others_ok; ++j)
          if (j != jstar)
            others_ok = reps[static_cast<std::size_t>(j)].ok &&
                        reps[static_cast<std::size_t>(j)].value == 0;
        if (!others_ok) continue;
        if (bd == 1 && (!reps[static_cast<std::size_t>(jstar)].ok ||
                        reps[static_cast<std::size_t>(jstar)].value != 1))
          continue;
        detail::NdCandidate cand;
        cand.trace.delta = delta;
        Word il{p.q, {}};
        for (int j = 0; j < k; ++j) {
          if (j == jstar) {
            cand.strings.push_back(mu2j[static_cast<std::size_t>(j)]);
            cand.trace.per_string.push_back("starred");
          } else {
            cand.strings.push_back(zero_deleted(j));
            cand.trace.per_string.push_back(
                "drop 0 @" + std::to_string(reps[static_cast<std::size_t>(j)].position));
          }
          il.s.insert(il.s.end(), cand.strings.back().s.begin(), cand.strings.back().s.end());
        }
        long asum_err = 0;
        {
          auto [od, ev] = odd_even(il);
          long od_sum = 0, ev_sum = 0;
          for (Symbol v : od.s) od_sum += v;
          for (Symbol v : ev.s) ev_sum += v;
          asum_err = detail::mod_pos(od_sum - p.abar[0], p.q) +
                     detail::mod_pos(ev_sum - p.abar[1], p.q);
        }
        try {
          Word il_fixed;
          if (asum_err % p.q != 0) {
            il_fixed = tq_decode(il, static_cast<std::size_t>(mu_len),
                                 TqParams{p.abar[3], p.bbar[3], mu_len});
            cand.trace.tq_stage = TqStage::Concat;
          } else {
            Word r_fixed = tq_decode(cusum(il), static_cast<std::size_t>(mu_len),
                                     TqParams{p.abar[2], p.bbar[2], mu_len});
            il_fixed = difference(r_fixed);
            cand.trace.tq_stage = TqStage::Cusum;
          }
          std::size_t at = 0;
          for (int j = 0; j < k; ++j) {
            cand.strings[static_cast<std::size_t>(j)] =
                Word{p.q, std::vector<Symbol>(
                              il_fixed.s.begin() + static_cast<std::ptrdiff_t>(at),
                              il_fixed.s.begin() + static_cast<std::ptrdiff_t>(
                                                       at + lengths[static_cast<std::size_t>(j)]))};
            at += lengths[static_cast<std::size_t>(j)];
          }
          candidates.push_back(std::move(cand));
        } catch (const DecodeError&) {
          // wrong starred-string hypothesis; other candidates may succeed
        }
      }
    } else {
      throw_branch("delta +k with impossible weight delta");
    }
  } else {  // delta == 2k
    if (bd != 2) throw_branch("delta +2k must raise the weight by two");
    // per-string candidates after removing the two inserted 0s
    std::vector<std::vector<std::pair<Word, std::string>>> zero_fixes(
        static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      const Word& cur = mu2j[static_cast<std::size_t>(j)];
      const int len = static_cast<int>(lengths[static_cast<std::size_t>(j)]);
      const int ma = 2 * len + 3, mc = 2 * len + 1;
      auto consider = [&](std::size_t p1, std::size_t p2) {
        if (cur.s[p1] != 0 || cur.s[p2] != 0) return;
        Word w = detail::erase2(cur, p1, p2);
        Word sw = indicator(w);
        if (vt_syndrome(sw, ma) != p.a[static_cast<std::size_t>(j)] ||
            detail::guard_ct(sw, mc) != p.c[static_cast<std::size_t>(j)])
          return;
        auto& list = zero_fixes[static_cast<std::size_t>(j)];
        for (const auto& [prev, note] : list)
          if (prev == w) return;
        list.emplace_back(std::move(w),
                          "drop 00 @" + std::to_string(p1 + 1) + "," + std::to_string(p2 + 1));
      };
      for (std::size_t p1 = 0; p1 + 1 < cur.size(); ++p1) {
        consider(p1, p1 + 1);
        if (p1 + 2 < cur.size()) consider(p1, p1 + 2);
      }
    }
    for (int jstar = 0; jstar < k; ++jstar) {
      bool others_ok = true;
      for (int j = 0; j < k && others_ok; ++j)
        if (j != jstar) others_ok = !zero_fixes[static_cast<std::size_t>(j)].empty();
      if (!others_ok) continue;
      // iterate every per-string choice combination (normally a single one)
      std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
      while (true) {
        detail::NdCandidate cand;
        cand.trace.delta = delta;
        cand.trace.tq_stage = TqStage::OddEven;
        Word il{p.q, {}};
        for (int j = 0; j < k; ++j) {
          if (j == jstar) {
            cand.strings.push_back(mu2j[static_cast<std::size_t>(j)]);
            cand.trace.per_string.push_back("starred");
          } else {
            const auto& [w, note] =
                zero_fixes[static_cast<std::size_t>(j)][pick[static_cast<std::size_t>(j)]];
            cand.strings.push_back(w);
            cand.trace.per_string.push_back(note);
          }
          il.s.insert(il.s.end(), cand.strings.back().s.begin(), cand.strings.back().s.end());
        }
        const int m_oe = (p.n - k + 1) / 2;
        try {
          auto [od, ev] = odd_even(il);
          Word od_fixed = tq_decode(od, static_cast<std::size_t>(m_oe),
                                    TqParams{p.abar[0], p.bbar[0], m_oe});
          Word ev_fixed = tq_decode(ev, static_cast<std::size_t>(mu_len - m_oe),
                                    TqParams{p.abar[1], p.bbar[1], m_oe});
          Word il_fixed = merge_odd_even(od_fixed, ev_fixed);
          std::size_t at = 0;
          for (int j = 0; j < k; ++j) {
            cand.strings[static_cast<std::size_t>(j)] =
                Word{p.q, std::vector<Symbol>(
                              il_fixed.s.begin() + static_cast<std::ptrdiff_t>(at),
                              il_fixed.s.begin() + static_cast<std::ptrdiff_t>(
                                                       at + lengths[static_cast<std::size_t>(j)]))};
            at += lengths[static_cast<std::size_t>(j)];
          }
          candidates.push_back(std::move(cand));
        } catch (const DecodeError&) {
        }
        // advance the choice combination
        int j = 0;
        while (j < k) {
          if (j == jstar) {
            ++j;
            continue;
          }
          if (++pick[static_cast<std::size_t>(j)] <
              zero_fixes[static_cast<std::size_t>(j)].size())
            break;
          pick[static_cast<std::size_t>(j)] = 0;
          ++j;
        }
        if (j >= k) break;
      }
    }
  }

  // reconstruct, check membership, and insist on a unique survivor
  std::optional<std::pair<Word, DecodeTrace>> result;
  for (auto& cand : candidates) {
    Word il{p.q, {}};
    for (const Word& w : cand.strings) il.s.insert(il.s.end(), w.s.begin(), w.s.end());
    if (il.size() != static_cast<std::size_t>(mu_len)) continue;
    Word mu_rec = deinterleave(il, static_cast<std::size_t>(mu_len), k);
    Word x = phi_inv(TransformPair{head, mu_rec, k});
    if (!nd_membership(x, p)) continue;
    if (result && !(result->first == x))
      throw DecodeError("nd_decode: ambiguous candidates survive membership");
    if (!result) result = {std::move(x), std::move(cand.trace)};
  }
  if (!result) throw DecodeError("nd_decode: no candidate passes membership");

  if (opt.cone_check) {
    int t = static_cast<int>((received.size() - static_cast<std::size_t>(p.n)) /
                             static_cast<std::size_t>(p.k));
    auto cone = descendants(result->first, p.k, t, 1, opt.cone_budget);
    if (!std::binary_search(cone.begin(), cone.end(), received))
      throw DecodeError("nd_decode: decoded word does not reach the received word");
  }
  return *result;
}

}  // namespace ndcode
