#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "ndcode/errors.hpp"
#include "ndcode/transforms.hpp"
#include "ndcode/word.hpp"

// Varshamov-Tenengolts (binary) and Tenengolts (q-ary) single-indel codes,
// in the variable-length form used here: membership constrains only the
// congruences, decoding additionally requires the original length from the
// caller.

namespace ndcode {

struct VtParams {
  int a = 0;  // syndrome residue, 0 <= a <= m-1
  int m = 1;  // modulus
};

struct TqParams {
  int alpha = 0;  // symbol-sum residue mod q
  int beta = 0;   // zeta-syndrome residue mod m
  int m = 1;
};

inline int vt_syndrome(const Word& u, int m) {
  detail::require(u.q == 2, "vt_syndrome: binary word expected");
  detail::require(m >= 1 && u.size() + 1 <= static_cast<std::size_t>(m),
                  "vt_syndrome: length exceeds m-1");
  long long acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u.s[i]) acc += static_cast<long long>(i + 1);
  return static_cast<int>(acc % m);
}

inline bool vt_member(const Word& u, const VtParams& p) {
  return vt_syndrome(u, p.m) == p.a;
}

inline std::pair<int, int> tq_syndromes(const Word& z, int m) {
  detail::require(m >= 1 && z.size() <= static_cast<std::size_t>(m),
                  "tq_syndromes: length exceeds m");
  long long alpha = 0, beta = 0;
  Word zb = zeta(z);
  for (std::size_t i = 0; i < z.size(); ++i) {
    alpha += z.s[i];
    if (zb.s[i]) beta += static_cast<long long>(i);  // weight (i-1) for 1-based i
  }
  return {static_cast<int>(alpha % z.q), static_cast<int>(beta % m)};
}

inline bool tq_member(const Word& z, const TqParams& p) {
  auto [alpha, beta] = tq_syndromes(z, p.m);
  return alpha == p.alpha && beta == p.beta;
}

namespace detail {

constexpr std::size_t kExhaustiveDecodeLimit = 12;

inline int weight(const Word& u) {
  int w = 0;
  for (Symbol v : u.s) w += (v != 0);
  return w;
}

inline Word erase_at(const Word& u, std::size_t pos0) {
  Word out = u;
  out.s.erase(out.s.begin() + static_cast<std::ptrdiff_t>(pos0));
  return out;
}

inline Word insert_at(const Word& u, std::size_t slot0, Symbol v) {
  Word out = u;
  out.s.insert(out.s.begin() + static_cast<std::ptrdiff_t>(slot0), v);
  return out;
}

// Enumerates every word within one indel of r that has length n_orig and
// satisfies pred; returns the distinct matches.
template <typename Pred>
std::vector<Word> indel_candidates(const Word& r, std::size_t n_orig, int nvalues,
                                   Pred&& pred) {
  std::vector<Word> out;
  auto add = [&out](Word w) {
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
  };
  if (r.size() == n_orig) {
    if (pred(r)) add(r);
  } else if (r.size() == n_orig + 1) {
    for (std::size_t p = 0; p < r.size(); ++p) {
      if (p > 0 && r.s[p] == r.s[p - 1]) continue;  // same word as deleting p-1
      Word w = erase_at(r, p);
      if (pred(w)) add(std::move(w));
    }
  } else if (r.size() + 1 == n_orig) {
    for (std::size_t slot = 0; slot <= r.size(); ++slot) {
      for (int v = 0; v < nvalues; ++v) {
        if (slot > 0 && r.s[slot - 1] == v) continue;  // canonical run slot
        Word w = insert_at(r, slot, static_cast<Symbol>(v));
        if (pred(w)) add(std::move(w));
      }
    }
  }
  return out;
}

inline int ones_from(const Word& r, std::size_t idx0) {
  int c = 0;
  for (std::size_t i = idx0; i < r.size(); ++i) c += (r.s[i] != 0);
  return c;
}

}  // namespace detail

/// Decodes a single insertion or deletion against C_VT(a, m), given the
/// original length. For |r| == n_orig the syndrome is verified and r
/// returned unchanged. Classic run arithmetic, cross-checked against an
/// exhaustive candidate scan for short words.
inline Word vt_decode(const Word& r, std::size_t n_orig, const VtParams& p) {
  detail::require(r.q == 2, "vt_decode: binary word expected");
  detail::require(n_orig + 1 <= static_cast<std::size_t>(p.m), "vt_decode: n_orig exceeds m-1");
  detail::require(r.size() + 1 >= n_orig && r.size() <= n_orig + 1,
                  "vt_decode: received length must be within one of n_orig");

  std::optional<Word> fast;
  const int m = p.m;
  if (r.size() == n_orig) {
    if (vt_syndrome(r, m) == p.a) fast = r;
  } else if (r.size() + 1 == n_orig) {
    // deletion: delta = r1 for a lost 0, delta = pos + r1 for a lost 1
    int delta = static_cast<int>(
        ((p.a - vt_syndrome(r, m)) % m + m) % m);
    int w = detail::weight(r);
    auto try_insert_zero = [&]() -> std::optional<Word> {
      if (delta > w) return std::nullopt;
      int ones = 0;
      for (std::size_t slot = r.size();; --slot) {
        if (ones == delta) {
          Word cand = detail::insert_at(r, slot, 0);
          if (vt_syndrome(cand, m) == p.a) return cand;
          return std::nullopt;
        }
        if (slot == 0) break;
        ones += (r.s[slot - 1] != 0);
      }
      return std::nullopt;
    };
    auto try_insert_one = [&]() -> std::optional<Word> {
      int l0 = delta - 1 - w;  // zeros to the left of the lost 1
      int zeros = static_cast<int>(r.size()) - w;
      if (l0 < 0 || l0 > zeros) return std::nullopt;
      std::size_t slot = 0;
      int seen = 0;
      while (seen < l0) {
        if (r.s[slot] == 0) ++seen;
        ++slot;
      }
      Word cand = detail::insert_at(r, slot, 1);
      if (vt_syndrome(cand, m) == p.a) return cand;
      return std::nullopt;
    };
    if (auto c = try_insert_zero()) fast = *c;
    else if (auto c1 = try_insert_one()) fast = *c1;
  } else {
    // insertion: delta = r1 for an extra 0, delta = pos + r1 for an extra 1
    int delta = static_cast<int>(
        ((vt_syndrome(r, m) - p.a) % m + m) % m);
    auto try_delete_zero = [&]() -> std::optional<Word> {
      for (std::size_t pos = 0; pos < r.size(); ++pos)
        if (r.s[pos] == 0 && detail::ones_from(r, pos + 1) == delta) {
          Word cand = detail::erase_at(r, pos);
          if (vt_syndrome(cand, m) == p.a) return cand;
          return std::nullopt;
        }
      return std::nullopt;
    };
    auto try_delete_one = [&]() -> std::optional<Word> {
      for (std::size_t pos = 0; pos < r.size(); ++pos)
        if (r.s[pos] != 0 &&
            static_cast<int>(pos + 1) + detail::ones_from(r, pos + 1) == delta) {
          Word cand = detail::erase_at(r, pos);
          if (vt_syndrome(cand, m) == p.a) return cand;
          return std::nullopt;
        }
      return std::nullopt;
    };
    if (auto c = try_delete_zero()) fast = *c;
    else if (auto c1 = try_delete_one()) fast = *c1;
  }

  if (r.size() < detail::kExhaustiveDecodeLimit) {
    auto cands = detail::indel_candidates(
        r, n_orig, 2, [&](const Word& w) { return vt_syndrome(w, m) == p.a; });
    if (cands.size() > 1) throw DecodeError("vt_decode: ambiguous candidates");
    if (cands.empty()) throw DecodeError("vt_decode: no consistent codeword");
    if (fast && !(*fast == cands.front()))
      throw DecodeError("vt_decode: fast path disagrees with exhaustive scan");
    return cands.front();
  }
  if (!fast) throw DecodeError("vt_decode: no consistent codeword");
  return *fast;
}

struct VtReport {
  Word word;                          // the decoded original
  std::optional<Symbol> value;        // indel bit value; empty when no indel
  std::optional<std::size_t> position;  // leftmost consistent position, 1-based
};

/// vt_decode plus the bit value and canonical (leftmost) position of the
/// corrected indel. The value is unambiguous even when the position within a
/// run is not.
inline VtReport vt_decode_report(const Word& r, std::size_t n_orig, const VtParams& p) {
  VtReport rep{vt_decode(r, n_orig, p), std::nullopt, std::nullopt};
  const Word& w = rep.word;
  if (r.size() == w.size()) return rep;
  const Word& longer = r.size() > w.size() ? r : w;
  const Word& shorter = r.size() > w.size() ? w : r;
  std::size_t i = 0;
  while (i < shorter.size() && longer.s[i] == shorter.s[i]) ++i;
  rep.position = i + 1;
  rep.value = longer.s[i];
  return rep;
}

/// Decodes a single insertion or deletion against C_Tq(alpha, beta, m) given
/// the original length. The symbol-sum residue pins the indel value; the
/// zeta syndrome selects the position.
inline Word tq_decode(const Word& r, std::size_t n_orig, const TqParams& p) {
  detail::require(n_orig <= static_cast<std::size_t>(p.m), "tq_decode: n_orig exceeds m");
  detail::require(r.size() + 1 >= n_orig && r.size() <= n_orig + 1,
                  "tq_decode: received length must be within one of n_orig");
  const int q = r.q;
  long long rsum = 0;
  for (Symbol v : r.s) rsum += v;

  auto matches = [&](const Word& w) {
    auto [alpha, beta] = tq_syndromes(w, p.m);
    return alpha == p.alpha && beta == p.beta;
  };

  std::vector<Word> found;
  auto add = [&found](Word w) {
    if (std::find(found.begin(), found.end(), w) == found.end())
      found.push_back(std::move(w));
  };
  if (r.size() == n_orig) {
    if (matches(r)) add(r);
  } else if (r.size() == n_orig + 1) {
    // an insertion happened; the removed symbol's value is forced by alpha
    int v = static_cast<int>(((rsum - p.alpha) % q + q) % q);
    for (std::size_t pos = 0; pos < r.size(); ++pos) {
      if (r.s[pos] != v) continue;
      if (pos > 0 && r.s[pos - 1] == r.s[pos]) continue;
      Word w = detail::erase_at(r, pos);
      if (matches(w)) add(std::move(w));
    }
  } else {
    // a deletion happened; the re-inserted symbol's value is forced by alpha
    int v = static_cast<int>(((p.alpha - rsum) % q + q) % q);
    for (std::size_t slot = 0; slot <= r.size(); ++slot) {
      if (slot > 0 && r.s[slot - 1] == v) continue;
      Word w = detail::insert_at(r, slot, static_cast<Symbol>(v));
      if (matches(w)) add(std::move(w));
    }
  }

  if (r.size() < detail::kExhaustiveDecodeLimit) {
    auto cands = detail::indel_candidates(r, n_orig, q, matches);
    if (cands.size() != found.size())
      throw DecodeError("tq_decode: fast path disagrees with exhaustive scan");
  }
  if (found.size() > 1) throw DecodeError("tq_decode: ambiguous candidates");
  if (found.empty()) throw DecodeError("tq_decode: no consistent codeword");
  return found.front();
}

}  // namespace ndcode
