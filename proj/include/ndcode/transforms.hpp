#pragma once

#include <stdexcept>
#include <utility>

#include "ndcode/word.hpp"

namespace ndcode {

/// (head, tail) decomposition of a word under the k-discrete-derivative:
/// head is the first k symbols, tail the lag-k differences mod q.
struct TransformPair {
  Word head;  // length k
  Word tail;  // length |x| - k
  int k = 1;
};

namespace detail {
inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}
}  // namespace detail

inline TransformPair phi(const Word& x, int k) {
  detail::require(k >= 1, "phi: k must be >= 1");
  detail::require(x.size() >= static_cast<std::size_t>(k), "phi: word shorter than k");
  TransformPair p;
  p.k = k;
  p.head = Word{x.q, std::vector<Symbol>(x.s.begin(), x.s.begin() + k)};
  p.tail = Word{x.q, {}};
  p.tail.s.reserve(x.size() - k);
  for (std::size_t i = k; i < x.size(); ++i)
    p.tail.s.push_back(static_cast<Symbol>((x.s[i] + x.q - x.s[i - k]) % x.q));
  return p;
}

inline Word phi_inv(const TransformPair& p) {
  detail::require(p.head.size() == static_cast<std::size_t>(p.k),
                  "phi_inv: head length must equal k");
  detail::require(p.head.q == p.tail.q, "phi_inv: alphabet mismatch");
  Word x = p.head;
  x.s.reserve(p.head.size() + p.tail.size());
  for (std::size_t i = 0; i < p.tail.size(); ++i)
    x.s.push_back(static_cast<Symbol>((p.tail.s[i] + x.s[i]) % x.q));
  return x;
}

/// Shorthand for the lag-k difference part alone.
inline Word phi_bar(const Word& x, int k) { return phi(x, k).tail; }

/// Reduces every maximal zero-run of length m to length m mod k.
/// The output contains no 0^k substring; mu is idempotent.
inline Word mu(const Word& z, int k) {
  detail::require(k >= 1, "mu: k must be >= 1");
  Word out{z.q, {}};
  out.s.reserve(z.size());
  std::size_t i = 0;
  while (i < z.size()) {
    if (z.s[i] != 0) {
      out.s.push_back(z.s[i]);
      ++i;
    } else {
      std::size_t j = i;
      while (j < z.size() && z.s[j] == 0) ++j;
      for (std::size_t t = 0; t < (j - i) % static_cast<std::size_t>(k); ++t)
        out.s.push_back(0);
      i = j;
    }
  }
  return out;
}

/// Duplication root: unique ancestor with no length-k tandem repeat.
inline Word root(const Word& x, int k) {
  TransformPair p = phi(x, k);
  p.tail = mu(p.tail, k);
  return phi_inv(p);
}

inline bool is_irreducible(const Word& x, int k) {
  detail::require(k >= 1, "is_irreducible: k must be >= 1");
  detail::require(x.size() >= static_cast<std::size_t>(k),
                  "is_irreducible: word shorter than k");
  // equivalent to root(x) == x: the lag-k difference has no 0^k run
  int run = 0;
  for (std::size_t i = k; i < x.size(); ++i) {
    if (x.s[i] == x.s[i - k]) {
      if (++run == k) return false;
    } else {
      run = 0;
    }
  }
  return true;
}

/// Binary mask of the nonzero positions.
inline Word indicator(const Word& z) {
  Word out{2, {}};
  out.s.reserve(z.size());
  for (Symbol v : z.s) out.s.push_back(v != 0 ? 1 : 0);
  return out;
}

/// Extracts the entries at positions congruent to j mod k (1-based j in [1,k]).
inline Word split(const Word& u, int j, int k) {
  detail::require(k >= 1 && j >= 1 && j <= k, "split: j must be in [1,k]");
  Word out{u.q, {}};
  for (std::size_t pos = static_cast<std::size_t>(j); pos <= u.size();
       pos += static_cast<std::size_t>(k))
    out.s.push_back(u.s[pos - 1]);
  return out;
}

/// Concatenation split(u,1)...split(u,k).
inline Word interleave(const Word& u, int k) {
  detail::require(k >= 1, "interleave: k must be >= 1");
  Word out{u.q, {}};
  out.s.reserve(u.size());
  for (int j = 1; j <= k; ++j) {
    Word part = split(u, j, k);
    out.s.insert(out.s.end(), part.s.begin(), part.s.end());
  }
  return out;
}

/// Inverse of interleave given the original length.
inline Word deinterleave(const Word& v, std::size_t original_length, int k) {
  detail::require(k >= 1, "deinterleave: k must be >= 1");
  detail::require(original_length == v.size(), "deinterleave: length mismatch");
  Word out{v.q, std::vector<Symbol>(v.size())};
  std::size_t at = 0;
  for (int j = 1; j <= k; ++j) {
    for (std::size_t pos = static_cast<std::size_t>(j); pos <= v.size();
         pos += static_cast<std::size_t>(k))
      out.s[pos - 1] = v.s[at++];
  }
  return out;
}

/// Prefix sums mod q.
inline Word cusum(const Word& z) {
  Word out{z.q, {}};
  out.s.reserve(z.size());
  int acc = 0;
  for (Symbol v : z.s) {
    acc = (acc + v) % z.q;
    out.s.push_back(static_cast<Symbol>(acc));
  }
  return out;
}

/// First differences mod q; inverse of cusum.
inline Word difference(const Word& r) {
  Word out{r.q, {}};
  out.s.reserve(r.size());
  int prev = 0;
  for (Symbol v : r.s) {
    out.s.push_back(static_cast<Symbol>((v + r.q - prev) % r.q));
    prev = v;
  }
  return out;
}

inline std::pair<Word, Word> odd_even(const Word& z) {
  return {split(z, 1, 2), split(z, 2, 2)};
}

/// Inverse of odd_even; |odd| must equal |even| or |even|+1.
inline Word merge_odd_even(const Word& odd, const Word& even) {
  detail::require(odd.q == even.q, "merge_odd_even: alphabet mismatch");
  detail::require(odd.size() == even.size() || odd.size() == even.size() + 1,
                  "merge_odd_even: length mismatch");
  Word out{odd.q, {}};
  out.s.reserve(odd.size() + even.size());
  for (std::size_t i = 0; i < odd.size(); ++i) {
    out.s.push_back(odd.s[i]);
    if (i < even.size()) out.s.push_back(even.s[i]);
  }
  return out;
}

/// Ascent/descent mask used by Tenengolts' code: bit 1 marks z_i >= z_{i-1},
/// with the first bit fixed to 1.
inline Word zeta(const Word& z) {
  Word out{2, {}};
  out.s.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    out.s.push_back(i == 0 || z.s[i] >= z.s[i - 1] ? 1 : 0);
  return out;
}

}  // namespace ndcode
