#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ndcode/errors.hpp"
#include "ndcode/transforms.hpp"
#include "ndcode/word.hpp"

// Exact and noisy tandem-duplication operators, descendant-cone enumeration
// and seeded channel sampling. Event positions are 0-based prefix lengths:
// `position = i` duplicates the k symbols following the first i.

namespace ndcode {

struct ChannelEvent {
  enum class Kind { Exact, Noisy };
  Kind kind = Kind::Exact;
  std::size_t position = 0;  // prefix length before the duplicated block
  int copy_offset = 0;       // index in [1,k] of the substituted copy symbol (noisy only)
  Symbol noise = 0;          // added value in [1,q-1] (noisy only)

  friend bool operator==(const ChannelEvent&, const ChannelEvent&) = default;
};

/// Duplicates the length-k block after prefix length i. Words too short for
/// the block are returned unchanged.
inline Word apply_td(const Word& x, std::size_t i, int k) {
  detail::require(k >= 1, "apply_td: k must be >= 1");
  if (i + static_cast<std::size_t>(k) > x.size()) return x;
  Word out{x.q, {}};
  out.s.reserve(x.size() + k);
  out.s.insert(out.s.end(), x.s.begin(), x.s.begin() + static_cast<std::ptrdiff_t>(i + k));
  out.s.insert(out.s.end(), x.s.begin() + static_cast<std::ptrdiff_t>(i),
               x.s.begin() + static_cast<std::ptrdiff_t>(i + k));
  out.s.insert(out.s.end(), x.s.begin() + static_cast<std::ptrdiff_t>(i + k), x.s.end());
  return out;
}

/// Noisy duplication: exact duplication followed by adding `noise` to the
/// copy symbol selected by copy_offset.
inline Word apply_nd(const Word& x, const ChannelEvent& e, int k) {
  detail::require(e.kind == ChannelEvent::Kind::Noisy, "apply_nd: noisy event expected");
  detail::require(e.position + static_cast<std::size_t>(k) <= x.size(),
                  "apply_nd: invalid position");
  detail::require(e.copy_offset >= 1 && e.copy_offset <= k,
                  "apply_nd: copy_offset out of [1,k]");
  detail::require(e.noise >= 1 && e.noise < x.q, "apply_nd: noise out of [1,q-1]");
  Word out = apply_td(x, e.position, k);
  std::size_t p = e.position + static_cast<std::size_t>(k) +
                  static_cast<std::size_t>(e.copy_offset);  // 1-based in the output
  out.s[p - 1] = static_cast<Symbol>((out.s[p - 1] + e.noise) % x.q);
  return out;
}

inline Word apply_event(const Word& x, const ChannelEvent& e, int k) {
  return e.kind == ChannelEvent::Kind::Exact ? apply_td(x, e.position, k)
                                             : apply_nd(x, e, k);
}

/// All words reachable with at most t_max duplications of which at most
/// p_max (<= 1) are noisy, deduplicated and sorted. The budget bounds the
/// number of (word, noisy-count) states visited.
inline std::vector<Word> descendants(const Word& x, int k, int t_max, int p_max,
                                     std::size_t budget = 10'000'000) {
  detail::require(p_max >= 0 && p_max <= 1, "descendants: p_max must be 0 or 1");
  detail::require(t_max >= p_max, "descendants: t_max must be >= p_max");
  struct StateHash {
    std::size_t operator()(const std::pair<Word, int>& s) const {
      return WordHash{}(s.first) * 31 + static_cast<std::size_t>(s.second);
    }
  };
  std::unordered_set<std::pair<Word, int>, StateHash> seen;
  std::vector<std::pair<Word, int>> frontier{{x, 0}};
  seen.insert(frontier.front());
  std::unordered_set<Word, WordHash> words{x};
  for (int t = 1; t <= t_max; ++t) {
    std::vector<std::pair<Word, int>> next;
    for (const auto& [w, used] : frontier) {
      if (w.size() < static_cast<std::size_t>(k)) continue;
      for (std::size_t i = 0; i + k <= w.size(); ++i) {
        auto push = [&](Word&& d, int u) {
          auto st = std::make_pair(std::move(d), u);
          if (seen.insert(st).second) {
            if (seen.size() > budget)
              throw EnumerationLimitError("descendants: node budget exceeded");
            words.insert(st.first);
            next.push_back(std::move(st));
          }
        };
        push(apply_td(w, i, k), used);
        if (used < p_max) {
          for (int off = 1; off <= k; ++off)
            for (int a = 1; a < w.q; ++a) {
              ChannelEvent e{ChannelEvent::Kind::Noisy, i, off, static_cast<Symbol>(a)};
              push(apply_nd(w, e, k), used + 1);
            }
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  std::vector<Word> out(words.begin(), words.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {
// Deterministic bounded uniform draw (multiply-shift on the high 32 bits),
// independent of any library distribution implementation. n < 2^32.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  return ((rng() >> 32) * n) >> 32;
}
}  // namespace detail

/// Applies t duplications at uniformly random valid positions; when noisy,
/// exactly one uniformly chosen duplication gets a uniform offset and noise
/// value. Deterministic for a fixed seed.
inline std::pair<Word, std::vector<ChannelEvent>> sample_channel(
    const Word& x, int k, int t, bool noisy, std::uint64_t seed) {
  detail::require(t >= 0, "sample_channel: t must be >= 0");
  detail::require(!noisy || t >= 1, "sample_channel: noisy requires t >= 1");
  detail::require(t == 0 || x.size() >= static_cast<std::size_t>(k),
                  "sample_channel: word shorter than k");
  std::mt19937_64 rng(seed);
  std::size_t noisy_step =
      noisy ? static_cast<std::size_t>(detail::bounded(rng, static_cast<std::uint64_t>(t))) + 1
            : 0;
  Word w = x;
  std::vector<ChannelEvent> log;
  log.reserve(static_cast<std::size_t>(t));
  for (int step = 1; step <= t; ++step) {
    std::size_t positions = w.size() - static_cast<std::size_t>(k) + 1;
    ChannelEvent e;
    e.position = static_cast<std::size_t>(detail::bounded(rng, positions));
    if (static_cast<std::size_t>(step) == noisy_step) {
      e.kind = ChannelEvent::Kind::Noisy;
      e.copy_offset = static_cast<int>(detail::bounded(rng, static_cast<std::uint64_t>(k))) + 1;
      e.noise = static_cast<Symbol>(detail::bounded(rng, static_cast<std::uint64_t>(w.q - 1)) + 1);
    }
    w = apply_event(w, e, k);
    log.push_back(e);
  }
  return {std::move(w), std::move(log)};
}

/// One event per line: `exact i` or `noisy i offset a` (i is the 0-based
/// prefix length of Eq-style positions).
inline void write_event_log(std::ostream& os, const std::vector<ChannelEvent>& events) {
  for (const auto& e : events) {
    if (e.kind == ChannelEvent::Kind::Exact)
      os << "exact " << e.position << '\n';
    else
      os << "noisy " << e.position << ' ' << e.copy_offset << ' '
         << static_cast<int>(e.noise) << '\n';
  }
}

inline std::vector<ChannelEvent> read_event_log(std::istream& is) {
  std::vector<ChannelEvent> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ChannelEvent e;
    ls >> kind;
    if (kind == "exact") {
      if (!(ls >> e.position)) throw std::invalid_argument("event log: bad exact line");
    } else if (kind == "noisy") {
      int off = 0, a = 0;
      if (!(ls >> e.position >> off >> a))
        throw std::invalid_argument("event log: bad noisy line");
      e.kind = ChannelEvent::Kind::Noisy;
      e.copy_offset = off;
      e.noise = static_cast<Symbol>(a);
    } else {
      throw std::invalid_argument("event log: unknown event kind");
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace ndcode
