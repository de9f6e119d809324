#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ndcode/channel.hpp"
#include "ndcode/errors.hpp"
#include "ndcode/guard.hpp"
#include "ndcode/nd_code.hpp"
#include "ndcode/root_change.hpp"
#include "ndcode/transforms.hpp"
#include "ndcode/word.hpp"

// Brute-force verification of the claims the acceptance suite rests on:
// cone disjointness, exhaustive decodability, table coverage, and
// duplicate-implementation syndrome checks. The re-implementations here
// deliberately take different computational routes than the library and use
// only public membership plus enumeration.

namespace ndcode {

struct VerificationFailure {
  std::string input;
  std::string expected;
  std::string got;
};

struct VerificationReport {
  std::string scenario;
  std::uint64_t instances = 0;
  std::vector<VerificationFailure> failures;
  std::vector<std::string> notes;
  double elapsed_seconds = 0;

  bool passed() const { return failures.empty(); }
};

inline void format_report(std::ostream& os, const VerificationReport& r,
                          std::size_t max_failures = 20) {
  os << "scenario: " << r.scenario << '\n';
  os << "instances: " << r.instances << '\n';
  os << "failures: " << r.failures.size() << '\n';
  for (std::size_t i = 0; i < r.failures.size() && i < max_failures; ++i)
    os << "failure: input=" << r.failures[i].input
       << " expected=" << r.failures[i].expected << " got=" << r.failures[i].got
       << '\n';
  if (r.failures.size() > max_failures)
    os << "failure: ... " << (r.failures.size() - max_failures) << " more\n";
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  os << "elapsed_seconds: " << r.elapsed_seconds << '\n';
  os << "status: " << (r.failures.empty() ? "PASS" : "FAIL") << '\n';
}

namespace oracle {

// Sum of suffix weights equals the VT checksum; a different route on purpose.
inline int vt_syndrome_ref(const Word& u, int m) {
  long long acc = 0;
  for (std::size_t t = 0; t < u.size(); ++t) {
    long long suffix = 0;
    for (std::size_t i = t; i < u.size(); ++i) suffix += (u.s[i] != 0);
    acc += suffix;
  }
  return static_cast<int>(acc % m);
}

inline std::pair<int, int> tq_syndromes_ref(const Word& z, int m) {
  long long alpha = 0, beta = 0;
  for (std::size_t i = 0; i < z.size(); ++i) alpha += z.s[i];
  for (std::size_t i = 1; i < z.size(); ++i)
    if (z.s[i] >= z.s[i - 1]) beta += static_cast<long long>(i);
  return {static_cast<int>(alpha % z.q), static_cast<int>(beta % m)};
}

inline GuardSyndromes guard_syndromes_ref(const Word& u) {
  const long long n = static_cast<long long>(u.size());
  auto triangle = [](long long x) { return x * (x + 1) / 2; };
  long long t_acc = 0;
  int w = 0;
  for (std::size_t j = 0; j < u.size(); ++j)
    if (u.s[j]) {
      ++w;
      t_acc += triangle(n) - triangle(static_cast<long long>(j));
    }
  GuardSyndromes s;
  s.vt = vt_syndrome_ref(u, static_cast<int>(2 * n + 3));
  s.w = w % 5;
  s.t = static_cast<int>(t_acc % (2 * n + 1));
  return s;
}

/// The defining computation of the duplication root: repeatedly remove a
/// length-k tandem repeat until none is left.
inline Word root_by_removal(Word x, int k) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 2 * static_cast<std::size_t>(k) <= x.size(); ++i) {
      bool repeat = true;
      for (int d = 0; d < k && repeat; ++d)
        repeat = x.s[i + static_cast<std::size_t>(d)] ==
                 x.s[i + static_cast<std::size_t>(k + d)];
      if (repeat) {
        x.s.erase(x.s.begin() + static_cast<std::ptrdiff_t>(i),
                  x.s.begin() + static_cast<std::ptrdiff_t>(i) + k);
        changed = true;
        break;
      }
    }
  }
  return x;
}

/// Second descendant enumerator: depth-first over event sequences.
inline std::vector<Word> descendants_ref(const Word& x, int k, int t_max, int p_max) {
  std::unordered_set<Word, WordHash> out;
  auto rec = [&](auto&& self, const Word& w, int t, int p) -> void {
    out.insert(w);
    if (t == t_max || w.size() < static_cast<std::size_t>(k)) return;
    for (std::size_t i = 0; i + static_cast<std::size_t>(k) <= w.size(); ++i) {
      self(self, apply_td(w, i, k), t + 1, p);
      if (p < p_max)
        for (int off = 1; off <= k; ++off)
          for (int a = 1; a < w.q; ++a)
            self(self,
                 apply_nd(w, ChannelEvent{ChannelEvent::Kind::Noisy, i, off,
                                          static_cast<Symbol>(a)},
                          k),
                 t + 1, p + 1);
    }
  };
  rec(rec, x, 0, 0);
  std::vector<Word> v(out.begin(), out.end());
  std::sort(v.begin(), v.end());
  return v;
}

/// The syndrome tuple recomputed from scratch: root by literal repeat
/// removal, splitting by index arithmetic, reference syndrome routes.
inline CodeParams nd_syndromes_ref(const Word& x, int k) {
  CodeParams p;
  p.q = x.q;
  p.k = k;
  p.n = static_cast<int>(x.size());
  Word rt = root_by_removal(x, k);
  if (rt.size() != x.size())
    throw std::invalid_argument("nd_syndromes_ref: word is reducible");
  // lag-k differences of the root
  Word mu_w{x.q, {}};
  for (std::size_t i = static_cast<std::size_t>(k); i < rt.size(); ++i)
    mu_w.s.push_back(static_cast<Symbol>((rt.s[i] + x.q - rt.s[i - k]) % x.q));
  long long wsum = 0;
  for (int j = 1; j <= k; ++j) {
    Word sj{2, {}};
    for (std::size_t pos = static_cast<std::size_t>(j); pos <= mu_w.size();
         pos += static_cast<std::size_t>(k))
      sj.s.push_back(mu_w.s[pos - 1] != 0 ? 1 : 0);
    int len = static_cast<int>(sj.size());
    p.a.push_back(vt_syndrome_ref(sj, 2 * len + 3));
    GuardSyndromes gs = guard_syndromes_ref(sj);
    p.c.push_back(gs.t);
    for (Symbol v : sj.s) wsum += v;
  }
  p.b = static_cast<int>(wsum % 5);
  Word il{x.q, {}};
  for (int j = 1; j <= k; ++j)
    for (std::size_t pos = static_cast<std::size_t>(j); pos <= mu_w.size();
         pos += static_cast<std::size_t>(k))
      il.s.push_back(mu_w.s[pos - 1]);
  Word od{x.q, {}}, ev{x.q, {}};
  for (std::size_t i = 0; i < il.size(); ++i)
    (i % 2 == 0 ? od : ev).s.push_back(il.s[i]);
  Word cs{x.q, {}};
  long long acc = 0;
  for (Symbol v : il.s) {
    acc += v;
    cs.s.push_back(static_cast<Symbol>(acc % x.q));
  }
  const int m_oe = (p.n - k + 1) / 2;
  const int m_full = p.n - k;
  auto set = [&](int idx, std::pair<int, int> ab) {
    p.abar[static_cast<std::size_t>(idx)] = ab.first;
    p.bbar[static_cast<std::size_t>(idx)] = ab.second;
  };
  set(0, tq_syndromes_ref(od, m_oe));
  set(1, tq_syndromes_ref(ev, m_oe));
  set(2, tq_syndromes_ref(cs, m_full));
  set(3, tq_syndromes_ref(il, m_full));
  return p;
}

}  // namespace oracle

namespace detail {

// Runs fn(i) for i in [0, count) across `threads` workers; results must be
// written into index-addressed slots so the merge is order-independent.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/// Pairwise disjointness of the bounded descendant cones (<= 1 noisy
/// duplication) of every pair of codewords.
inline VerificationReport verify_cone_disjoint(const Codebook& book, int t_max,
                                               std::size_t budget = 10'000'000,
                                               int threads = 1) {
  detail::Stopwatch clock;
  VerificationReport rep;
  rep.scenario = "cone-disjoint";
  std::vector<std::vector<Word>> cones(book.words.size());
  detail::parallel_for(book.words.size(), threads, [&](std::size_t i) {
    cones[i] = descendants(book.words[i], book.params.k, t_max, 1, budget);
  });
  std::unordered_map<Word, std::size_t, WordHash> owner;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    rep.instances += cones[i].size();
    for (const Word& d : cones[i]) {
      auto [it, inserted] = owner.emplace(d, i);
      if (!inserted && it->second != i)
        rep.failures.push_back({to_string(d),
                                "descendant of only " + to_string(book.words[it->second]),
                                "also reached from " + to_string(book.words[i])});
    }
  }
  rep.notes.push_back("codewords: " + std::to_string(book.words.size()));
  rep.elapsed_seconds = clock.seconds();
  return rep;
}

/// nd_decode must return the codeword for every bounded-cone descendant.
inline VerificationReport verify_decode_exhaustive(const Codebook& book, int t_max,
                                                   std::size_t budget = 10'000'000,
                                                   int threads = 1) {
  detail::Stopwatch clock;
  VerificationReport rep;
  rep.scenario = "decode-exhaustive";
  std::vector<std::uint64_t> counts(book.words.size(), 0);
  std::vector<std::vector<VerificationFailure>> fails(book.words.size());
  std::vector<std::map<std::string, std::uint64_t>> tallies(book.words.size());
  detail::parallel_for(book.words.size(), threads, [&](std::size_t i) {
    const Word& c = book.words[i];
    for (const Word& d : descendants(c, book.params.k, t_max, 1, budget)) {
      ++counts[i];
      try {
        auto [decoded, trace] = nd_decode(d, book.params);
        if (!(decoded == c))
          fails[i].push_back({to_string(d), to_string(c), to_string(decoded)});
        std::string key = "delta " + std::to_string(trace.delta);
        if (trace.clean) key += " clean";
        if (trace.tq_stage != TqStage::None)
          key += std::string(", tq ") + to_string(trace.tq_stage);
        int swaps = 0;
        for (const std::string& note : trace.per_string)
          swaps += note.rfind("swap", 0) == 0;
        if (swaps > 0) key += ", swaps x" + std::to_string(swaps);
        ++tallies[i][key];
      } catch (const DecodeError& e) {
        fails[i].push_back({to_string(d), to_string(c), std::string("error: ") + e.what()});
      }
    }
  });
  std::map<std::string, std::uint64_t> branch_counts;
  for (std::size_t i = 0; i < book.words.size(); ++i) {
    rep.instances += counts[i];
    rep.failures.insert(rep.failures.end(), fails[i].begin(), fails[i].end());
    for (const auto& [key, count] : tallies[i]) branch_counts[key] += count;
  }
  for (const auto& [key, count] : branch_counts)
    rep.notes.push_back("branch (" + std::to_string(count) + "): " + key);
  rep.elapsed_seconds = clock.seconds();
  return rep;
}

namespace detail {

inline std::vector<std::pair<Word, GuardError::Type>> guard_menu_errors(const Word& u) {
  using T = GuardError::Type;
  std::vector<std::pair<Word, GuardError::Type>> out;
  auto add = [&](Word w, T t) { out.emplace_back(std::move(w), t); };
  const std::size_t n = u.size();
  for (std::size_t p = 0; p < n; ++p) add(erase_at(u, p), T::Deletion);
  for (std::size_t slot = 0; slot <= n; ++slot) {
    add(insert_at(u, slot, 0), T::Insertion0);
    add(insert_at(u, slot, 1), T::Insertion1);
  }
  for (std::size_t p = 0; p < n; ++p) {
    Word w = u;
    w.s[p] ^= 1;
    add(std::move(w), T::Substitution);
  }
  for (std::size_t p = 0; p + 1 < n; ++p) {
    if (u.s[p] != u.s[p + 1]) {
      Word w = u;
      std::swap(w.s[p], w.s[p + 1]);
      add(std::move(w), T::Transposition);
    } else {
      Word w = u;
      w.s[p] ^= 1;
      w.s[p + 1] ^= 1;
      add(std::move(w), T::DoubleSubstitution);
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    Word w = u;  // one bit becomes two
    if (u.s[p] == 0) {
      w.s[p] = 1;
      w.s.insert(w.s.begin() + static_cast<std::ptrdiff_t>(p) + 1, 1);
      add(std::move(w), T::Expand011);
    } else {
      w.s[p] = 0;
      w.s.insert(w.s.begin() + static_cast<std::ptrdiff_t>(p) + 1, 0);
      add(std::move(w), T::Expand100);
    }
  }
  for (std::size_t slot = 0; slot <= n; ++slot) {
    Word w1 = insert_at(insert_at(u, slot, 1), slot, 1);
    add(std::move(w1), T::Insert11);
    Word w0 = insert_at(insert_at(u, slot, 0), slot, 0);
    add(std::move(w0), T::Insert00);
  }
  for (std::size_t p = 0; p < n; ++p)
    if (u.s[p] == 1) {
      Word w = u;
      w.s[p] = 0;
      w.s.insert(w.s.begin() + static_cast<std::ptrdiff_t>(p) + 1, 1);
      w.s.insert(w.s.begin() + static_cast<std::ptrdiff_t>(p) + 2, 0);
      add(std::move(w), T::Insert010);
    }
  return out;
}

}  // namespace detail

/// Every word of Sigma_2^n is a codeword of its own (a,b,c) class; every
/// menu-error corruption of it must decode back. Also cross-checks the
/// syndromes against the reference implementation and the class partition.
inline VerificationReport verify_guard_exhaustive(int n) {
  detail::require(n >= 1 && n <= 12, "verify_guard_exhaustive: n must be in [1,12]");
  detail::Stopwatch clock;
  VerificationReport rep;
  rep.scenario = "guard-exhaustive n=" + std::to_string(n);
  std::uint64_t class_total = 0;
  std::map<std::tuple<int, int, int>, std::uint64_t> class_sizes;
  for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
    Word u{2, {}};
    for (int i = 0; i < n; ++i) u.s.push_back((bits >> i) & 1);
    GuardSyndromes s = guard_syndromes(u);
    GuardSyndromes s_ref = oracle::guard_syndromes_ref(u);
    if (!(s == s_ref)) {
      rep.failures.push_back({to_string(u), "syndromes agree with reference", "mismatch"});
      continue;
    }
    GuardParams params{static_cast<std::size_t>(n), s.vt, s.w, s.t};
    ++class_sizes[{s.vt, s.w, s.t}];
    ++class_total;
    if (!guard_membership(u, params)) {
      rep.failures.push_back({to_string(u), "member of own class", "not a member"});
      continue;
    }
    auto menu = detail::guard_menu_errors(u);
    rep.instances += menu.size() + 1;
    {
      auto [w, err] = guard_decode(u, params);
      if (!(w == u) || err.type != GuardError::Type::None)
        rep.failures.push_back({to_string(u), "clean decode", to_string(w)});
    }
    for (const auto& [r, type] : menu) {
      try {
        auto [w, err] = guard_decode(r, params);
        if (!(w == u))
          rep.failures.push_back({to_string(u) + " -> " + to_string(r) + " (" +
                                      to_string(type) + ")",
                                  to_string(u), to_string(w)});
      } catch (const DecodeError& e) {
        rep.failures.push_back({to_string(u) + " -> " + to_string(r) + " (" +
                                    to_string(type) + ")",
                                to_string(u), std::string("error: ") + e.what()});
      }
    }
  }
  if (class_total != (1ull << n))
    rep.failures.push_back({"partition", std::to_string(1ull << n),
                            std::to_string(class_total)});
  rep.notes.push_back("classes populated: " + std::to_string(class_sizes.size()));
  rep.elapsed_seconds = clock.seconds();
  return rep;
}

/// Generates every (mu, mu'') pair reachable with at most t_max duplications
/// (noisy one last, which is general: trailing exact duplications do not
/// change mu'') from every word of length k..n_max, classifies each pair,
/// and reports witnessed and unreached table rows.
inline VerificationReport verify_table_coverage(int q, int k, int n_max, int t_max,
                                                std::size_t budget = 10'000'000,
                                                int threads = 1) {
  detail::Stopwatch clock;
  VerificationReport rep;
  rep.scenario = "table-coverage q=" + std::to_string(q) + " k=" + std::to_string(k) +
                 " n<=" + std::to_string(n_max) + " t<=" + std::to_string(t_max);

  std::vector<Word> starts;
  for (int len = k; len <= n_max; ++len) {
    Word w{q, std::vector<Symbol>(static_cast<std::size_t>(len), 0)};
    while (true) {
      starts.push_back(w);
      if (starts.size() > budget)
        throw EnumerationLimitError("verify_table_coverage: start-word budget exceeded");
      int pos = len - 1;
      while (pos >= 0 && w.s[static_cast<std::size_t>(pos)] == q - 1)
        w.s[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
      ++w.s[static_cast<std::size_t>(pos)];
    }
  }

  using PairSet = std::unordered_set<std::string>;
  std::vector<PairSet> sets(starts.size());
  detail::parallel_for(starts.size(), threads, [&](std::size_t idx) {
    const Word& x = starts[idx];
    Word mu_x = mu(phi_bar(x, k), k);
    std::string mu_key = to_string(mu_x);
    PairSet& pairs = sets[idx];
    pairs.insert(mu_key + "|" + mu_key);  // exact-only channel output
    for (const Word& y : descendants(x, k, t_max - 1, 0, budget)) {
      for (std::size_t i = 0; i + static_cast<std::size_t>(k) <= y.size(); ++i)
        for (int off = 1; off <= k; ++off)
          for (int a = 1; a < q; ++a) {
            Word out = apply_nd(
                y, ChannelEvent{ChannelEvent::Kind::Noisy, i, off, static_cast<Symbol>(a)}, k);
            pairs.insert(mu_key + "|" + to_string(mu(phi_bar(out, k), k)));
          }
    }
  });
  PairSet all;
  for (auto& s : sets) {
    all.insert(s.begin(), s.end());
    if (all.size() > budget)
      throw EnumerationLimitError("verify_table_coverage: pair budget exceeded");
    s.clear();
  }

  std::map<std::string, std::uint64_t> witnessed;
  for (const std::string& key : all) {
    ++rep.instances;
    auto bar = key.find('|');
    Word before = parse_word(key.substr(0, bar), q);
    Word after = parse_word(key.substr(bar + 1), q);
    try {
      RootChange rc = classify_root_change(before, after, k);
      for (const std::string& row : rc.rows) ++witnessed[row];
    } catch (const DecodeError&) {
      rep.failures.push_back({key, "some table row", "unclassified"});
    }
  }
  for (const std::string& row : rows::all()) {
    auto it = witnessed.find(row);
    if (it != witnessed.end())
      rep.notes.push_back("row witnessed (" + std::to_string(it->second) + "): " + row);
    else
      rep.notes.push_back("row unreached: " + row);
  }
  rep.elapsed_seconds = clock.seconds();
  return rep;
}

}  // namespace ndcode
