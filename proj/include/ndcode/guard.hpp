#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ndcode/errors.hpp"
#include "ndcode/indel.hpp"
#include "ndcode/word.hpp"

// Binary code cut out by three congruences (a VT checksum mod 2n+3, the
// weight mod 5 and a weighted prefix-sum mod 2n+1) together with the decoder
// that corrects a single occurrence of: an indel, a substitution, an
// adjacent transposition, 00<->11, 0->11, 1->00, or an insertion of 11, 00
// or 0-1-0.

namespace ndcode {

struct GuardParams {
  std::size_t n = 1;  // codeword length
  int a = 0;          // VT residue mod 2n+3
  int b = 0;          // weight residue mod 5
  int c = 0;          // prefix-sum residue mod 2n+1
};

struct GuardSyndromes {
  int vt = 0;  // mod 2n+3
  int w = 0;   // mod 5
  int t = 0;   // mod 2n+1
  friend bool operator==(const GuardSyndromes&, const GuardSyndromes&) = default;
};

struct GuardError {
  enum class Type {
    None,
    Deletion,
    Insertion0,
    Insertion1,
    Substitution,
    DoubleSubstitution,  // 00 <-> 11
    Expand011,           // 0 -> 11
    Expand100,           // 1 -> 00
    Transposition,
    Insert11,
    Insert00,
    Insert010,
  };
  Type type = Type::None;
  std::size_t position = 0;  // 1-based; 0 when type == None
};

inline const char* to_string(GuardError::Type t) {
  using T = GuardError::Type;
  switch (t) {
    case T::None: return "none";
    case T::Deletion: return "deletion";
    case T::Insertion0: return "insertion0";
    case T::Insertion1: return "insertion1";
    case T::Substitution: return "substitution";
    case T::DoubleSubstitution: return "double-substitution";
    case T::Expand011: return "expand(0->11)";
    case T::Expand100: return "expand(1->00)";
    case T::Transposition: return "transposition";
    case T::Insert11: return "insert11";
    case T::Insert00: return "insert00";
    case T::Insert010: return "insert010";
  }
  return "?";
}

namespace detail {

inline int mod_pos(long long v, long long m) {
  return static_cast<int>(((v % m) + m) % m);
}

inline int guard_ct(const Word& u, long long m) {
  long long acc = 0, prefix = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    prefix += u.s[i];
    acc = (acc + static_cast<long long>(i + 1) * prefix) % m;
  }
  return static_cast<int>(acc);
}

// maps a mod-5 weight delta to its signed representative in {-2..2}
inline int signed_mod5(long long delta) {
  int d = mod_pos(delta, 5);
  return d <= 2 ? d : d - 5;
}

}  // namespace detail

/// The three residues of u with n = |u|.
inline GuardSyndromes guard_syndromes(const Word& u) {
  detail::require(u.q == 2, "guard_syndromes: binary word expected");
  const long long n = static_cast<long long>(u.size());
  GuardSyndromes s;
  s.vt = vt_syndrome(u, static_cast<int>(2 * n + 3));
  s.w = detail::mod_pos(detail::weight(u), 5);
  s.t = detail::guard_ct(u, 2 * n + 1);
  return s;
}

inline bool guard_membership(const Word& u, const GuardParams& p) {
  detail::require(u.size() == p.n, "guard_membership: length mismatch");
  GuardSyndromes s = guard_syndromes(u);
  return s.vt == p.a && s.w == p.b && s.t == p.c;
}

/// Decodes one occurrence of a menu error (or none). The received length
/// must be within {-1,0,+1,+2} of p.n. The length delta and the signed
/// weight delta select the error class; the VT and prefix-sum residues
/// locate the position; every branch re-verifies all three congruences.
inline std::pair<Word, GuardError> guard_decode(const Word& r, const GuardParams& p) {
  detail::require(r.q == 2, "guard_decode: binary word expected");
  const long long n = static_cast<long long>(p.n);
  const long long ldelta = static_cast<long long>(r.size()) - n;
  detail::require(ldelta >= -1 && ldelta <= 2,
                  "guard_decode: received length out of range");
  const int ma = static_cast<int>(2 * n + 3);
  const int mc = static_cast<int>(2 * n + 1);

  auto verify = [&](const Word& w) {
    return w.size() == p.n && vt_syndrome(w, ma) == p.a &&
           detail::mod_pos(detail::weight(w), 5) == p.b &&
           detail::guard_ct(w, mc) == p.c;
  };
  auto fail = [&](const char* msg) -> std::pair<Word, GuardError> {
    throw DecodeError(std::string("guard_decode: ") + msg);
  };
  // applies `edit` at every scan position, keeps syndrome-consistent results
  auto scan_unique = [&](auto&& positions, auto&& edit,
                         GuardError::Type type) -> std::pair<Word, GuardError> {
    std::optional<std::pair<Word, GuardError>> hit;
    for (std::size_t pos : positions) {
      std::optional<Word> w = edit(pos);
      if (!w || !verify(*w)) continue;
      if (hit && !(hit->first == *w)) throw DecodeError("guard_decode: ambiguous candidates");
      if (!hit) hit = {std::move(*w), GuardError{type, pos + 1}};
    }
    if (!hit) throw DecodeError("guard_decode: inconsistent syndromes (no branch candidate)");
    return *hit;
  };
  auto range = [](std::size_t count) {
    std::vector<std::size_t> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = i;
    return v;
  };

  const int vt_r = vt_syndrome(r, ma);
  const int ct_r = detail::guard_ct(r, mc);
  const int bd = detail::signed_mod5(detail::weight(r) - p.b);

  if (ldelta == -1) {
    Word w = vt_decode(r, p.n, VtParams{p.a, ma});
    if (!verify(w)) return fail("deletion candidate fails syndromes");
    VtReport rep = vt_decode_report(r, p.n, VtParams{p.a, ma});
    return {w, GuardError{GuardError::Type::Deletion, rep.position.value_or(0)}};
  }

  if (ldelta == 0) {
    if (bd == 0) {
      if (vt_r == p.a) {
        if (ct_r != p.c) return fail("clean word fails prefix-sum residue");
        return {r, GuardError{}};
      }
      int avv = detail::mod_pos(vt_r - p.a, ma);
      std::size_t pos;  // 1-based transposition position
      if (avv == 1)
        pos = static_cast<std::size_t>(detail::mod_pos(p.c - ct_r, mc));
      else if (avv == ma - 1)
        pos = static_cast<std::size_t>(detail::mod_pos(ct_r - p.c, mc));
      else
        return fail("weight-preserving change is not a transposition");
      if (pos < 1 || pos + 1 > r.size() || r.s[pos - 1] == r.s[pos])
        return fail("transposition position out of range");
      Word w = r;
      std::swap(w.s[pos - 1], w.s[pos]);
      if (!verify(w)) return fail("transposition candidate fails syndromes");
      return {w, GuardError{GuardError::Type::Transposition, pos}};
    }
    if (bd == 1 || bd == -1) {
      int pos = bd == 1 ? detail::mod_pos(vt_r - p.a, ma) : detail::mod_pos(p.a - vt_r, ma);
      if (pos < 1 || pos > static_cast<int>(r.size())) return fail("substitution position out of range");
      Word w = r;
      Symbol expect = bd == 1 ? 1 : 0;
      if (w.s[pos - 1] != expect) return fail("substitution position mismatch");
      w.s[pos - 1] ^= 1;
      if (!verify(w)) return fail("substitution candidate fails syndromes");
      return {w, GuardError{GuardError::Type::Substitution, static_cast<std::size_t>(pos)}};
    }
    // bd == +/-2: 00 <-> 11 on an adjacent pair, VT delta 2p+1
    int avv = bd == 2 ? detail::mod_pos(vt_r - p.a, ma) : detail::mod_pos(p.a - vt_r, ma);
    if (avv % 2 == 0) return fail("adjacent double substitution needs odd VT delta");
    int pos = (avv - 1) / 2;
    if (pos < 1 || pos + 1 > static_cast<int>(r.size())) return fail("double substitution position out of range");
    Symbol expect = bd == 2 ? 1 : 0;
    if (r.s[pos - 1] != expect || r.s[pos] != expect) return fail("double substitution pattern mismatch");
    Word w = r;
    w.s[pos - 1] ^= 1;
    w.s[pos] ^= 1;
    if (!verify(w)) return fail("double substitution candidate fails syndromes");
    return {w, GuardError{GuardError::Type::DoubleSubstitution, static_cast<std::size_t>(pos)}};
  }

  if (ldelta == 1) {
    if (bd == 0 || bd == 1) {
      Word w = vt_decode(r, p.n, VtParams{p.a, ma});
      VtReport rep = vt_decode_report(r, p.n, VtParams{p.a, ma});
      if (!verify(w) || static_cast<int>(*rep.value) != bd)
        return fail("insertion candidate fails syndromes");
      auto type = bd == 0 ? GuardError::Type::Insertion0 : GuardError::Type::Insertion1;
      return {w, GuardError{type, *rep.position}};
    }
    if (bd == 2) {
      // 0 -> 11 at pair (pos, pos+1)
      return scan_unique(range(r.size() - 1),
                         [&](std::size_t pos) -> std::optional<Word> {
                           if (r.s[pos] != 1 || r.s[pos + 1] != 1) return std::nullopt;
                           Word w = r;
                           w.s[pos] = 0;
                           w.s.erase(w.s.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
                           return w;
                         },
                         GuardError::Type::Expand011);
    }
    if (bd == -1) {
      // 1 -> 00 at pair (pos, pos+1)
      return scan_unique(range(r.size() - 1),
                         [&](std::size_t pos) -> std::optional<Word> {
                           if (r.s[pos] != 0 || r.s[pos + 1] != 0) return std::nullopt;
                           Word w = r;
                           w.s[pos] = 1;
                           w.s.erase(w.s.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
                           return w;
                         },
                         GuardError::Type::Expand100);
    }
    return fail("length +1 with impossible weight delta");
  }

  // ldelta == 2
  if (bd == 2) {
    return scan_unique(range(r.size() - 1),
                       [&](std::size_t pos) -> std::optional<Word> {
                         if (r.s[pos] != 1 || r.s[pos + 1] != 1) return std::nullopt;
                         Word w = r;
                         w.s.erase(w.s.begin() + static_cast<std::ptrdiff_t>(pos),
                                   w.s.begin() + static_cast<std::ptrdiff_t>(pos) + 2);
                         return w;
                       },
                       GuardError::Type::Insert11);
  }
  if (bd == 0) {
    int avv = detail::mod_pos(vt_r - p.a, ma);
    if (avv % 2 == 0) {
      return scan_unique(range(r.size() - 1),
                         [&](std::size_t pos) -> std::optional<Word> {
                           if (r.s[pos] != 0 || r.s[pos + 1] != 0) return std::nullopt;
                           Word w = r;
                           w.s.erase(w.s.begin() + static_cast<std::ptrdiff_t>(pos),
                                     w.s.begin() + static_cast<std::ptrdiff_t>(pos) + 2);
                           return w;
                         },
                         GuardError::Type::Insert00);
    }
    return scan_unique(range(r.size() >= 2 ? r.size() - 2 : 0),
                       [&](std::size_t pos) -> std::optional<Word> {
                         if (r.s[pos] != 0 || r.s[pos + 1] != 1 || r.s[pos + 2] != 0)
                           return std::nullopt;
                         Word w = r;
                         w.s.erase(w.s.begin() + static_cast<std::ptrdiff_t>(pos) + 2);
                         w.s.erase(w.s.begin() + static_cast<std::ptrdiff_t>(pos));
                         return w;
                       },
                       GuardError::Type::Insert010);
  }
  return fail("length +2 with impossible weight delta");
}

}  // namespace ndcode
