#pragma once

#include <array>
#include <string>
#include <vector>

#include "ndcode/errors.hpp"
#include "ndcode/transforms.hpp"
#include "ndcode/word.hpp"

// Classifier for how a single noisy duplication (after any number of exact
// duplications) changes the reduced transform mu and its split strings
// mu_1..mu_k. Row identifiers name the mu -> mu'' descriptions.

namespace ndcode {

enum class EditClass {
  Stay,
  Insert0,         // one 0 inserted
  InsertNonzero,   // one nonzero symbol inserted
  InsertZeroPair,  // two 0s inserted at distance at most 2
  InsertNoisePair, // adjacent a,(0-a) inserted, both nonzero
  ExpandPair,      // c -> a(c-a), one symbol becomes two, c != a
  PairSub,         // 0c -> a(c-a), two adjacent symbols substituted
  TailSub,         // single substitution 0 -> a
  Swap,            // b0 -> 0b, adjacent transposition
  Delete0,         // one 0 deleted
};

inline const char* to_string(EditClass e) {
  switch (e) {
    case EditClass::Stay: return "stay";
    case EditClass::Insert0: return "insert 0";
    case EditClass::InsertNonzero: return "insert a";
    case EditClass::InsertZeroPair: return "insert two 0s";
    case EditClass::InsertNoisePair: return "insert a(-a)";
    case EditClass::ExpandPair: return "c->a(c-a)";
    case EditClass::PairSub: return "0c->a(c-a)";
    case EditClass::TailSub: return "0->a";
    case EditClass::Swap: return "b0->0b";
    case EditClass::Delete0: return "delete 0";
  }
  return "?";
}

namespace rows {
inline constexpr const char* kStay = "0: stay same";
inline constexpr const char* kPlus2k = "+2k: insert 0^{j-1}a0^{k-j} and 0^{t-1}(0-a)0^{k-t}";
inline constexpr const char* kPlusKInsSub = "+k: insert 0^{j-1}a0^{k-j} and substitute b->(b-a)";
inline constexpr const char* kPlusKSubIns = "+k: substitute 0->a and insert 0^{t-1}(0-a)0^{k-t}";
inline constexpr const char* kZeroInsDel = "0: insert 0^{j-1}a0^{k-j} and delete 0^{t-1}a0^{k-t}";
inline constexpr const char* kZeroSubSub = "0: substitute 0->a and b->(b-a)";
inline constexpr const char* kMinusK = "-k: substitute 0->a and delete 0^{t-1}a0^{k-t}";
inline constexpr const char* kTailPlusK = "+k tail: insert 0^{j-1}a0^{k-j}";
inline constexpr const char* kTailZero = "0 tail: substitute 0->a";

inline std::vector<std::string> all() {
  return {kStay,       kPlus2k,    kPlusKInsSub, kPlusKSubIns, kZeroInsDel,
          kZeroSubSub, kMinusK,    kTailPlusK,   kTailZero};
}
}  // namespace rows

struct RootChange {
  int delta = 0;                     // |mu''| - |mu|
  std::vector<std::string> rows;     // every consistent table row
  std::vector<EditClass> per_string; // edit class per j, from the first row
};

namespace rowdetail {

inline bool equals_minus(const Word& longer, std::size_t p, const Word& shorter) {
  // longer with position p removed equals shorter
  for (std::size_t i = 0; i < p; ++i)
    if (longer.s[i] != shorter.s[i]) return false;
  for (std::size_t i = p + 1; i < longer.size(); ++i)
    if (longer.s[i] != shorter.s[i - 1]) return false;
  return true;
}

inline bool equals_minus2(const Word& longer, std::size_t p1, std::size_t p2,
                          const Word& shorter) {
  std::size_t at = 0;
  for (std::size_t i = 0; i < longer.size(); ++i) {
    if (i == p1 || i == p2) continue;
    if (longer.s[i] != shorter.s[at++]) return false;
  }
  return true;
}

inline bool feasible_insert0(const Word& u, const Word& v) {
  if (v.size() != u.size() + 1) return false;
  for (std::size_t p = 0; p < v.size(); ++p)
    if (v.s[p] == 0 && equals_minus(v, p, u)) return true;
  return false;
}

inline bool feasible_insert_nonzero(const Word& u, const Word& v) {
  if (v.size() != u.size() + 1) return false;
  for (std::size_t p = 0; p < v.size(); ++p)
    if (v.s[p] != 0 && equals_minus(v, p, u)) return true;
  return false;
}

inline bool feasible_insert_zero_pair(const Word& u, const Word& v) {
  if (v.size() != u.size() + 2) return false;
  for (std::size_t p = 0; p + 1 < v.size(); ++p) {
    if (v.s[p] == 0 && v.s[p + 1] == 0 && equals_minus2(v, p, p + 1, u)) return true;
    if (p + 2 < v.size() && v.s[p] == 0 && v.s[p + 2] == 0 &&
        equals_minus2(v, p, p + 2, u))
      return true;
  }
  return false;
}

inline bool feasible_insert_noise_pair(const Word& u, const Word& v) {
  if (v.size() != u.size() + 2) return false;
  for (std::size_t p = 0; p + 1 < v.size(); ++p)
    if (v.s[p] != 0 && v.s[p + 1] != 0 && (v.s[p] + v.s[p + 1]) % v.q == 0 &&
        equals_minus2(v, p, p + 1, u))
      return true;
  return false;
}

// c -> a(c-a): position p of u becomes the pair (v_p, v_{p+1}) with
// v_p = a != 0, v_{p+1} = c-a != 0, a + (c-a) = c = u_p.
inline bool feasible_expand_pair(const Word& u, const Word& v, bool require_c_zero) {
  if (v.size() != u.size() + 1) return false;
  for (std::size_t p = 0; p < u.size(); ++p) {
    bool prefix_ok = true;
    for (std::size_t i = 0; i < p && prefix_ok; ++i) prefix_ok = u.s[i] == v.s[i];
    if (!prefix_ok) continue;
    if (v.s[p] == 0 || v.s[p + 1] == 0) continue;
    if ((v.s[p] + v.s[p + 1]) % v.q != u.s[p]) continue;
    if (require_c_zero && u.s[p] != 0) continue;
    bool suffix_ok = true;
    for (std::size_t i = p + 1; i < u.size() && suffix_ok; ++i)
      suffix_ok = u.s[i] == v.s[i + 1];
    if (suffix_ok) return true;
  }
  return false;
}

// 0c -> a(c-a): adjacent pair substituted in place.
inline bool feasible_pair_sub(const Word& u, const Word& v) {
  if (v.size() != u.size()) return false;
  for (std::size_t p = 0; p + 1 < u.size(); ++p) {
    if (u.s[p] != 0 || v.s[p] == 0) continue;
    if ((v.s[p] + v.s[p + 1]) % v.q != u.s[p + 1]) continue;
    bool rest_ok = true;
    for (std::size_t i = 0; i < u.size() && rest_ok; ++i)
      if (i != p && i != p + 1) rest_ok = u.s[i] == v.s[i];
    if (rest_ok) return true;
  }
  return false;
}

inline bool feasible_tail_sub(const Word& u, const Word& v) {
  if (v.size() != u.size()) return false;
  std::size_t diffs = 0, at = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u.s[i] != v.s[i]) {
      ++diffs;
      at = i;
    }
  return diffs == 1 && u.s[at] == 0 && v.s[at] != 0;
}

inline bool feasible_swap(const Word& u, const Word& v) {
  if (v.size() != u.size()) return false;
  for (std::size_t p = 0; p + 1 < u.size(); ++p) {
    if (u.s[p] == 0 || u.s[p + 1] != 0) continue;
    if (v.s[p] != 0 || v.s[p + 1] != u.s[p]) continue;
    bool rest_ok = true;
    for (std::size_t i = 0; i < u.size() && rest_ok; ++i)
      if (i != p && i != p + 1) rest_ok = u.s[i] == v.s[i];
    if (rest_ok) return true;
  }
  return false;
}

inline bool feasible_delete0(const Word& u, const Word& v) {
  if (u.size() != v.size() + 1) return false;
  for (std::size_t p = 0; p < u.size(); ++p)
    if (u.s[p] == 0 && equals_minus(u, p, v)) return true;
  return false;
}

}  // namespace rowdetail

/// Classifies the change from mu to mu'' against Tables I-II. Both inputs
/// must be 0^k-free. Returns every consistent row; throws DecodeError when
/// no row explains the pair.
inline RootChange classify_root_change(const Word& mu_before, const Word& mu_after, int k) {
  detail::require(mu_before.q == mu_after.q, "classify_root_change: alphabet mismatch");
  detail::require(mu(mu_before, k) == mu_before && mu(mu_after, k) == mu_after,
                  "classify_root_change: inputs must be 0^k-free");
  RootChange rc;
  rc.delta = static_cast<int>(mu_after.size()) - static_cast<int>(mu_before.size());

  const int kk = k;
  std::vector<Word> u(kk), v(kk);
  for (int j = 1; j <= kk; ++j) {
    u[j - 1] = split(mu_before, j, kk);
    v[j - 1] = split(mu_after, j, kk);
  }

  auto all_of_feasible = [&](auto&& f) {
    for (int j = 0; j < kk; ++j)
      if (!f(u[j], v[j])) return false;
    return true;
  };
  // exactly one string with the starred edit, every other string explained by `rest`
  auto star_pattern = [&](auto&& star, auto&& restf) {
    for (int jstar = 0; jstar < kk; ++jstar) {
      if (!star(u[jstar], v[jstar])) continue;
      bool ok = true;
      for (int j = 0; j < kk && ok; ++j)
        if (j != jstar) ok = restf(u[j], v[j]);
      if (ok) return jstar;
    }
    return -1;
  };
  auto fill = [&](EditClass star_class, EditClass rest_class, int jstar) {
    if (!rc.per_string.empty()) return;
    rc.per_string.assign(static_cast<std::size_t>(kk), rest_class);
    if (jstar >= 0) rc.per_string[static_cast<std::size_t>(jstar)] = star_class;
  };

  using namespace rowdetail;
  if (rc.delta == 2 * kk) {
    int jstar = star_pattern(feasible_insert_noise_pair, feasible_insert_zero_pair);
    if (jstar >= 0) {
      rc.rows.push_back(rows::kPlus2k);
      fill(EditClass::InsertNoisePair, EditClass::InsertZeroPair, jstar);
    }
  } else if (rc.delta == kk) {
    auto expand_any = [](const Word& a, const Word& b) {
      return feasible_expand_pair(a, b, false);
    };
    auto expand_zero = [](const Word& a, const Word& b) {
      return feasible_expand_pair(a, b, true);
    };
    int jstar = star_pattern(expand_any, feasible_insert0);
    bool degenerate = all_of_feasible(feasible_insert0);
    if (jstar >= 0 || degenerate) {
      rc.rows.push_back(rows::kPlusKInsSub);
      if (jstar >= 0)
        fill(EditClass::ExpandPair, EditClass::Insert0, jstar);
      else
        fill(EditClass::Insert0, EditClass::Insert0, -1);
    }
    int jstar0 = star_pattern(expand_zero, feasible_insert0);
    if (jstar0 >= 0) {
      rc.rows.push_back(rows::kPlusKSubIns);
      fill(EditClass::ExpandPair, EditClass::Insert0, jstar0);
    }
    int jtail = star_pattern(feasible_insert_nonzero, feasible_insert0);
    if (jtail >= 0) {
      rc.rows.push_back(rows::kTailPlusK);
      fill(EditClass::InsertNonzero, EditClass::Insert0, jtail);
    }
  } else if (rc.delta == 0) {
    bool same = mu_before == mu_after;
    if (same) {
      rc.rows.push_back(rows::kStay);
      fill(EditClass::Stay, EditClass::Stay, -1);
    } else {
      bool swaps_ok = true, any_changed = false;
      for (int j = 0; j < kk && swaps_ok; ++j) {
        if (u[j] == v[j]) continue;
        any_changed = true;
        swaps_ok = feasible_swap(u[j], v[j]);
      }
      if (swaps_ok && any_changed) {
        rc.rows.push_back(rows::kZeroInsDel);
        if (rc.per_string.empty())
          for (int j = 0; j < kk; ++j)
            rc.per_string.push_back(u[j] == v[j] ? EditClass::Stay : EditClass::Swap);
      }
      auto changed_and = [&](auto&& f) {
        return [&, f](const Word& a, const Word& b) { return !(a == b) && f(a, b); };
      };
      auto stay = [](const Word& a, const Word& b) { return a == b; };
      int jsub = star_pattern(changed_and(feasible_pair_sub), stay);
      if (jsub >= 0) {
        rc.rows.push_back(rows::kZeroSubSub);
        fill(EditClass::PairSub, EditClass::Stay, jsub);
      }
      int jtail = star_pattern(changed_and(feasible_tail_sub), stay);
      if (jtail >= 0) {
        rc.rows.push_back(rows::kTailZero);
        fill(EditClass::TailSub, EditClass::Stay, jtail);
      }
    }
  } else if (rc.delta == -kk) {
    if (all_of_feasible(feasible_delete0)) {
      rc.rows.push_back(rows::kMinusK);
      fill(EditClass::Delete0, EditClass::Delete0, -1);
    }
  }

  if (rc.rows.empty())
    throw DecodeError("classify_root_change: no table row explains the pair");
  return rc;
}

}  // namespace ndcode
