#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ndcode {

using Symbol = std::uint8_t;

/// A word over the alphabet {0,...,q-1}. The empty word is a valid value.
/// Words are immutable by convention: every operation returns a fresh word.
struct Word {
  int q = 2;  // alphabet size, 2 <= q <= 255
  std::vector<Symbol> s;

  std::size_t size() const { return s.size(); }
  bool empty() const { return s.empty(); }
  Symbol operator[](std::size_t i) const { return s[i]; }

  friend bool operator==(const Word& a, const Word& b) {
    return a.q == b.q && a.s == b.s;
  }
  friend auto operator<=>(const Word& a, const Word& b) {
    if (auto c = a.q <=> b.q; c != 0) return c;
    return a.s <=> b.s;
  }
};

inline void check_alphabet(int q) {
  if (q < 2 || q > 255) throw std::invalid_argument("alphabet size must be in [2,255]");
}

/// Validating constructor for untrusted symbol data.
inline Word make_word(int q, std::vector<Symbol> syms) {
  check_alphabet(q);
  for (Symbol v : syms)
    if (v >= q) throw std::invalid_argument("symbol out of alphabet range");
  return Word{q, std::move(syms)};
}

/// Text form: contiguous digits for q <= 10, comma-separated decimal
/// symbols for q > 10. The empty string denotes the empty word.
inline std::string to_string(const Word& w) {
  std::string out;
  if (w.q <= 10) {
    out.reserve(w.size());
    for (Symbol v : w.s) out.push_back(static_cast<char>('0' + v));
  } else {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out.push_back(',');
      out += std::to_string(static_cast<int>(w.s[i]));
    }
  }
  return out;
}

/// Parses the text form above. Rejects symbols >= q.
inline Word parse_word(std::string_view text, int q) {
  check_alphabet(q);
  Word w{q, {}};
  if (text.empty()) return w;
  if (q <= 10) {
    w.s.reserve(text.size());
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("invalid symbol character");
      int v = ch - '0';
      if (v >= q) throw std::invalid_argument("symbol out of alphabet range");
      w.s.push_back(static_cast<Symbol>(v));
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      std::string_view tok = text.substr(pos, comma == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : comma - pos);
      if (tok.empty()) throw std::invalid_argument("empty symbol token");
      int v = 0;
      for (char ch : tok) {
        if (ch < '0' || ch > '9') throw std::invalid_argument("invalid symbol character");
        v = v * 10 + (ch - '0');
        if (v > 255) throw std::invalid_argument("symbol out of alphabet range");
      }
      if (v >= q) throw std::invalid_argument("symbol out of alphabet range");
      w.s.push_back(static_cast<Symbol>(v));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  return w;
}

struct WordHash {
  std::size_t operator()(const Word& w) const {
    // FNV-1a over the symbols plus q
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint8_t byte) {
      h ^= byte;
      h *= 1099511628211ull;
    };
    mix(static_cast<std::uint8_t>(w.q));
    for (Symbol v : w.s) mix(v);
    return h;
  }
};

}  // namespace ndcode
