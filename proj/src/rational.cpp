#include "oddhg/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace oddhg {

namespace detail {

std::string i128_to_string(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // Peel digits off the absolute value; -2^127 has no positive counterpart,
  // but nothing here ever reaches it.
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

namespace {

int128 parse_i128(const std::string& s, size_t begin, size_t end) {
  if (begin >= end) throw std::invalid_argument("empty integer in rational literal");
  int sign = 1;
  size_t i = begin;
  if (s[i] == '+' || s[i] == '-') {
    if (s[i] == '-') sign = -1;
    ++i;
  }
  if (i >= end) throw std::invalid_argument("sign without digits in rational literal");
  int128 v = 0;
  for (; i < end; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw std::invalid_argument("bad digit in rational literal");
    v = mul128(v, 10);
    v = add128(v, s[i] - '0');
  }
  return sign * v;
}

}  // namespace

}  // namespace detail

std::string Rat::str() const {
  if (den_ == 1) return detail::i128_to_string(num_);
  return detail::i128_to_string(num_) + "/" + detail::i128_to_string(den_);
}

Rat Rat::parse(const std::string& text) {
  size_t b = text.find_first_not_of(" \t");
  size_t e = text.find_last_not_of(" \t");
  if (b == std::string::npos) throw std::invalid_argument("empty rational literal");
  ++e;
  size_t slash = text.find('/', b);
  if (slash != std::string::npos && slash < e) {
    int128 n = detail::parse_i128(text, b, slash);
    int128 d = detail::parse_i128(text, slash + 1, e);
    return make(n, d);
  }
  size_t dot = text.find('.', b);
  if (dot != std::string::npos && dot < e) {
    int128 whole = (dot > b) ? detail::parse_i128(text, b, dot) : 0;
    bool neg = text[b] == '-';
    int128 den = 1;
    int128 frac = 0;
    for (size_t i = dot + 1; i < e; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw std::invalid_argument("bad digit in decimal literal");
      frac = detail::add128(detail::mul128(frac, 10), text[i] - '0');
      den = detail::mul128(den, 10);
    }
    int128 n = detail::add128(detail::mul128(detail::abs128(whole), den), frac);
    if (neg) n = -n;
    return make(n, den);
  }
  return make(detail::parse_i128(text, b, e), 1);
}

}  // namespace oddhg
