#pragma once

// Small string helpers shared by the text formats.

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "sunits/errors.hpp"

namespace sunits::text {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw parse_error("not an integer: '" + std::string(s) + "'");
  return v;
}

inline bool is_integer_literal(std::string_view s) {
  s = trim(s);
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline mpz_class parse_bigint(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (!is_integer_literal(s)) throw parse_error("not an integer: '" + std::string(s) + "'");
  return mpz_class(std::string(s), 10);
}

/// Accepts "n" or "n/d" with d != 0.
inline mpq_class parse_rational(std::string_view s) {
  s = trim(s);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return mpq_class(parse_bigint(s));
  mpz_class num = parse_bigint(s.substr(0, slash));
  mpz_class den = parse_bigint(s.substr(slash + 1));
  if (den == 0) throw parse_error("zero denominator: '" + std::string(s) + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const mpz_class& v) { return v.get_str(10); }
inline std::string to_string(const mpq_class& v) { return v.get_str(10); }

}  // namespace sunits::text
