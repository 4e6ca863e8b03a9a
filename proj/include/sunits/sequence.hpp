#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "sunits/enumerate.hpp"
#include "sunits/errors.hpp"
#include "sunits/prime_set.hpp"
#include "sunits/primes.hpp"
#include "sunits/text.hpp"

namespace sunits {

/// n -> d_1 a_1^n + ... + d_j a_j^n
struct GeometricCombo {
  std::vector<mpz_class> d;
  std::vector<mpz_class> a;

  /// Every base avoids {0, 1, -1}, the hypothesis under which such a
  /// combination is known to be a T-sequence.
  bool bases_admissible() const {
    for (const auto& b : a)
      if (b == 0 || b == 1 || b == -1) return false;
    return !a.empty();
  }
};

/// s_n = (-1)^n a_ceil(n/2), a_j the j-th positive S-integer.
struct UniversalS {
  PrimeSet primes;
};

/// n -> n-th prime.
struct Primes {};

/// A fixed list of terms.
struct Explicit {
  std::vector<mpz_class> terms;
};

using SequenceSpec = std::variant<GeometricCombo, UniversalS, Primes, Explicit>;

namespace detail {

inline GeometricCombo parse_geom(std::string_view body) {
  std::string s;
  for (char c : body)
    if (c != ' ' && c != '\t') s += c;
  if (s.empty()) throw parse_error("geom: no terms");

  // split at '+'/'-' that start a new term
  std::vector<std::string> terms;
  std::size_t start = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    char prev = s[i - 1];
    if ((s[i] == '+' || s[i] == '-') && prev != '*' && prev != '(' && prev != '^' && prev != '+' && prev != '-') {
      terms.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  terms.push_back(s.substr(start));

  GeometricCombo g;
  for (auto t : terms) {
    std::string_view v = t;
    bool neg = false;
    if (!v.empty() && (v.front() == '+' || v.front() == '-')) {
      neg = v.front() == '-';
      v.remove_prefix(1);
    }
    if (v.size() < 3 || v.substr(v.size() - 2) != "^n")
      throw parse_error("geom term must end in '^n': '" + t + "'");
    v.remove_suffix(2);
    mpz_class d = 1;
    auto star = v.find('*');
    if (star != std::string_view::npos) {
      d = text::parse_bigint(v.substr(0, star));
      v.remove_prefix(star + 1);
    }
    if (v.size() >= 2 && v.front() == '(' && v.back() == ')') v = v.substr(1, v.size() - 2);
    g.d.push_back(neg ? mpz_class(-d) : d);
    g.a.push_back(text::parse_bigint(v));
  }
  return g;
}

inline std::vector<mpz_class> read_terms(std::istream& in) {
  std::vector<mpz_class> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = text::trim(line);
    if (t.empty()) continue;
    out.push_back(text::parse_bigint(t));
  }
  return out;
}

}  // namespace detail

/// Parses `geom d1*a1^n + d2*a2^n ...`, `universal 2,3`, `primes`,
/// `file:<path>` or `file:-` (one integer per line; '-' reads `stdin_stream`).
inline SequenceSpec parse_sequence_spec(std::string_view input, std::istream& stdin_stream = std::cin) {
  auto t = text::trim(input);
  if (t == "primes") return Primes{};
  if (t.starts_with("geom ")) return detail::parse_geom(t.substr(5));
  if (t.starts_with("universal ")) return UniversalS{PrimeSet::parse(t.substr(10))};
  if (t.starts_with("file:")) {
    auto path = std::string(t.substr(5));
    if (path == "-") return Explicit{detail::read_terms(stdin_stream)};
    std::ifstream f(path);
    if (!f) throw parse_error("cannot open sequence file '" + path + "'");
    return Explicit{detail::read_terms(f)};
  }
  throw parse_error("unknown sequence spec '" + std::string(t) +
                    "' (expected geom ..., universal p1,p2,..., primes, file:<path>)");
}

inline std::string to_string(const SequenceSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GeometricCombo>) {
          std::string out = "geom";
          for (std::size_t i = 0; i < s.d.size(); ++i)
            out += (i ? " + " : " ") + s.d[i].get_str() + "*" +
                   (s.a[i] < 0 ? "(" + s.a[i].get_str() + ")" : s.a[i].get_str()) + "^n";
          return out;
        } else if constexpr (std::is_same_v<T, UniversalS>) {
          return "universal " + s.primes.to_string();
        } else if constexpr (std::is_same_v<T, Primes>) {
          return "primes";
        } else {
          return "explicit[" + std::to_string(s.terms.size()) + "]";
        }
      },
      spec);
}

/// Universal sequence: first n terms of s_i = (-1)^i a_ceil(i/2).
inline std::vector<mpz_class> universal_sequence(const PrimeSet& s, std::size_t n) {
  std::vector<mpz_class> out;
  out.reserve(n);
  SIntegerStream stream(s);
  while (out.size() < n) {
    mpz_class a = stream.next().value();
    out.push_back(-a);
    if (out.size() < n) out.push_back(a);
  }
  return out;
}

/// Terms s_1..s_n (an Explicit spec yields at most its stored terms).
inline std::vector<mpz_class> generate(const SequenceSpec& spec, std::size_t n) {
  if (n == 0) throw invalid_argument("generate: count must be positive");
  return std::visit(
      [n](const auto& s) -> std::vector<mpz_class> {
        using T = std::decay_t<decltype(s)>;
        std::vector<mpz_class> out;
        if constexpr (std::is_same_v<T, GeometricCombo>) {
          std::vector<mpz_class> power(s.a.size(), 1);
          for (std::size_t i = 1; i <= n; ++i) {
            mpz_class term = 0;
            for (std::size_t j = 0; j < s.a.size(); ++j) {
              power[j] *= s.a[j];
              term += s.d[j] * power[j];
            }
            out.push_back(term);
          }
        } else if constexpr (std::is_same_v<T, UniversalS>) {
          out = universal_sequence(s.primes, n);
        } else if constexpr (std::is_same_v<T, Primes>) {
          for (auto p : first_primes(n)) out.emplace_back(static_cast<unsigned long>(p));
        } else {
          out.assign(s.terms.begin(), s.terms.begin() + static_cast<std::ptrdiff_t>(std::min(n, s.terms.size())));
        }
        return out;
      },
      spec);
}

}  // namespace sunits
