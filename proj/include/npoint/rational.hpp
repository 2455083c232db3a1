// Copyright 2026 The npoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NPOINT_RATIONAL_HPP_
#define NPOINT_RATIONAL_HPP_

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "npoint/errors.hpp"

namespace npoint {

using Rational = mpq_class;

// Parses "p", "-p" or "p/q" with decimal integers. Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_int(num) || (slash != std::string_view::npos && (!is_int(den) || den.front() == '-'))) {
    throw Error("malformed rational '" + std::string(text) + "'");
  }
  std::string n(num);
  if (!n.empty() && n.front() == '+') n.erase(0, 1);
  mpz_class numerator(n, 10);
  mpz_class denominator(1);
  if (slash != std::string_view::npos) {
    std::string d(den);
    if (!d.empty() && d.front() == '+') d.erase(0, 1);
    denominator = mpz_class(d, 10);
    if (denominator == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

}  // namespace npoint

#endif  // NPOINT_RATIONAL_HPP_
