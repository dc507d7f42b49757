#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "dal/errors.hpp"

namespace dal {

// Exact rationals everywhere; no floating point on any verdict path.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(long num, long den = 1) { return Rat(Int(num), Int(den)); }

inline bool is_integer(const Rat& q) { return boost::multiprecision::denominator(q) == 1; }

inline std::string rat_to_string(const Rat& q) {
  const Int& num = boost::multiprecision::numerator(q);
  const Int& den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Parses "p", "p/q" or "-p/q". Used by the term lexer and the witness reader.
inline Rat rat_from_string(const std::string& text, long position = -1) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) fail(ErrorKind::Lexical, "rational with zero denominator: " + text, position);
    return Rat(num, den);
  } catch (const DalError&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::Lexical, "malformed rational literal: " + text, position);
  }
}

}  // namespace dal
