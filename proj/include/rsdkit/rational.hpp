#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "rsdkit/errors.hpp"

namespace rsdkit {

// Exact arithmetic throughout; expression templates off so temporaries are
// plain values and `auto` never captures a dangling expression node.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

Int factorial(int n);

inline Rational ratio(const Int& num, const Int& den) { return Rational(num, den); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// Throws IntegrityError when q has a nontrivial denominator.
Int to_integer(const Rational& q);

// Canonical form "num/den" with den > 0, e.g. "0/1", "-1/2", "3/1".
std::string rational_to_string(const Rational& q);

// Accepts "num/den" and bare integers "k"; any nonzero denominator is
// normalized. Throws ParseError on anything else.
Rational rational_from_string(const std::string& s);

std::string int_to_string(const Int& v);
Int int_from_string(const std::string& s);

double rational_to_double(const Rational& q);

}  // namespace rsdkit
