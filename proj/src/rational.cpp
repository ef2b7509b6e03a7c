#include "rsdkit/rational.hpp"

namespace rsdkit {

Int factorial(int n) {
    if (n < 0) throw ValidationError("factorial of negative argument " + std::to_string(n));
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Int to_integer(const Rational& q) {
    if (!is_integer(q)) throw IntegrityError("expected an integer, got " + rational_to_string(q));
    return numerator(q);
}

std::string rational_to_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string int_to_string(const Int& v) { return v.str(); }

Int int_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw ParseError("bad integer literal \"" + s + "\"");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw ParseError("bad integer literal \"" + s + "\"");
    return Int(s);
}

Rational rational_from_string(const std::string& s) {
    const std::size_t slash = s.find('/');
    if (slash == std::string::npos) return Rational(int_from_string(s));
    const Int num = int_from_string(s.substr(0, slash));
    const Int den = int_from_string(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
    return den < 0 ? Rational(-num, -den) : Rational(num, den);
}

double rational_to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace rsdkit
