#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace hilb {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parse_error : error {
    using error::error;
};
struct shape_error : error {
    using error::error;
};
struct variable_mismatch : error {
    using error::error;
};
struct precision_error : error {
    using error::error;
};
struct infinite_dimension : error {
    using error::error;
};

inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// Parses "p" or "p/q"; q > 0 after normalization is handled by cpp_rational.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw parse_error("zero denominator in rational: " + s);
        return Rational(num, den);
    } catch (const std::exception&) {
        throw parse_error("invalid rational literal: " + s);
    }
}

}  // namespace hilb
