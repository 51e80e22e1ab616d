#ifndef STABLAB_RATIONAL_HPP
#define STABLAB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace stablab {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Error taxonomy. Every operation that rejects its input throws one of
// these; the CLI maps all of them to exit code 2.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct arity_error : error {
    using error::error;
};
struct schema_error : error {
    using error::error;
};
struct degenerate_error : error {
    using error::error;
};
struct missing_cone_error : error {
    using error::error;
};
struct precondition_error : error {
    using error::error;
};
struct certificate_error : error {
    certificate_error(const std::string& what, int coefficient)
        : error(what), coefficient_index(coefficient) {}
    int coefficient_index;
};

inline int sign(const Rational& r) { return r.sign(); }
inline int sign(const Integer& n) { return n.sign(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational pow_rational(const Rational& base, unsigned exp) {
    Rational result(1);
    Rational b = base;
    unsigned e = exp;
    while (e != 0) {
        if (e & 1u) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

inline Integer factorial(unsigned n) {
    Integer f(1);
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return Integer(0);
    if (k > n - k) k = n - k;
    Integer num(1);
    for (unsigned i = 0; i < k; ++i) {
        num *= Integer(n - i);
        num /= Integer(i + 1);
    }
    return num;
}

// Parses "p/q" (or a plain integer "p"); q must be nonzero.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw schema_error("empty rational literal");
    auto slash = text.find('/');
    auto check_int = [&](const std::string& s) {
        if (s.empty()) throw schema_error("malformed rational: '" + text + "'");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw schema_error("malformed rational: '" + text + "'");
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw schema_error("malformed rational: '" + text + "'");
    };
    if (slash == std::string::npos) {
        check_int(text);
        return Rational(Integer(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    check_int(num);
    check_int(den);
    Integer d(den);
    if (d == 0) throw schema_error("zero denominator in rational: '" + text + "'");
    return Rational(Integer(num), d);
}

// Canonical "p/q" form; integers render without the "/1".
inline std::string format_rational(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Complex number with exact rational real and imaginary parts.
struct ComplexRational {
    Rational re;
    Rational im;

    ComplexRational conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }

    friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

}  // namespace stablab

#endif
