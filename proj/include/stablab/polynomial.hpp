#ifndef STABLAB_POLYNOMIAL_HPP
#define STABLAB_POLYNOMIAL_HPP

#include <stablab/rational.hpp>

#include <algorithm>
#include <initializer_list>
#include <vector>

namespace stablab {

/// Dense univariate polynomial, coefficients stored by ascending degree.
/// The zero polynomial is the empty coefficient vector; otherwise the
/// leading coefficient is nonzero.
template <class T>
class UniPoly {
   public:
    UniPoly() = default;
    explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }
    UniPoly(std::initializer_list<T> coeffs) : c_(coeffs) { normalize(); }

    static UniPoly monomial(int degree, const T& coeff) {
        std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
        c.back() = coeff;
        return UniPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const T& coeff(int k) const {
        static const T zero(0);
        if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<std::size_t>(k)];
    }
    const std::vector<T>& coeffs() const { return c_; }

    T operator()(const T& x) const {
        T acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) {
            acc *= x;
            acc += c_[i];
        }
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
        return UniPoly(std::move(d));
    }

    UniPoly operator-() const {
        std::vector<T> d(c_);
        for (auto& x : d) x = -x;
        return UniPoly(std::move(d));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<T> d(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) d[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) d[i] += b.c_[i];
        return UniPoly(std::move(d));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<T> d(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(d));
    }
    friend UniPoly operator*(const UniPoly& a, const T& s) {
        std::vector<T> d(a.c_);
        for (auto& x : d) x *= s;
        return UniPoly(std::move(d));
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

   private:
    void normalize() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
    std::vector<T> c_;
};

using RatPoly = UniPoly<Rational>;

/// Quotient and remainder of dense polynomial division.
template <class T>
std::pair<UniPoly<T>, UniPoly<T>> divmod(const UniPoly<T>& a, const UniPoly<T>& b) {
    if (b.is_zero()) throw precondition_error("polynomial division by zero");
    std::vector<T> rem(a.coeffs());
    const int db = b.degree();
    if (a.degree() < db) return {UniPoly<T>(), a};
    std::vector<T> quot(static_cast<std::size_t>(a.degree() - db) + 1, T(0));
    const T& lead = b.coeff(db);
    for (int k = a.degree(); k >= db; --k) {
        T q = rem[static_cast<std::size_t>(k)] / lead;
        if (q == T(0)) continue;
        quot[static_cast<std::size_t>(k - db)] = q;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * b.coeff(j);
    }
    return {UniPoly<T>(std::move(quot)), UniPoly<T>(std::move(rem))};
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    // monic normalization keeps gcd canonical
    std::vector<Rational> c(a.coeffs());
    Rational lead = c.back();
    for (auto& x : c) x /= lead;
    return RatPoly(std::move(c));
}

/// Product of the distinct irreducible factors: same roots, all simple.
inline RatPoly square_free_part(const RatPoly& p) {
    if (p.is_zero() || p.degree() == 0) return p;
    RatPoly g = gcd(p, p.derivative());
    if (g.degree() == 0) return p;
    return divmod(p, g).first;
}

/// Homogeneous bivariate polynomial of degree p.  coeff(i) multiplies
/// x^i y^(p-i), so every stored monomial has total degree exactly p.
template <class T>
class BiHomogPoly {
   public:
    BiHomogPoly() : c_(1, T(0)) {}
    explicit BiHomogPoly(int degree) : c_(static_cast<std::size_t>(degree) + 1, T(0)) {
        if (degree < 0) throw precondition_error("negative bihomogeneous degree");
    }
    explicit BiHomogPoly(std::vector<T> coeffs_by_x_exponent) : c_(std::move(coeffs_by_x_exponent)) {
        if (c_.empty()) throw precondition_error("empty bihomogeneous coefficient vector");
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const T& coeff(int x_exp) const { return c_.at(static_cast<std::size_t>(x_exp)); }
    T& coeff(int x_exp) { return c_.at(static_cast<std::size_t>(x_exp)); }
    const std::vector<T>& coeffs() const { return c_; }

    /// Restriction h(x) = Q(x, 1).
    UniPoly<T> restrict_y1() const { return UniPoly<T>(std::vector<T>(c_)); }

    T operator()(const T& x, const T& y) const {
        T acc(0);
        T xp(1);
        const int p = degree();
        for (int i = 0; i <= p; ++i) {
            T term = c_[static_cast<std::size_t>(i)] * xp;
            for (int j = 0; j < p - i; ++j) term *= y;
            acc += term;
            xp *= x;
        }
        return acc;
    }

    friend bool operator==(const BiHomogPoly& a, const BiHomogPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BiHomogPoly& a, const BiHomogPoly& b) { return !(a == b); }

   private:
    std::vector<T> c_;
};

using RatBiPoly = BiHomogPoly<Rational>;

/// d/dx of a degree-(p+1) homogeneous polynomial, one degree down.
template <class T>
BiHomogPoly<T> d_dx(const BiHomogPoly<T>& q) {
    if (q.degree() == 0) return BiHomogPoly<T>(0);
    BiHomogPoly<T> out(q.degree() - 1);
    for (int i = 1; i <= q.degree(); ++i) out.coeff(i - 1) = q.coeff(i) * T(i);
    return out;
}

}  // namespace stablab

#endif
