#ifndef STABLAB_DHYM_HPP
#define STABLAB_DHYM_HPP

#include <stablab/geometry.hpp>
#include <stablab/polynomial.hpp>
#include <stablab/positivity.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace stablab {

constexpr double kDefaultEps = 1e-9;

/// Central charge: integral of (beta + i alpha)^n, expanded binomially so
/// both parts stay exact rationals.
inline ComplexRational central_charge(const ManifoldPresentation& m, const CohClass& alpha,
                                      const CohClass& beta) {
    const int n = m.dim;
    ComplexRational z{Rational(0), Rational(0)};
    for (int k = 0; k <= n; ++k) {
        Rational term = Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k))) *
                        pairing(m, alpha, k, beta, n - k);
        switch (k % 4) {  // i^k
            case 0: z.re += term; break;
            case 1: z.im += term; break;
            case 2: z.re -= term; break;
            default: z.im -= term; break;
        }
    }
    return z;
}

struct DhymAngle {
    ComplexRational z_exact;
    double z_re = 0, z_im = 0;
    double phi_hat = 0;  // in (0, pi)
    bool marginal = false;
};

/// The complementary lifted angle: the unique representative of
/// n pi/2 - arg(Z) modulo 2 pi inside (0, pi).  The window has length pi,
/// so uniqueness is automatic; when no branch lands inside, the
/// supercritical assumption fails and the call rejects.  Within eps of
/// 0, pi/2 or pi the angle is flagged marginal.
inline DhymAngle complementary_lifted_angle(const ComplexRational& z, int n,
                                            double eps = kDefaultEps) {
    if (z.is_zero())
        throw degenerate_error("central charge is zero; half-plane assumption violated");
    DhymAngle a;
    a.z_exact = z;
    a.z_re = to_double(z.re);
    a.z_im = to_double(z.im);
    const double pi = std::acos(-1.0);
    double v = n * pi / 2 - std::atan2(a.z_im, a.z_re);
    double w = std::fmod(v, 2 * pi);
    if (w <= 0) w += 2 * pi;
    if (w >= pi)
        throw precondition_error("no representative of the lifted angle lies in (0, pi)");
    a.phi_hat = w;
    a.marginal = (w < eps) || (std::fabs(w - pi / 2) < eps) || (w > pi - eps);
    return a;
}

/// Re(x + i y)^p as an exact-coefficient polynomial scaled into T.
template <class T>
BiHomogPoly<T> dhym_re_poly(int p) {
    BiHomogPoly<T> q(p);
    for (int j = 0; j <= p; j += 2) {
        Integer c = binomial(static_cast<unsigned>(p), static_cast<unsigned>(j));
        if ((j / 2) % 2 == 1) c = -c;
        q.coeff(p - j) = T(static_cast<long>(c.convert_to<long long>()));
    }
    return q;
}

template <class T>
BiHomogPoly<T> dhym_im_poly(int p) {
    BiHomogPoly<T> q(p);
    for (int j = 1; j <= p; j += 2) {
        Integer c = binomial(static_cast<unsigned>(p), static_cast<unsigned>(j));
        if (((j - 1) / 2) % 2 == 1) c = -c;
        q.coeff(p - j) = T(static_cast<long>(c.convert_to<long long>()));
    }
    return q;
}

/// Direct form Re(x+iy)^p - cot * Im(x+iy)^p.
template <class T>
BiHomogPoly<T> dhym_direct_poly(int p, const T& cot_value) {
    BiHomogPoly<T> re = dhym_re_poly<T>(p);
    BiHomogPoly<T> im = dhym_im_poly<T>(p);
    BiHomogPoly<T> out(p);
    for (int i = 0; i <= p; ++i) out.coeff(i) = re.coeff(i) - cot_value * im.coeff(i);
    return out;
}

/// Product form prod_l (x - cot_l y), the cotangent-root factorization.
template <class T>
BiHomogPoly<T> dhym_product_poly(const std::vector<T>& cots) {
    const int p = static_cast<int>(cots.size());
    std::vector<T> c{T(1)};  // descending x: starts as the constant 1 = x^0
    for (const T& r : cots) {
        std::vector<T> next(c.size() + 1, T(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] -= r * c[i];
        }
        c = std::move(next);
    }
    BiHomogPoly<T> out(p);
    for (int i = 0; i <= p; ++i) out.coeff(p - i) = c[static_cast<std::size_t>(i)];
    return out;
}

inline std::vector<double> dhym_cotangents(double phi_hat, int p) {
    std::vector<double> cots;
    const double pi = std::acos(-1.0);
    for (int l = 0; l < p; ++l) cots.push_back(1.0 / std::tan((phi_hat + l * pi) / p));
    return cots;
}

struct DhymFactorClass {
    int p = 0;
    double cot_value = 0;  // cot(phi_hat / p)
    std::vector<double> coords;
    FloatRegion verdict{Region::Outside, false};
    bool missing_cone_data = false;
};

/// Factor classes tau_p = alpha - cot(phi_hat / p) beta with float
/// coefficients, plus their modified-cone verdicts (marginal when any
/// defining form sits within eps of zero).
inline std::vector<DhymFactorClass> dhym_factor_classes(const ManifoldPresentation& m,
                                                        const CohClass& alpha, const CohClass& beta,
                                                        double phi_hat, double eps = kDefaultEps) {
    std::vector<DhymFactorClass> out;
    for (int p = 1; p <= m.dim - 1; ++p) {
        DhymFactorClass f;
        f.p = p;
        f.cot_value = 1.0 / std::tan(phi_hat / p);
        for (std::size_t i = 0; i < m.basis_size(); ++i)
            f.coords.push_back(to_double(alpha[i]) - f.cot_value * to_double(beta[i]));
        try {
            f.verdict = in_cone_float(m, ConeKind::Modified, p + 1, f.coords, eps);
        } catch (const missing_cone_error&) {
            f.missing_cone_data = true;
        }
        out.push_back(std::move(f));
    }
    return out;
}

struct DhymTestResult {
    Rational re_part;  // integral over V of Re(alpha + i beta)^p, exact
    Rational im_part;  // integral over V of Im(alpha + i beta)^p, exact
    double cot_value = 0;
    double value = 0;          // re - cot * im
    double product_value = 0;  // via the cotangent-root factorization
    bool paths_agree = true;
    bool marginal = false;
    int sgn = 0;  // 0 when marginal; destabilizing iff <= 0
};

/// Numerical solvability test against one candidate: the two integral
/// parts are exact rationals, only the cotangent is floating point.  The
/// product-form evaluation must agree within eps; a sign within eps of
/// zero is reported marginal rather than silently resolved.
inline DhymTestResult dhym_test(const ManifoldPresentation& m, const CohClass& alpha,
                                const CohClass& beta, double phi_hat, const SubvarietyCandidate& v,
                                double eps = kDefaultEps) {
    const int p = v.dim;
    DhymTestResult r;
    r.cot_value = 1.0 / std::tan(phi_hat);
    BiHomogPoly<Rational> re = dhym_re_poly<Rational>(p);
    BiHomogPoly<Rational> im = dhym_im_poly<Rational>(p);
    r.re_part = 0;
    r.im_part = 0;
    for (int i = 0; i <= p; ++i) {
        Rational pair_i = pairing_on(v, alpha, i, beta, p - i);
        r.re_part += re.coeff(i) * pair_i;
        r.im_part += im.coeff(i) * pair_i;
    }
    r.value = to_double(r.re_part) - r.cot_value * to_double(r.im_part);

    BiHomogPoly<double> prod = dhym_product_poly(dhym_cotangents(phi_hat, p));
    r.product_value = 0;
    for (int i = 0; i <= p; ++i)
        r.product_value += prod.coeff(i) * to_double(pairing_on(v, alpha, i, beta, p - i));

    double scale = std::max({1.0, std::fabs(to_double(r.re_part)),
                             std::fabs(r.cot_value * to_double(r.im_part))});
    r.paths_agree = std::fabs(r.value - r.product_value) <= eps * scale;
    r.marginal = std::fabs(r.value) < eps * scale;
    r.sgn = r.marginal ? 0 : (r.value > 0 ? 1 : -1);
    return r;
}

struct DhymHypothesisReport {
    bool covered_by_theorem = true;  // false for n >= 5
    bool window_ok = true;
    bool window_marginal = false;
    std::vector<DhymFactorClass> tau_checks;
    std::vector<std::string> failures;
};

/// Hypothesis audit for the finiteness theorem: dimension windows on the
/// angle and modified-cone membership of every factor class.  The verdict
/// enumerates failures instead of throwing.
inline DhymHypothesisReport dhym_hypothesis_check(const ManifoldPresentation& m,
                                                  const CohClass& alpha, const CohClass& beta,
                                                  double phi_hat, double eps = kDefaultEps) {
    DhymHypothesisReport rep;
    const double pi = std::acos(-1.0);
    if (m.dim > 4) {
        rep.covered_by_theorem = false;
        rep.failures.push_back("dimension exceeds the theorem range (n <= 4)");
    }
    if (m.dim == 4) {
        rep.window_ok = phi_hat > pi / 2 && phi_hat < pi;
        rep.window_marginal = std::fabs(phi_hat - pi / 2) < eps || std::fabs(phi_hat - pi) < eps;
        if (!rep.window_ok)
            rep.failures.push_back("phi_hat outside (pi/2, pi), required when n = 4");
    } else {
        rep.window_ok = phi_hat > 0 && phi_hat < pi;
        rep.window_marginal = phi_hat < eps || phi_hat > pi - eps;
        if (!rep.window_ok) rep.failures.push_back("phi_hat outside (0, pi)");
    }
    rep.tau_checks = dhym_factor_classes(m, alpha, beta, phi_hat, eps);
    for (const auto& f : rep.tau_checks) {
        if (f.missing_cone_data) {
            rep.failures.push_back("tau_" + std::to_string(f.p) + ": missing cone data");
        } else if (f.verdict.region != Region::Inside) {
            std::string what = "tau_" + std::to_string(f.p) + " not inside modified(" +
                               std::to_string(f.p + 1) + ")";
            if (f.verdict.marginal) what += " (marginal)";
            rep.failures.push_back(what);
        }
    }
    return rep;
}

}  // namespace stablab

#endif
