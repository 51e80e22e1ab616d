#ifndef STABLAB_GMA_HPP
#define STABLAB_GMA_HPP

#include <stablab/geometry.hpp>
#include <stablab/jstability.hpp>
#include <stablab/polynomial.hpp>
#include <stablab/positivity.hpp>
#include <stablab/roots.hpp>

#include <string>
#include <vector>

namespace stablab {

/// Coefficients of the source form sum c_k theta^k + c_top theta^n with
/// constant top part.  The lower coefficients must be nonnegative and not
/// everything may vanish at once.
struct GmaCoefficients {
    std::vector<Rational> c;  // c[k-1] is the theta^k coefficient, k = 1..n-1
    Rational c_top;           // the theta^n coefficient

    int n() const { return static_cast<int>(c.size()) + 1; }

    void validate() const {
        bool any = (c_top != 0);
        for (const auto& ck : c) {
            if (ck < 0) throw precondition_error("gMA coefficients must be nonnegative");
            if (ck != 0) any = true;
        }
        if (!any) throw precondition_error("gMA coefficients must not all vanish");
    }
};

/// Degree-p homogeneous part of exp(x)(1 - sum c_k y^k):
///   Q_p(x, y) = x^p / p! - sum_(k=1..p) c_k x^(p-k) y^k / (p-k)!
inline RatBiPoly q_polynomial(int p, const std::vector<Rational>& c) {
    if (p < 1 || p > static_cast<int>(c.size()))
        throw precondition_error("q_polynomial: p must be between 1 and n-1");
    RatBiPoly q(p);
    q.coeff(p) = Rational(1) / Rational(factorial(static_cast<unsigned>(p)));
    for (int k = 1; k <= p; ++k)
        q.coeff(p - k) =
            -c[static_cast<std::size_t>(k - 1)] / Rational(factorial(static_cast<unsigned>(p - k)));
    return q;
}

/// Residual of the cohomological normalization; zero for consistent data.
inline Rational cohomological_residual(const ManifoldPresentation& m, const CohClass& alpha,
                                       const CohClass& beta, const GmaCoefficients& coeffs) {
    const int n = m.dim;
    if (coeffs.n() != n) throw arity_error("coefficient count does not match manifold dimension");
    Rational r = pairing(m, alpha, n, beta, 0) / Rational(factorial(static_cast<unsigned>(n)));
    for (int k = 1; k <= n - 1; ++k)
        r -= coeffs.c[static_cast<std::size_t>(k - 1)] *
             pairing(m, alpha, n - k, beta, k) /
             Rational(factorial(static_cast<unsigned>(n - k)));
    r -= coeffs.c_top * pairing(m, alpha, 0, beta, n);
    return r;
}

/// The unique top constant making the cohomological condition hold, with
/// an exact residual recheck.
inline Rational solve_top_constant(const ManifoldPresentation& m, const CohClass& alpha,
                                   const CohClass& beta, const std::vector<Rational>& c) {
    const int n = m.dim;
    if (static_cast<int>(c.size()) != n - 1)
        throw arity_error("solve_top_constant: expected n-1 lower coefficients");
    Rational beta_top = pairing(m, alpha, 0, beta, n);
    if (beta_top == 0) throw degenerate_error("solve_top_constant: beta^n vanishes");
    Rational num = pairing(m, alpha, n, beta, 0) / Rational(factorial(static_cast<unsigned>(n)));
    for (int k = 1; k <= n - 1; ++k)
        num -= c[static_cast<std::size_t>(k - 1)] * pairing(m, alpha, n - k, beta, k) /
               Rational(factorial(static_cast<unsigned>(n - k)));
    Rational c_top = num / beta_top;
    GmaCoefficients full{c, c_top};
    if (cohomological_residual(m, alpha, beta, full) != 0)
        throw degenerate_error("solve_top_constant: residual recheck failed");
    return c_top;
}

struct FactorEntry {
    int p = 0;
    RootHandle r;        // largest nonnegative root of Q_p(x, 1)
    DividedBi qtilde;    // certified-nonnegative quotient, tau_p = alpha - r beta
};

struct FactorData {
    std::vector<FactorEntry> entries;  // p = 1..n-1

    const FactorEntry& at(int p) const { return entries.at(static_cast<std::size_t>(p - 1)); }
};

/// Constructive factorization Q_p = (x - r_p y) Qtilde_p for every p.
/// The roots are nondecreasing, strictly increasing past any positive one;
/// both facts are asserted exactly.
inline FactorData factorize(const GmaCoefficients& coeffs) {
    coeffs.validate();
    const int n = coeffs.n();
    FactorData data;
    for (int p = 1; p <= n - 1; ++p) {
        RatBiPoly q = q_polynomial(p, coeffs.c);
        auto root = isolate_largest_nonneg_root(q.restrict_y1());
        if (!root)
            throw degenerate_error("factorize: Q_p(x,1) has no nonnegative root at p = " +
                                   std::to_string(p));
        FactorEntry e{p, *root, divide_out_linear(q, *root)};
        data.entries.push_back(std::move(e));
    }
    for (int p = 1; p <= n - 2; ++p) {
        const RootHandle& rp = data.at(p).r;
        const RootHandle& rnext = data.at(p + 1).r;
        int cmp = compare_roots(rp, rnext);
        bool next_positive = !rnext.is_zero();
        if (cmp > 0 || (next_positive && cmp >= 0))
            throw degenerate_error("factorize: factor roots fail to descend at p = " +
                                   std::to_string(p));
    }
    return data;
}

struct GmaTestResult {
    Rational value;  // integral over V of Q_p(alpha, beta)
    int sgn = 0;     // destabilizing iff <= 0
};

/// Nakai-type test integral against one candidate.  For dimension-p
/// candidates only the degree-p part of exp(alpha)(1 - Theta) survives,
/// which is Q_p(alpha, beta); the value is exact.
inline GmaTestResult gma_test(const ManifoldPresentation& m, const CohClass& alpha,
                              const CohClass& beta, const GmaCoefficients& coeffs,
                              const SubvarietyCandidate& v) {
    if (coeffs.n() != m.dim) throw arity_error("coefficient count does not match manifold dimension");
    if (v.dim < 1 || v.dim > m.dim - 1)
        throw arity_error("gma_test: candidate dimension out of range");
    RatBiPoly q = q_polynomial(v.dim, coeffs.c);
    Rational value(0);
    for (int i = 0; i <= v.dim; ++i) {
        if (q.coeff(i) == 0) continue;
        value += q.coeff(i) * pairing_on(v, alpha, i, beta, v.dim - i);
    }
    return {value, sign(value)};
}

struct FactorConeVerdict {
    int p = 0;
    Region region = Region::Outside;  // tau_p against modified(p+1)
    bool missing_data = false;
};

/// Exact membership of tau_p = alpha - r_p beta in the requested cone.
/// Each linear form evaluates to l(alpha) - r_p l(beta); its sign is
/// decided by the unique-positive-root comparison, never by floating
/// point.
inline Region factor_class_region(const ManifoldPresentation& m, ConeKind kind, int cone_p,
                                  const CohClass& alpha, const CohClass& beta, const RatPoly& h_p,
                                  const RootHandle& r) {
    const ConeDescription* cone = m.find_cone(kind, cone_p);
    if (!cone && kind == ConeKind::Modified) {
        if (cone_p == 1) cone = m.find_cone(ConeKind::Kahler);
        if (cone_p == m.dim) cone = m.find_cone(ConeKind::Big);
    }
    if (!cone) require_cone(m, kind, cone_p);
    bool boundary = false;
    for (const auto& ineq : cone->inequalities) {
        Rational la(0), lb(0);
        for (std::size_t i = 0; i < m.basis_size(); ++i) {
            la += ineq.coeffs[i] * alpha[i];
            lb += ineq.coeffs[i] * beta[i];
        }
        int s;
        if (lb == 0) {
            s = sign(la);
        } else {
            Rational qv = la / lb;
            int pos;  // sign of (qv - r)
            if (qv < 0) {
                pos = -1;
            } else {
                switch (sign_relative_to_root(h_p, qv)) {
                    case RootSide::Above: pos = 1; break;
                    case RootSide::At: pos = 0; break;
                    default: pos = -1; break;
                }
            }
            s = sign(lb) * pos;
        }
        if (s < 0) return Region::Outside;
        if (s == 0) boundary = true;
    }
    return boundary ? Region::Boundary : Region::Inside;
}

struct GmaVerdict {
    Status status = Status::Stable;
    std::vector<std::string> dest;  // candidates with test value <= 0
    std::vector<std::pair<std::string, Rational>> values;
    std::vector<FactorConeVerdict> tau_cones;
    Completeness completeness = Completeness::Relative;
};

inline GmaVerdict classify_gma(const ManifoldPresentation& m, const CohClass& alpha,
                               const CohClass& beta, const GmaCoefficients& coeffs) {
    coeffs.validate();
    if (m.candidates.empty()) throw precondition_error("classify_gma needs a candidate list");
    GmaVerdict out;
    int min_sign = 1;
    for (const auto& v : m.candidates) {
        GmaTestResult t = gma_test(m, alpha, beta, coeffs, v);
        out.values.emplace_back(v.name, t.value);
        if (t.sgn <= 0) out.dest.push_back(v.name);
        min_sign = std::min(min_sign, t.sgn);
    }
    out.status = min_sign > 0 ? Status::Stable
                              : (min_sign == 0 ? Status::SemistableStrictly : Status::Unstable);

    FactorData factors = factorize(coeffs);
    bool all_tau_inside = true;
    for (const auto& e : factors.entries) {
        FactorConeVerdict fv;
        fv.p = e.p;
        RatBiPoly q = q_polynomial(e.p, coeffs.c);
        try {
            fv.region =
                factor_class_region(m, ConeKind::Modified, e.p + 1, alpha, beta, q.restrict_y1(), e.r);
        } catch (const missing_cone_error&) {
            fv.missing_data = true;
        }
        if (fv.missing_data || fv.region != Region::Inside) all_tau_inside = false;
        out.tau_cones.push_back(fv);
    }
    // factor classes inside the ascending modified cones play the role the
    // shifted slope classes play for the J-equation
    bool declared = false;
    for (const auto& region : m.complete_regions)
        if (region.statement == "modified-hypotheses") declared = true;
    out.completeness =
        (declared && all_tau_inside) ? Completeness::Certified : Completeness::Relative;
    return out;
}

struct InverseHessianData {
    GmaCoefficients coeffs;
    Rational kappa;
    int k = 0;
    std::vector<std::pair<int, Rational>> kappa_p;  // p >= k: r_p = kappa_p^(1/k)
};

/// The inverse Hessian source kappa theta^k, with kappa pinned by the
/// cohomological normalization rather than read off a closed formula.
inline InverseHessianData inverse_hessian(const ManifoldPresentation& m, const CohClass& alpha,
                                          const CohClass& beta, int k) {
    const int n = m.dim;
    if (k < 1 || k > n - 1) throw precondition_error("inverse_hessian: k must be in 1..n-1");
    Rational den = pairing(m, alpha, n - k, beta, k);
    if (den == 0) throw degenerate_error("inverse_hessian: beta^k alpha^(n-k) pairing vanishes");
    Rational kappa = pairing(m, alpha, n, beta, 0) *
                     Rational(factorial(static_cast<unsigned>(n - k))) /
                     (Rational(factorial(static_cast<unsigned>(n))) * den);
    if (kappa <= 0)
        throw degenerate_error("inverse_hessian: normalization constant is not positive");
    InverseHessianData out;
    out.k = k;
    out.kappa = kappa;
    out.coeffs.c.assign(static_cast<std::size_t>(n - 1), Rational(0));
    out.coeffs.c[static_cast<std::size_t>(k - 1)] = kappa;
    out.coeffs.c_top = 0;
    for (int p = k; p <= n - 1; ++p)
        out.kappa_p.emplace_back(p, Rational(factorial(static_cast<unsigned>(p))) * kappa /
                                        Rational(factorial(static_cast<unsigned>(p - k))));
    return out;
}

struct ZDatumResult {
    std::vector<Rational> b;  // b_1 .. b_n
    bool all_negative = false;
};

/// Coefficients induced by a stability datum: b_k are the ratios of
/// Im(conj(Z) rho_k) against Im(conj(Z) rho_0).  The admissibility report
/// states whether all b_k are negative; the sign bridge to nonnegative
/// gMA coefficients is deliberately left to the caller.
inline ZDatumResult from_z_datum(const ComplexRational& z, const std::vector<ComplexRational>& rho) {
    if (rho.empty()) throw precondition_error("from_z_datum: empty stability vector");
    ComplexRational zc = z.conj();
    auto im_of_product = [&](const ComplexRational& r) { return (zc * r).im; };
    Rational den = im_of_product(rho[0]);
    if (den == 0) throw degenerate_error("from_z_datum: Im(conj(Z) rho_0) vanishes");
    ZDatumResult out;
    out.all_negative = true;
    for (std::size_t k = 1; k < rho.size(); ++k) {
        Rational bk = im_of_product(rho[k]) / den;
        if (bk >= 0) out.all_negative = false;
        out.b.push_back(std::move(bk));
    }
    return out;
}

}  // namespace stablab

#endif
