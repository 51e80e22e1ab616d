#ifndef STABLAB_POSITIVITY_HPP
#define STABLAB_POSITIVITY_HPP

#include <stablab/cones.hpp>
#include <stablab/geometry.hpp>

#include <optional>
#include <vector>

namespace stablab {

inline const ConeDescription& require_cone(const ManifoldPresentation& m, ConeKind kind, int p = 0) {
    const ConeDescription* cone = m.find_cone(kind, p);
    if (!cone) {
        std::string what = "missing cone data for " + cone_kind_name(kind);
        if (kind == ConeKind::Modified) what += "(" + std::to_string(p) + ")";
        what += " on " + m.name;
        throw missing_cone_error(what);
    }
    return *cone;
}

/// Exact three-way membership verdict for the requested cone kind.
/// modified(1) falls back to the Kaehler cone and modified(n) to the big
/// cone when the presentation does not spell them out separately.
inline Region in_cone(const ManifoldPresentation& m, ConeKind kind, int p, const CohClass& c) {
    if (c.size() != m.basis_size()) throw arity_error("class coordinate size does not match basis");
    const ConeDescription* cone = m.find_cone(kind, p);
    if (!cone && kind == ConeKind::Modified) {
        if (p == 1) cone = m.find_cone(ConeKind::Kahler);
        if (p == m.dim) cone = m.find_cone(ConeKind::Big);
    }
    if (!cone) return cone_region(require_cone(m, kind, p), c.coords());  // throws
    return cone_region(*cone, c.coords());
}

inline Region in_cone(const ManifoldPresentation& m, ConeKind kind, const CohClass& c) {
    return in_cone(m, kind, 0, c);
}

inline FloatRegion in_cone_float(const ManifoldPresentation& m, ConeKind kind, int p,
                                 const std::vector<double>& coords, double eps) {
    const ConeDescription* cone = m.find_cone(kind, p);
    if (!cone && kind == ConeKind::Modified) {
        if (p == 1) cone = m.find_cone(ConeKind::Kahler);
        if (p == m.dim) cone = m.find_cone(ConeKind::Big);
    }
    if (!cone) require_cone(m, kind, p);  // throws
    return cone_region_float(*cone, coords, eps);
}

inline bool is_kahler(const ManifoldPresentation& m, const CohClass& c) {
    return in_cone(m, ConeKind::Kahler, c) == Region::Inside;
}

/// The projection of beta through alpha: the unique ray on the nef
/// boundary of the form c2 alpha + c1 beta with c2 > 0, normalized so the
/// largest basis coordinate is 1.  Exists for non-proportional Kaehler
/// classes whenever the nef cone is polyhedral on their span.
inline CohClass projection(const ManifoldPresentation& m, const CohClass& alpha, const CohClass& beta) {
    if (!is_kahler(m, alpha) || !is_kahler(m, beta))
        throw precondition_error("projection: alpha and beta must be strictly Kaehler");
    const ConeDescription& nef = require_cone(m, ConeKind::Nef);

    // restrict each nef inequality to the (x, y) -> x alpha + y beta plane
    std::vector<std::pair<Rational, Rational>> section;
    for (const auto& ineq : nef.inequalities) {
        Rational A(0), B(0);
        for (std::size_t i = 0; i < m.basis_size(); ++i) {
            A += ineq.coeffs[i] * alpha[i];
            B += ineq.coeffs[i] * beta[i];
        }
        section.emplace_back(std::move(A), std::move(B));
    }

    auto satisfied = [&](const Rational& x, const Rational& y) {
        for (const auto& [A, B] : section)
            if (A * x + B * y < 0) return false;
        return true;
    };

    // boundary rays: for each section line A x + B y = 0 test both
    // directions; keep those inside the section cone with x > 0
    std::vector<std::pair<Rational, Rational>> rays;
    for (const auto& [A, B] : section) {
        if (A == 0 && B == 0) continue;
        for (int s : {1, -1}) {
            Rational x = Rational(s) * B, y = Rational(-s) * A;
            if (x <= 0) continue;
            if (!satisfied(x, y)) continue;
            Rational slope_num = y, slope_den = x;
            bool dup = false;
            for (const auto& [rx, ry] : rays)
                if (ry * slope_den == slope_num * rx) dup = true;
            if (!dup) rays.emplace_back(std::move(x), std::move(y));
        }
    }
    if (rays.empty())
        throw precondition_error("projection: no nef boundary ray with positive alpha component");
    if (rays.size() > 1)
        throw precondition_error("projection: boundary ray not unique (alpha proportional to beta?)");

    CohClass eta = rays[0].first * alpha + rays[0].second * beta;
    Rational largest = eta[0];
    for (std::size_t i = 1; i < eta.size(); ++i) largest = std::max(largest, eta[i]);
    if (largest <= 0) throw precondition_error("projection: cannot normalize boundary class");
    return (Rational(1) / largest) * eta;
}

/// slope of the whole manifold, n * (alpha^(n-1) . beta) / alpha^n
inline Rational total_slope(const ManifoldPresentation& m, const CohClass& alpha, const CohClass& beta) {
    Rational den = pairing(m, alpha, m.dim, beta, 0);
    if (den == 0) throw degenerate_error("total slope: alpha^n pairing vanishes");
    return Rational(m.dim) * pairing(m, alpha, m.dim - 1, beta, 1) / den;
}

struct ModifiedHypothesisVerdict {
    int p = 0;           // slope shift index; tested against modified(p+1)
    CohClass cls;        // (mu - (n-p) lambda) alpha - p beta
    Region region = Region::Outside;
};

/// Membership of the shifted slope classes in the ascending modified
/// cones: lambda = 0 tests the plain finiteness hypothesis, lambda equal
/// to the stability threshold the optimal-destabilizer variant.
inline std::vector<ModifiedHypothesisVerdict> check_modified_hypotheses(const ManifoldPresentation& m,
                                                                        const CohClass& alpha,
                                                                        const CohClass& beta,
                                                                        const Rational& lambda) {
    Rational mu = total_slope(m, alpha, beta);
    std::vector<ModifiedHypothesisVerdict> out;
    for (int p = 1; p <= m.dim - 1; ++p) {
        ModifiedHypothesisVerdict v;
        v.p = p;
        v.cls = (mu - Rational(m.dim - p) * lambda) * alpha - Rational(p) * beta;
        v.region = in_cone(m, ConeKind::Modified, p + 1, v.cls);
        out.push_back(std::move(v));
    }
    return out;
}

inline bool all_inside(const std::vector<ModifiedHypothesisVerdict>& vs) {
    for (const auto& v : vs)
        if (v.region != Region::Inside) return false;
    return true;
}

}  // namespace stablab

#endif
