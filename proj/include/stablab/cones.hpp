#ifndef STABLAB_CONES_HPP
#define STABLAB_CONES_HPP

#include <stablab/rational.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace stablab {

enum class ConeKind { Kahler, Nef, Pseff, Big, Modified };

inline std::string cone_kind_name(ConeKind k) {
    switch (k) {
        case ConeKind::Kahler: return "kahler";
        case ConeKind::Nef: return "nef";
        case ConeKind::Pseff: return "pseff";
        case ConeKind::Big: return "big";
        default: return "modified";
    }
}

/// Three-way verdict against the closure of a cone: Outside means some
/// defining form is negative, Boundary that all are nonnegative with at
/// least one zero, Inside that all are strictly positive.
enum class Region { Inside, Boundary, Outside };

inline std::string region_name(Region r) {
    switch (r) {
        case Region::Inside: return "inside";
        case Region::Boundary: return "boundary";
        default: return "outside";
    }
}

struct LinearInequality {
    std::vector<Rational> coeffs;
    bool strict = true;

    friend bool operator==(const LinearInequality&, const LinearInequality&) = default;
};

/// Polyhedral cone on the coordinate span: membership is the conjunction
/// of the linear inequalities.  The strictness tags record whether the
/// cone is open (Kahler, big, modified) or closed (nef, pseff) in each
/// facet; the three-way verdict below is taken on the closure either way.
struct ConeDescription {
    ConeKind kind = ConeKind::Kahler;
    int p = 0;  // meaningful for ConeKind::Modified only
    std::vector<LinearInequality> inequalities;

    friend bool operator==(const ConeDescription&, const ConeDescription&) = default;
};

inline Region cone_region(const ConeDescription& cone, const std::vector<Rational>& coords) {
    bool on_boundary = false;
    for (const auto& ineq : cone.inequalities) {
        if (ineq.coeffs.size() != coords.size())
            throw arity_error("cone inequality arity does not match class coordinates");
        Rational v(0);
        for (std::size_t i = 0; i < coords.size(); ++i) v += ineq.coeffs[i] * coords[i];
        int s = sign(v);
        if (s < 0) return Region::Outside;
        if (s == 0) on_boundary = true;
    }
    return on_boundary ? Region::Boundary : Region::Inside;
}

/// Floating-point variant for transcendental-coefficient classes (dHYM).
/// Any form within eps of zero makes the verdict marginal.
struct FloatRegion {
    Region region;
    bool marginal;
};

inline FloatRegion cone_region_float(const ConeDescription& cone, const std::vector<double>& coords,
                                     double eps) {
    bool on_boundary = false, marginal = false;
    Region worst = Region::Inside;
    for (const auto& ineq : cone.inequalities) {
        if (ineq.coeffs.size() != coords.size())
            throw arity_error("cone inequality arity does not match class coordinates");
        double v = 0;
        for (std::size_t i = 0; i < coords.size(); ++i) v += to_double(ineq.coeffs[i]) * coords[i];
        if (std::fabs(v) < eps) {
            marginal = true;
            on_boundary = true;
        } else if (v < 0) {
            worst = Region::Outside;
        }
    }
    if (worst == Region::Outside) return {Region::Outside, marginal};
    return {on_boundary ? Region::Boundary : Region::Inside, marginal};
}

}  // namespace stablab

#endif
