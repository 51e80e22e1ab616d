#ifndef STABLAB_WALLCHAMBER_HPP
#define STABLAB_WALLCHAMBER_HPP

#include <stablab/gma.hpp>
#include <stablab/jstability.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

namespace stablab {

/// Affine family beta(t) = (1-t) beta0 + t beta1 with t in [0, 1] and
/// Kaehler endpoints, hence Kaehler throughout by convexity.
struct ParameterSegment {
    CohClass beta0, beta1;

    CohClass at(const Rational& t) const { return (Rational(1) - t) * beta0 + t * beta1; }
    bool degenerate() const { return beta0 == beta1; }
};

inline ParameterSegment make_segment(const ManifoldPresentation& m, CohClass beta0, CohClass beta1) {
    if (!is_kahler(m, beta0) || !is_kahler(m, beta1))
        throw precondition_error("segment endpoints must be strictly Kaehler");
    return ParameterSegment{std::move(beta0), std::move(beta1)};
}

struct WallSource {
    std::string candidate;
    std::size_t alpha_index = 0;  // index into the sweep's alpha list; 0 for gMA paths
    RatPoly equation;             // the vanishing affine form in t
};

struct Wall {
    std::optional<Rational> t;  // empty only for identically-zero sources
    std::vector<WallSource> sources;
    bool spurious = false;          // adjacent chambers share all verdicts
    bool identically_zero = false;  // the defining form vanishes along the whole segment
};

namespace detail {

inline void push_wall(std::map<Rational, Wall>& by_t, std::vector<Wall>& degenerate,
                      const Rational& g0, const Rational& g1, WallSource source) {
    RatPoly equation({g0, g1 - g0});
    source.equation = equation;
    if (g0 == g1) {
        if (g0 == 0) {
            Wall w;
            w.identically_zero = true;
            w.sources.push_back(std::move(source));
            degenerate.push_back(std::move(w));
        }
        return;
    }
    Rational t_star = g0 / (g0 - g1);
    if (t_star < 0 || t_star > 1) return;
    Wall& w = by_t[t_star];
    w.t = t_star;
    w.sources.push_back(std::move(source));
}

inline std::vector<Wall> collect(std::map<Rational, Wall>& by_t, std::vector<Wall>& degenerate) {
    std::vector<Wall> walls;
    for (auto& [t, w] : by_t) walls.push_back(std::move(w));
    for (auto& w : degenerate) walls.push_back(std::move(w));
    return walls;
}

}  // namespace detail

/// Slope-equality walls along a segment: per (candidate, alpha) the
/// deficit is affine in t, so each pair contributes at most one exact
/// rational wall.  Ties are merged; identically vanishing deficits come
/// back flagged instead of located.
inline std::vector<Wall> j_walls(const ManifoldPresentation& m, const std::vector<CohClass>& alphas,
                                 const ParameterSegment& segment) {
    std::map<Rational, Wall> by_t;
    std::vector<Wall> degenerate;
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        const CohClass& alpha = alphas[ai];
        Rational mu0 = total_slope(m, alpha, segment.beta0);
        Rational mu1 = total_slope(m, alpha, segment.beta1);
        for (const auto& v : m.candidates) {
            Rational g0 = mu0 - slope(m, alpha, segment.beta0, v);
            Rational g1 = mu1 - slope(m, alpha, segment.beta1, v);
            detail::push_wall(by_t, degenerate, g0, g1, WallSource{v.name, ai, {}});
        }
    }
    return detail::collect(by_t, degenerate);
}

struct ChamberEntry {
    Rational t_lo, t_hi;
    std::vector<Status> statuses;                        // one per alpha
    std::vector<std::vector<std::string>> dest;          // one list per alpha
    std::vector<std::size_t> stable_alphas;              // the chamber's stable set
    std::vector<Completeness> completeness;              // one per alpha
};

struct ChamberReport {
    std::vector<Wall> walls;  // sorted located walls, then degenerate flags
    std::vector<Rational> certification_cuts;  // where hypothesis inequalities vanish
    std::vector<ChamberEntry> chambers;
};

/// Zeros of the declared completeness-hypothesis inequalities along the
/// segment.  The shifted slope classes are affine in t, so each inequality
/// contributes at most one exact cut; splitting chambers there keeps the
/// certified/relative flag constant per chamber.
inline std::vector<Rational> certification_cuts(const ManifoldPresentation& m,
                                                const std::vector<CohClass>& alphas,
                                                const ParameterSegment& segment) {
    std::vector<Rational> cuts;
    for (const auto& region : m.complete_regions) {
        if (region.statement != "modified-hypotheses") continue;
        for (const auto& alpha : alphas) {
            Rational mu0 = total_slope(m, alpha, segment.beta0);
            Rational mu1 = total_slope(m, alpha, segment.beta1);
            for (int p = 1; p <= m.dim - 1; ++p) {
                const ConeDescription* cone = m.find_cone(ConeKind::Modified, p + 1);
                if (!cone && p + 1 == m.dim) cone = m.find_cone(ConeKind::Big);
                if (!cone) continue;  // no data: never certified, hence no cut
                Rational shift = Rational(m.dim - p) * region.lambda;
                CohClass a0 = (mu0 - shift) * alpha - Rational(p) * segment.beta0;
                CohClass a1 = (mu1 - shift) * alpha - Rational(p) * segment.beta1;
                for (const auto& ineq : cone->inequalities) {
                    Rational g0(0), g1(0);
                    for (std::size_t i = 0; i < m.basis_size(); ++i) {
                        g0 += ineq.coeffs[i] * a0[i];
                        g1 += ineq.coeffs[i] * a1[i];
                    }
                    if (g0 == g1) continue;
                    Rational t_star = g0 / (g0 - g1);
                    if (t_star > 0 && t_star < 1) cuts.push_back(t_star);
                }
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

namespace detail {

inline ChamberEntry classify_chamber(const ManifoldPresentation& m,
                                     const std::vector<CohClass>& alphas,
                                     const ParameterSegment& segment, const Rational& t_lo,
                                     const Rational& t_hi) {
    ChamberEntry entry;
    entry.t_lo = t_lo;
    entry.t_hi = t_hi;
    auto eval = [&](const Rational& t) {
        std::vector<std::tuple<Status, std::vector<std::string>, Completeness>> out;
        CohClass beta = segment.at(t);
        for (const auto& alpha : alphas) {
            StabilityVerdict v = classify(m, alpha, beta);
            out.emplace_back(v.status, v.dest, v.completeness);
        }
        return out;
    };
    Rational mid = (t_lo + t_hi) / 2;
    auto at_mid = eval(mid);
    // verdicts must be constant on the open chamber; three interior probes
    for (int k = 1; k <= 3; ++k) {
        Rational probe = t_lo + Rational(k, 4) * (t_hi - t_lo);
        if (eval(probe) != at_mid)
            throw std::logic_error("chamber verdict not constant: a wall was missed");
    }
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        entry.statuses.push_back(std::get<0>(at_mid[ai]));
        entry.dest.push_back(std::get<1>(at_mid[ai]));
        if (std::get<0>(at_mid[ai]) == Status::Stable) entry.stable_alphas.push_back(ai);
        entry.completeness.push_back(std::get<2>(at_mid[ai]));
    }
    return entry;
}

}  // namespace detail

/// Chambers between consecutive walls, with verdicts checked constant on
/// three interior points each; walls separating identical verdicts get the
/// spurious flag.
inline ChamberReport chambers(const ManifoldPresentation& m, const std::vector<CohClass>& alphas,
                              const ParameterSegment& segment) {
    ChamberReport report;
    if (segment.degenerate()) {
        report.chambers.push_back(
            detail::classify_chamber(m, alphas, segment, Rational(0), Rational(1)));
        return report;
    }
    report.walls = j_walls(m, alphas, segment);
    report.certification_cuts = certification_cuts(m, alphas, segment);
    std::vector<Rational> cuts{Rational(0), Rational(1)};
    for (const auto& w : report.walls)
        if (w.t && *w.t > 0 && *w.t < 1) cuts.push_back(*w.t);
    for (const auto& t : report.certification_cuts) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        report.chambers.push_back(detail::classify_chamber(m, alphas, segment, cuts[i], cuts[i + 1]));

    // a wall is spurious when the chambers on either side agree everywhere
    for (auto& w : report.walls) {
        if (!w.t) continue;
        const ChamberEntry* left = nullptr;
        const ChamberEntry* right = nullptr;
        for (const auto& ch : report.chambers) {
            if (ch.t_hi == *w.t) left = &ch;
            if (ch.t_lo == *w.t) right = &ch;
        }
        if (left && right && left->statuses == right->statuses && left->dest == right->dest)
            w.spurious = true;
    }
    return report;
}

/// Wall locations for an affine gMA coefficient path c(t); the top
/// constant is re-solved at evaluation time and does not move the walls,
/// which only see Q_p for p < n.
inline std::vector<Wall> gma_walls(const ManifoldPresentation& m, const CohClass& alpha,
                                   const CohClass& beta, const std::vector<Rational>& c0,
                                   const std::vector<Rational>& c1) {
    if (static_cast<int>(c0.size()) != m.dim - 1 || static_cast<int>(c1.size()) != m.dim - 1)
        throw arity_error("gma_walls: coefficient paths need n-1 entries");
    for (const auto& x : c0)
        if (x < 0) throw precondition_error("gma_walls: path leaves the admissible orthant");
    for (const auto& x : c1)
        if (x < 0) throw precondition_error("gma_walls: path leaves the admissible orthant");
    std::map<Rational, Wall> by_t;
    std::vector<Wall> degenerate;
    auto test_value = [&](const std::vector<Rational>& c, const SubvarietyCandidate& v) {
        RatBiPoly q = q_polynomial(v.dim, c);
        Rational value(0);
        for (int i = 0; i <= v.dim; ++i)
            if (q.coeff(i) != 0) value += q.coeff(i) * pairing_on(v, alpha, i, beta, v.dim - i);
        return value;
    };
    for (const auto& v : m.candidates) {
        Rational g0 = test_value(c0, v);
        Rational g1 = test_value(c1, v);
        detail::push_wall(by_t, degenerate, g0, g1, WallSource{v.name, 0, {}});
    }
    return detail::collect(by_t, degenerate);
}

struct GmaChamberEntry {
    Rational t_lo, t_hi;
    Status status = Status::Stable;
    std::vector<std::string> dest;
    Rational c_top_mid;  // re-solved top constant at the chamber midpoint
};

struct GmaChamberReport {
    std::vector<Wall> walls;
    std::vector<GmaChamberEntry> chambers;
};

inline GmaChamberReport gma_chambers(const ManifoldPresentation& m, const CohClass& alpha,
                                     const CohClass& beta, const std::vector<Rational>& c0,
                                     const std::vector<Rational>& c1) {
    GmaChamberReport report;
    report.walls = gma_walls(m, alpha, beta, c0, c1);
    std::vector<Rational> cuts{Rational(0), Rational(1)};
    for (const auto& w : report.walls)
        if (w.t && *w.t > 0 && *w.t < 1) cuts.push_back(*w.t);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto coeffs_at = [&](const Rational& t) {
        std::vector<Rational> c(c0.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = (Rational(1) - t) * c0[i] + t * c1[i];
        GmaCoefficients g{c, Rational(0)};
        g.c_top = solve_top_constant(m, alpha, beta, c);
        return g;
    };
    auto verdict_at = [&](const Rational& t) {
        GmaVerdict v = classify_gma(m, alpha, beta, coeffs_at(t));
        return std::make_pair(v.status, v.dest);
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        GmaChamberEntry entry;
        entry.t_lo = cuts[i];
        entry.t_hi = cuts[i + 1];
        Rational mid = (entry.t_lo + entry.t_hi) / 2;
        auto at_mid = verdict_at(mid);
        for (int k = 1; k <= 3; ++k) {
            Rational probe = entry.t_lo + Rational(k, 4) * (entry.t_hi - entry.t_lo);
            if (verdict_at(probe) != at_mid)
                throw std::logic_error("gMA chamber verdict not constant: a wall was missed");
        }
        entry.status = at_mid.first;
        entry.dest = at_mid.second;
        entry.c_top_mid = coeffs_at(mid).c_top;
        report.chambers.push_back(std::move(entry));
    }
    return report;
}

struct OracleRow {
    Rational t;
    std::vector<Status> statuses;
    std::vector<std::vector<std::string>> dest;
};

/// Brute-force verification oracle: direct classification on an even grid,
/// no wall arithmetic involved.
inline std::vector<OracleRow> sweep_oracle(const ManifoldPresentation& m,
                                           const std::vector<CohClass>& alphas,
                                           const ParameterSegment& segment, int grid) {
    if (grid < 2) throw precondition_error("sweep_oracle: grid must be at least 2");
    std::vector<OracleRow> rows;
    for (int i = 0; i <= grid; ++i) {
        OracleRow row;
        row.t = Rational(i, grid);
        CohClass beta = segment.at(row.t);
        for (const auto& alpha : alphas) {
            StabilityVerdict v = classify(m, alpha, beta);
            row.statuses.push_back(v.status);
            row.dest.push_back(v.dest);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// CSV export: one row per chamber with the separating wall's sources.
inline std::string chambers_to_csv(const ChamberReport& report,
                                   const std::vector<std::string>& alpha_names) {
    std::ostringstream os;
    os << "t_lo,t_hi,wall_source";
    for (const auto& name : alpha_names) os << ",status[" << name << "],dest[" << name << "]";
    os << "\n";
    for (std::size_t i = 0; i < report.chambers.size(); ++i) {
        const ChamberEntry& ch = report.chambers[i];
        os << format_rational(ch.t_lo) << "," << format_rational(ch.t_hi) << ",";
        std::string sources;
        for (const auto& w : report.walls) {
            if (!w.t || *w.t != ch.t_hi) continue;
            for (const auto& s : w.sources) sources += (sources.empty() ? "" : ";") + s.candidate;
        }
        os << sources;
        for (std::size_t ai = 0; ai < ch.statuses.size(); ++ai) {
            os << "," << status_name(ch.statuses[ai]) << ",";
            for (std::size_t k = 0; k < ch.dest[ai].size(); ++k)
                os << (k ? ";" : "") << ch.dest[ai][k];
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace stablab

#endif
