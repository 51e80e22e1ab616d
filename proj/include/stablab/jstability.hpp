#ifndef STABLAB_JSTABILITY_HPP
#define STABLAB_JSTABILITY_HPP

#include <stablab/geometry.hpp>
#include <stablab/positivity.hpp>

#include <optional>
#include <string>
#include <vector>

namespace stablab {

/// slope of a candidate, dim V * (alpha^(dim V - 1) . beta . V) / (alpha^dim V . V)
inline Rational slope(const ManifoldPresentation&, const CohClass& alpha, const CohClass& beta,
                      const SubvarietyCandidate& v) {
    Rational den = pairing_on(v, alpha, v.dim, beta, 0);
    if (den == 0)
        throw degenerate_error("slope: alpha^p pairing vanishes on candidate " + v.name);
    return Rational(v.dim) * pairing_on(v, alpha, v.dim - 1, beta, 1) / den;
}

inline Rational slope(const ManifoldPresentation& m, const CohClass& alpha, const CohClass& beta) {
    return total_slope(m, alpha, beta);
}

struct CandidateSlope {
    std::string name;
    int dim = 0;
    Rational mu;
    Rational deficit;  // (mu_total - mu) / (n - dim), exact
};

struct SlopeReport {
    Rational mu_total;
    std::vector<CandidateSlope> per_candidate;
};

inline SlopeReport slope_report(const ManifoldPresentation& m, const CohClass& alpha,
                                const CohClass& beta) {
    SlopeReport r;
    r.mu_total = total_slope(m, alpha, beta);
    for (const auto& v : m.candidates) {
        CandidateSlope cs;
        cs.name = v.name;
        cs.dim = v.dim;
        cs.mu = slope(m, alpha, beta, v);
        cs.deficit = (r.mu_total - cs.mu) / Rational(m.dim - v.dim);
        r.per_candidate.push_back(std::move(cs));
    }
    return r;
}

/// min over candidates of the normalized deficit; an upper bound for the
/// true threshold, so it comes flagged relative unless a completeness
/// region certifies the pair.
inline Rational stability_threshold(const ManifoldPresentation& m, const CohClass& alpha,
                                    const CohClass& beta) {
    if (m.candidates.empty()) throw precondition_error("stability threshold needs candidates");
    SlopeReport r = slope_report(m, alpha, beta);
    Rational best = r.per_candidate.front().deficit;
    for (const auto& c : r.per_candidate) best = std::min(best, c.deficit);
    return best;
}

enum class Status { Stable, SemistableStrictly, Unstable };
enum class Completeness { Certified, Relative };

inline std::string status_name(Status s) {
    switch (s) {
        case Status::Stable: return "stable";
        case Status::SemistableStrictly: return "semistable-strictly";
        default: return "unstable";
    }
}

inline std::string completeness_name(Completeness c) {
    return c == Completeness::Certified ? "certified" : "relative";
}

struct StabilityVerdict {
    Status status = Status::Stable;
    std::vector<std::string> dest;      // mu(V) >= mu, non-strict by definition
    std::vector<std::string> dest_opt;  // argmin deficit, only when threshold <= 0
    Rational delta_pp;
    Completeness completeness = Completeness::Relative;
    SlopeReport slopes;
};

/// True when a declared completeness region covers the pair; the supported
/// statement family requires the lambda-shifted slope classes inside the
/// ascending modified cones.
inline bool completeness_certified(const ManifoldPresentation& m, const CohClass& alpha,
                                   const CohClass& beta) {
    for (const auto& region : m.complete_regions) {
        if (region.statement != "modified-hypotheses") continue;
        try {
            if (all_inside(check_modified_hypotheses(m, alpha, beta, region.lambda))) return true;
        } catch (const missing_cone_error&) {
            continue;
        }
    }
    return false;
}

inline StabilityVerdict classify(const ManifoldPresentation& m, const CohClass& alpha,
                                 const CohClass& beta) {
    if (m.candidates.empty()) throw precondition_error("classify needs a candidate list");
    StabilityVerdict v;
    v.slopes = slope_report(m, alpha, beta);
    v.delta_pp = v.slopes.per_candidate.front().deficit;
    for (const auto& c : v.slopes.per_candidate) v.delta_pp = std::min(v.delta_pp, c.deficit);
    for (const auto& c : v.slopes.per_candidate) {
        if (c.mu >= v.slopes.mu_total) v.dest.push_back(c.name);
        if (v.delta_pp <= 0 && c.deficit == v.delta_pp) v.dest_opt.push_back(c.name);
    }
    int s = sign(v.delta_pp);
    v.status = s > 0 ? Status::Stable : (s == 0 ? Status::SemistableStrictly : Status::Unstable);
    v.completeness =
        completeness_certified(m, alpha, beta) ? Completeness::Certified : Completeness::Relative;
    return v;
}

enum class Solvability {
    Solvable,
    NotSolvable,
    RelativeStable,
    RelativeSemistable,
    RelativeUnstable
};

inline std::string solvability_name(Solvability s) {
    switch (s) {
        case Solvability::Solvable: return "solvable";
        case Solvability::NotSolvable: return "not-solvable";
        case Solvability::RelativeStable: return "relative-stable";
        case Solvability::RelativeSemistable: return "relative-semistable";
        default: return "relative-unstable";
    }
}

struct EffectiveTestResult {
    Solvability verdict = Solvability::RelativeStable;
    std::vector<std::string> witnesses;  // destabilizers when not solvable
    std::vector<ModifiedHypothesisVerdict> hypotheses;
    bool hypotheses_hold = false;
    StabilityVerdict classification;
};

/// Finite effective test: under the modified-cone hypotheses and a
/// certified candidate list, solvability is equivalent to strict slope
/// dominance over the finitely many candidates.  Otherwise the verdict is
/// downgraded to a relative one.
inline EffectiveTestResult effective_test(const ManifoldPresentation& m, const CohClass& alpha,
                                          const CohClass& beta, const Rational& lambda = Rational(0)) {
    EffectiveTestResult r;
    r.classification = classify(m, alpha, beta);
    try {
        r.hypotheses = check_modified_hypotheses(m, alpha, beta, lambda);
        r.hypotheses_hold = all_inside(r.hypotheses);
    } catch (const missing_cone_error&) {
        r.hypotheses_hold = false;
    }
    bool certified =
        r.hypotheses_hold && r.classification.completeness == Completeness::Certified;
    if (certified) {
        if (r.classification.status == Status::Stable) {
            r.verdict = Solvability::Solvable;
        } else {
            r.verdict = Solvability::NotSolvable;
            r.witnesses = r.classification.dest;
        }
        return r;
    }
    switch (r.classification.status) {
        case Status::Stable: r.verdict = Solvability::RelativeStable; break;
        case Status::SemistableStrictly: r.verdict = Solvability::RelativeSemistable; break;
        default: r.verdict = Solvability::RelativeUnstable; break;
    }
    r.witnesses = r.classification.dest;
    return r;
}

enum class DoubleInequality { Holds, Fails, Inapplicable };

struct DoubleInequalityResult {
    DoubleInequality outcome = DoubleInequality::Inapplicable;
    Rational lower, upper, delta;
    bool candidate_incompleteness_suspected = false;
};

/// Two-sided bound on the stability threshold along alpha_t =
/// (1-t) eta + t beta, eta the projection class:
///   mu - (n-1)/t <= Delta(alpha_t) <= (mu - 1/t)/(n-1),  mu = mu(alpha_t, beta).
/// Inapplicable unless some scanned t0 has Delta <= 0.  A failure of the
/// upper bound signals a candidate list missing the degenerating cycle,
/// not an arithmetic bug.
inline DoubleInequalityResult double_inequality_check(const ManifoldPresentation& m,
                                                      const CohClass& eta, const CohClass& beta,
                                                      const Rational& t, int scan_points = 32) {
    if (t <= 0 || t > 1) throw precondition_error("double_inequality_check: t must be in (0, 1]");
    auto alpha_at = [&](const Rational& s) { return (Rational(1) - s) * eta + s * beta; };

    bool applicable = false;
    for (int i = 1; i <= scan_points; ++i) {
        Rational s(i, scan_points);
        if (stability_threshold(m, alpha_at(s), beta) <= 0) {
            applicable = true;
            break;
        }
    }
    if (!applicable && stability_threshold(m, alpha_at(t), beta) <= 0) applicable = true;

    DoubleInequalityResult r;
    if (!applicable) return r;

    CohClass alpha_t = alpha_at(t);
    Rational mu = total_slope(m, alpha_t, beta);
    r.lower = mu - Rational(m.dim - 1) / t;
    r.upper = (mu - Rational(1) / t) / Rational(m.dim - 1);
    r.delta = stability_threshold(m, alpha_t, beta);
    bool holds = (r.lower <= r.delta) && (r.delta <= r.upper);
    r.outcome = holds ? DoubleInequality::Holds : DoubleInequality::Fails;
    r.candidate_incompleteness_suspected = !holds;
    return r;
}

}  // namespace stablab

#endif
