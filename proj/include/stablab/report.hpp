#ifndef STABLAB_REPORT_HPP
#define STABLAB_REPORT_HPP

#include <stablab/dhym.hpp>
#include <stablab/gma.hpp>
#include <stablab/jstability.hpp>
#include <stablab/manifold_io.hpp>
#include <stablab/roots.hpp>
#include <stablab/version.hpp>
#include <stablab/wallchamber.hpp>

#include <string>
#include <vector>

namespace stablab {

inline json class_to_json(const CohClass& c) {
    json arr = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) arr.push_back(format_rational(c[i]));
    return arr;
}

inline json root_to_json(const RootHandle& r) {
    json j;
    json poly = json::array();
    for (const auto& c : r.defining_poly().coeffs()) poly.push_back(format_rational(c));
    j["poly"] = std::move(poly);
    j["interval"] = json::array({format_rational(r.lo()), format_rational(r.hi())});
    if (r.is_exact()) j["exact"] = format_rational(r.exact_value());
    if (r.is_surd()) {
        const QuadSurd& s = r.surd_value();
        j["surd"] = json{{"a", format_rational(s.a)},
                         {"b", format_rational(s.b)},
                         {"d", format_rational(s.d)}};
    }
    return j;
}

inline json meta_json(const ManifoldPresentation& m) {
    json j;
    j["tool"] = "stability-lab";
    j["version"] = kVersion;
    j["manifold"] = m.name;
    j["manifold_hash"] = manifold_hash(m);
    return j;
}

inline json verdict_to_json(const StabilityVerdict& v) {
    json j;
    j["mu"] = format_rational(v.slopes.mu_total);
    json cands = json::array();
    for (const auto& c : v.slopes.per_candidate) {
        json e;
        e["name"] = c.name;
        e["dim"] = c.dim;
        e["mu"] = format_rational(c.mu);
        e["deficit"] = format_rational(c.deficit);
        cands.push_back(std::move(e));
    }
    j["candidates"] = std::move(cands);
    j["delta_pp"] = format_rational(v.delta_pp);
    j["dest"] = v.dest;
    j["dest_opt"] = v.dest_opt;
    j["status"] = status_name(v.status);
    j["completeness"] = completeness_name(v.completeness);
    return j;
}

inline json hypotheses_to_json(const std::vector<ModifiedHypothesisVerdict>& hs) {
    json arr = json::array();
    for (const auto& h : hs) {
        json e;
        e["p"] = h.p;
        e["class"] = class_to_json(h.cls);
        e["modified_cone"] = h.p + 1;
        e["verdict"] = region_name(h.region);
        arr.push_back(std::move(e));
    }
    return arr;
}

inline json effective_to_json(const EffectiveTestResult& r) {
    json j;
    j["verdict"] = solvability_name(r.verdict);
    j["witnesses"] = r.witnesses;
    j["hypotheses_hold"] = r.hypotheses_hold;
    j["hypotheses"] = hypotheses_to_json(r.hypotheses);
    return j;
}

inline json factor_data_to_json(const FactorData& f) {
    json arr = json::array();
    for (const auto& e : f.entries) {
        json x;
        x["p"] = e.p;
        x["r"] = root_to_json(e.r);
        json coeffs = json::array();
        for (const auto& c : e.qtilde.coeffs) {
            json cj;
            switch (c.kind) {
                case RootCoeff::Kind::Exact: cj["exact"] = format_rational(c.exact_value); break;
                case RootCoeff::Kind::Surd:
                    cj["surd"] = json{{"a", format_rational(c.surd_value.a)},
                                      {"b", format_rational(c.surd_value.b)},
                                      {"d", format_rational(c.surd_value.d)}};
                    break;
                default:
                    cj["interval"] = json::array({format_rational(c.lo), format_rational(c.hi)});
                    break;
            }
            cj["sign"] = c.certified_sign;
            coeffs.push_back(std::move(cj));
        }
        x["qtilde"] = std::move(coeffs);
        x["nonnegative"] = e.qtilde.all_nonnegative;
        arr.push_back(std::move(x));
    }
    return arr;
}

inline json gma_verdict_to_json(const GmaVerdict& v, const GmaCoefficients& coeffs) {
    json j;
    json c = json::array();
    for (const auto& x : coeffs.c) c.push_back(format_rational(x));
    j["coefficients"] = std::move(c);
    j["c_top"] = format_rational(coeffs.c_top);
    json values = json::array();
    for (const auto& [name, value] : v.values) {
        json e;
        e["name"] = name;
        e["value"] = format_rational(value);
        values.push_back(std::move(e));
    }
    j["values"] = std::move(values);
    j["dest"] = v.dest;
    j["status"] = status_name(v.status);
    j["completeness"] = completeness_name(v.completeness);
    json cones = json::array();
    for (const auto& t : v.tau_cones) {
        json e;
        e["p"] = t.p;
        e["modified_cone"] = t.p + 1;
        e["verdict"] = t.missing_data ? "missing-cone-data" : region_name(t.region);
        cones.push_back(std::move(e));
    }
    j["tau_cones"] = std::move(cones);
    return j;
}

inline json dhym_angle_to_json(const DhymAngle& a) {
    json j;
    j["Z"] = json{{"re", format_rational(a.z_exact.re)}, {"im", format_rational(a.z_exact.im)}};
    j["phi_hat"] = a.phi_hat;
    j["marginal"] = a.marginal;
    return j;
}

inline json dhym_test_to_json(const std::string& name, const DhymTestResult& t) {
    json j;
    j["name"] = name;
    j["re_part"] = format_rational(t.re_part);
    j["im_part"] = format_rational(t.im_part);
    j["value"] = t.value;
    j["product_value"] = t.product_value;
    j["paths_agree"] = t.paths_agree;
    j["marginal"] = t.marginal;
    j["sign"] = t.sgn;
    return j;
}

inline json walls_to_json(const std::vector<Wall>& walls, const ParameterSegment& segment) {
    json arr = json::array();
    for (const auto& w : walls) {
        json e;
        if (w.t) {
            e["t"] = format_rational(*w.t);
            e["beta"] = class_to_json(segment.at(*w.t));
        } else {
            e["t"] = nullptr;
        }
        e["identically_zero"] = w.identically_zero;
        e["spurious"] = w.spurious;
        json sources = json::array();
        for (const auto& s : w.sources) {
            json se;
            se["candidate"] = s.candidate;
            se["alpha_index"] = s.alpha_index;
            json eq = json::array();
            for (const auto& c : s.equation.coeffs()) eq.push_back(format_rational(c));
            se["equation"] = std::move(eq);
            sources.push_back(std::move(se));
        }
        e["sources"] = std::move(sources);
        arr.push_back(std::move(e));
    }
    return arr;
}

inline json chamber_report_to_json(const ChamberReport& report, const ParameterSegment& segment) {
    json j;
    j["walls"] = walls_to_json(report.walls, segment);
    json cuts = json::array();
    for (const auto& t : report.certification_cuts) {
        json e;
        e["t"] = format_rational(t);
        e["beta"] = class_to_json(segment.at(t));
        cuts.push_back(std::move(e));
    }
    j["certification_cuts"] = std::move(cuts);
    json chambers = json::array();
    for (const auto& ch : report.chambers) {
        json e;
        e["t_lo"] = format_rational(ch.t_lo);
        e["t_hi"] = format_rational(ch.t_hi);
        json per_alpha = json::array();
        for (std::size_t ai = 0; ai < ch.statuses.size(); ++ai) {
            json a;
            a["status"] = status_name(ch.statuses[ai]);
            a["dest"] = ch.dest[ai];
            a["completeness"] = completeness_name(ch.completeness[ai]);
            per_alpha.push_back(std::move(a));
        }
        e["alphas"] = std::move(per_alpha);
        e["stable_set"] = ch.stable_alphas;
        chambers.push_back(std::move(e));
    }
    j["chambers"] = std::move(chambers);
    // plot data: wall locations plus chamber labels for external plotting
    json plot;
    json locs = json::array();
    for (const auto& w : report.walls)
        if (w.t) locs.push_back(to_double(*w.t));
    plot["wall_t"] = std::move(locs);
    json labels = json::array();
    for (const auto& ch : report.chambers) {
        std::string label;
        for (std::size_t ai = 0; ai < ch.statuses.size(); ++ai)
            label += (ai ? "|" : "") + status_name(ch.statuses[ai]);
        labels.push_back(label);
    }
    plot["chamber_labels"] = std::move(labels);
    j["plot"] = std::move(plot);
    return j;
}

inline json oracle_to_json(const std::vector<OracleRow>& rows) {
    json arr = json::array();
    for (const auto& row : rows) {
        json e;
        e["t"] = format_rational(row.t);
        json per_alpha = json::array();
        for (std::size_t ai = 0; ai < row.statuses.size(); ++ai) {
            json a;
            a["status"] = status_name(row.statuses[ai]);
            a["dest"] = row.dest[ai];
            per_alpha.push_back(std::move(a));
        }
        e["alphas"] = std::move(per_alpha);
        arr.push_back(std::move(e));
    }
    return arr;
}

}  // namespace stablab

#endif
