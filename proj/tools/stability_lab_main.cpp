// stability-lab: exact slope-stability, gMA and dHYM analysis on finitely
// presented Kaehler manifolds, with wall-chamber sweeps.

#include <stablab/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace stablab;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitHypotheses = 3;

struct ManifoldOptions {
    std::string family;
    int d = 1;
    std::vector<int> weights;
    int n = 3;
    std::string file;
};

void add_manifold_options(CLI::App* cmd, ManifoldOptions& opt) {
    cmd->add_option("--family", opt.family, "built-in family: wu or blowup");
    cmd->add_option("--d", opt.d, "wu family: degree of the base polarization");
    cmd->add_option("--weights", opt.weights, "wu family: strictly increasing weights")
        ->delimiter(',');
    cmd->add_option("--n", opt.n, "blowup family: ambient dimension");
    cmd->add_option("--manifold", opt.file, "manifold presentation JSON file");
}

ManifoldPresentation resolve_manifold(const ManifoldOptions& opt) {
    if (!opt.file.empty()) return load_manifold_file(opt.file);
    if (opt.family == "wu") return wu_bundle(opt.d, opt.weights);
    if (opt.family == "blowup") return blowup_pn(opt.n);
    throw precondition_error("specify --family wu|blowup or --manifold FILE");
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw schema_error("empty rational list");
    return out;
}

CohClass parse_class(const ManifoldPresentation& m, const std::string& text) {
    std::vector<Rational> coords = parse_rational_list(text);
    if (coords.size() != m.basis_size())
        throw schema_error("class '" + text + "' needs " + std::to_string(m.basis_size()) +
                           " coordinates for basis of " + m.name);
    return CohClass(std::move(coords));
}

ComplexRational parse_complex(const std::string& text) {
    std::vector<Rational> parts = parse_rational_list(text);
    if (parts.size() != 2) throw schema_error("complex value must be \"re,im\"");
    return ComplexRational{parts[0], parts[1]};
}

struct OutputOptions {
    std::string out_path;
    std::string format = "json";
    bool strict = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& opt) {
    cmd->add_option("--out", opt.out_path, "write the report here instead of stdout");
    cmd->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--strict", opt.strict, "exit 3 when hypothesis checks fail");
}

void emit(const OutputOptions& opt, const std::string& payload) {
    if (opt.out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw precondition_error("cannot write to '" + opt.out_path + "'");
    out << payload;
}

void require_json_format(const OutputOptions& opt, const char* command) {
    if (opt.format != "json")
        throw precondition_error(std::string(command) + " only emits JSON reports");
}

json report_shell(const ManifoldPresentation& m, const std::string& command) {
    json j;
    j["meta"] = meta_json(m);
    j["command"] = command;
    return j;
}

int run_analyze_j(const ManifoldOptions& mopt, const OutputOptions& oopt,
                  const std::string& alpha_s, const std::string& beta_s,
                  const std::string& lambda_s) {
    ManifoldPresentation m = resolve_manifold(mopt);
    require_json_format(oopt, "analyze-j");
    CohClass alpha = parse_class(m, alpha_s);
    CohClass beta = parse_class(m, beta_s);
    Rational lambda = lambda_s.empty() ? Rational(0) : parse_rational(lambda_s);

    StabilityVerdict v = classify(m, alpha, beta);
    EffectiveTestResult e = effective_test(m, alpha, beta, lambda);
    json j = report_shell(m, "analyze-j");
    j["alpha"] = class_to_json(alpha);
    j["beta"] = class_to_json(beta);
    j["result"] = verdict_to_json(v);
    j["effective"] = effective_to_json(e);
    emit(oopt, j.dump(2));
    bool trouble = !e.hypotheses_hold || v.completeness == Completeness::Relative;
    return (oopt.strict && trouble) ? kExitHypotheses : kExitOk;
}

int run_analyze_gma(const ManifoldOptions& mopt, const OutputOptions& oopt,
                    const std::string& alpha_s, const std::string& beta_s,
                    const std::string& coeffs_s, int inverse_hessian_k, const std::string& z_s,
                    const std::string& rho_s) {
    ManifoldPresentation m = resolve_manifold(mopt);
    require_json_format(oopt, "analyze-gma");
    json j = report_shell(m, "analyze-gma");

    if (!z_s.empty()) {
        // Z-datum mode: report the induced coefficients and their signs;
        // the caller owns any sign normalization
        std::vector<ComplexRational> rho;
        std::string item;
        std::istringstream in(rho_s);
        while (std::getline(in, item, ';')) rho.push_back(parse_complex(item));
        ZDatumResult r = from_z_datum(parse_complex(z_s), rho);
        json b = json::array();
        for (const auto& x : r.b) b.push_back(format_rational(x));
        j["z_datum"] = json{{"b", std::move(b)}, {"all_negative", r.all_negative}};
        emit(oopt, j.dump(2));
        return kExitOk;
    }

    CohClass alpha = parse_class(m, alpha_s);
    CohClass beta = parse_class(m, beta_s);
    GmaCoefficients coeffs;
    if (inverse_hessian_k > 0) {
        InverseHessianData ih = inverse_hessian(m, alpha, beta, inverse_hessian_k);
        coeffs = ih.coeffs;
        json kp = json::array();
        for (const auto& [p, val] : ih.kappa_p)
            kp.push_back(json{{"p", p}, {"kappa_p", format_rational(val)}});
        j["inverse_hessian"] = json{{"k", ih.k}, {"kappa", format_rational(ih.kappa)},
                                    {"kappa_p", std::move(kp)}};
    } else {
        coeffs.c = parse_rational_list(coeffs_s);
        if (static_cast<int>(coeffs.c.size()) != m.dim - 1)
            throw schema_error("--coeffs needs n-1 entries");
        coeffs.c_top = solve_top_constant(m, alpha, beta, coeffs.c);
    }
    GmaVerdict v = classify_gma(m, alpha, beta, coeffs);
    FactorData f = factorize(coeffs);
    j["alpha"] = class_to_json(alpha);
    j["beta"] = class_to_json(beta);
    j["result"] = gma_verdict_to_json(v, coeffs);
    j["factors"] = factor_data_to_json(f);
    emit(oopt, j.dump(2));
    bool trouble = false;
    for (const auto& t : v.tau_cones)
        if (t.missing_data || t.region != Region::Inside) trouble = true;
    return (oopt.strict && trouble) ? kExitHypotheses : kExitOk;
}

int run_analyze_dhym(const ManifoldOptions& mopt, const OutputOptions& oopt,
                     const std::string& alpha_s, const std::string& beta_s, double phi_hat,
                     bool phi_given, double eps) {
    ManifoldPresentation m = resolve_manifold(mopt);
    require_json_format(oopt, "analyze-dhym");
    CohClass alpha = parse_class(m, alpha_s);
    CohClass beta = parse_class(m, beta_s);
    json j = report_shell(m, "analyze-dhym");
    j["alpha"] = class_to_json(alpha);
    j["beta"] = class_to_json(beta);

    double phi = phi_hat;
    if (!phi_given) {
        DhymAngle angle = complementary_lifted_angle(central_charge(m, alpha, beta), m.dim, eps);
        j["angle"] = dhym_angle_to_json(angle);
        phi = angle.phi_hat;
    } else {
        j["angle"] = json{{"phi_hat", phi}};
    }

    json taus = json::array();
    for (const auto& f : dhym_factor_classes(m, alpha, beta, phi, eps)) {
        json e;
        e["p"] = f.p;
        e["cot"] = f.cot_value;
        e["coords"] = f.coords;
        e["verdict"] = f.missing_cone_data ? "missing-cone-data" : region_name(f.verdict.region);
        e["marginal"] = f.missing_cone_data ? false : f.verdict.marginal;
        taus.push_back(std::move(e));
    }
    j["factor_classes"] = std::move(taus);

    json tests = json::array();
    bool any_destabilizer = false;
    for (const auto& v : m.candidates) {
        DhymTestResult t = dhym_test(m, alpha, beta, phi, v, eps);
        tests.push_back(dhym_test_to_json(v.name, t));
        if (t.sgn <= 0 && !t.marginal) any_destabilizer = true;
    }
    j["tests"] = std::move(tests);
    j["any_destabilizer"] = any_destabilizer;
    // transcendental thresholds cannot be certified exactly
    j["completeness"] = "relative";

    DhymHypothesisReport hyp = dhym_hypothesis_check(m, alpha, beta, phi, eps);
    json hj;
    hj["covered_by_theorem"] = hyp.covered_by_theorem;
    hj["window_ok"] = hyp.window_ok;
    hj["window_marginal"] = hyp.window_marginal;
    hj["failures"] = hyp.failures;
    j["hypotheses"] = std::move(hj);
    emit(oopt, j.dump(2));
    return (oopt.strict && !hyp.failures.empty()) ? kExitHypotheses : kExitOk;
}

int run_factorize(const OutputOptions& oopt, int n, const std::string& coeffs_s) {
    require_json_format(oopt, "factorize");
    if (n < 2) throw precondition_error("factorize: --n must be at least 2");
    GmaCoefficients coeffs;
    coeffs.c = parse_rational_list(coeffs_s);
    if (static_cast<int>(coeffs.c.size()) != n - 1)
        throw schema_error("--coeffs needs n-1 entries");
    bool any = false;
    for (const auto& c : coeffs.c)
        if (c != 0) any = true;
    coeffs.c_top = any ? Rational(0) : Rational(1);  // keep the data admissible

    FactorData f = factorize(coeffs);
    json j;
    j["meta"] = json{{"tool", "stability-lab"}, {"version", kVersion}};
    j["command"] = "factorize";
    json cs = json::array();
    for (const auto& c : coeffs.c) cs.push_back(format_rational(c));
    j["coefficients"] = std::move(cs);
    j["factors"] = factor_data_to_json(f);
    emit(oopt, j.dump(2));
    return kExitOk;
}

int run_cones(const ManifoldOptions& mopt, const OutputOptions& oopt, const std::string& class_s,
              const std::string& kind_s, int p, const std::string& alpha_s,
              const std::string& beta_s, bool project, bool hypotheses,
              const std::string& lambda_s) {
    ManifoldPresentation m = resolve_manifold(mopt);
    require_json_format(oopt, "cones");
    json j = report_shell(m, "cones");
    int exit_code = kExitOk;

    if (project) {
        CohClass alpha = parse_class(m, alpha_s);
        CohClass beta = parse_class(m, beta_s);
        CohClass eta = projection(m, alpha, beta);
        j["projection"] = class_to_json(eta);
        j["nef_verdict"] = region_name(in_cone(m, ConeKind::Nef, eta));
        j["kahler_verdict"] = region_name(in_cone(m, ConeKind::Kahler, eta));
    } else if (hypotheses) {
        CohClass alpha = parse_class(m, alpha_s);
        CohClass beta = parse_class(m, beta_s);
        Rational lambda = lambda_s.empty() ? Rational(0) : parse_rational(lambda_s);
        auto hs = check_modified_hypotheses(m, alpha, beta, lambda);
        j["lambda"] = format_rational(lambda);
        j["hypotheses"] = hypotheses_to_json(hs);
        if (oopt.strict && !all_inside(hs)) exit_code = kExitHypotheses;
    } else {
        CohClass cls = parse_class(m, class_s);
        json verdicts = json::array();
        if (!kind_s.empty()) {
            ConeKind kind = io_detail::cone_kind_from_name(kind_s);
            json e;
            e["kind"] = kind_s;
            if (kind == ConeKind::Modified) e["p"] = p;
            e["verdict"] = region_name(in_cone(m, kind, p, cls));
            verdicts.push_back(std::move(e));
        } else {
            for (const auto& cone : m.cones) {
                json e;
                e["kind"] = cone_kind_name(cone.kind);
                if (cone.kind == ConeKind::Modified) e["p"] = cone.p;
                e["verdict"] = region_name(cone_region(cone, cls.coords()));
                verdicts.push_back(std::move(e));
            }
        }
        j["class"] = class_to_json(cls);
        j["verdicts"] = std::move(verdicts);
    }
    emit(oopt, j.dump(2));
    return exit_code;
}

int run_sweep(const ManifoldOptions& mopt, const OutputOptions& oopt,
              const std::vector<std::string>& alpha_s, const std::string& var,
              const std::string& beta0_s, const std::string& beta1_s, const std::string& beta_s,
              const std::string& coeffs0_s, const std::string& coeffs1_s) {
    ManifoldPresentation m = resolve_manifold(mopt);
    if (alpha_s.empty()) throw precondition_error("sweep needs at least one --alpha");

    if (var == "beta") {
        std::vector<CohClass> alphas;
        for (const auto& s : alpha_s) alphas.push_back(parse_class(m, s));
        ParameterSegment seg = make_segment(m, parse_class(m, beta0_s), parse_class(m, beta1_s));
        ChamberReport report = chambers(m, alphas, seg);
        if (oopt.format == "csv") {
            std::vector<std::string> names;
            for (std::size_t i = 0; i < alphas.size(); ++i) names.push_back("alpha" + std::to_string(i));
            emit(oopt, chambers_to_csv(report, names));
        } else {
            json j = report_shell(m, "sweep");
            j["var"] = "beta";
            json as = json::array();
            for (const auto& a : alphas) as.push_back(class_to_json(a));
            j["alphas"] = std::move(as);
            j["result"] = chamber_report_to_json(report, seg);
            emit(oopt, j.dump(2));
        }
        if (oopt.strict)
            for (const auto& ch : report.chambers)
                for (const auto& c : ch.completeness)
                    if (c == Completeness::Relative) return kExitHypotheses;
        return kExitOk;
    }
    if (var == "coeffs") {
        if (alpha_s.size() != 1)
            throw precondition_error("coefficient sweeps use a single --alpha");
        CohClass alpha = parse_class(m, alpha_s[0]);
        CohClass beta = parse_class(m, beta_s);
        std::vector<Rational> c0 = parse_rational_list(coeffs0_s);
        std::vector<Rational> c1 = parse_rational_list(coeffs1_s);
        GmaChamberReport report = gma_chambers(m, alpha, beta, c0, c1);
        require_json_format(oopt, "sweep --var coeffs");
        json j = report_shell(m, "sweep");
        j["var"] = "coeffs";
        j["alpha"] = class_to_json(alpha);
        j["beta"] = class_to_json(beta);
        ParameterSegment dummy{beta, beta};
        j["walls"] = walls_to_json(report.walls, dummy);
        json chambersj = json::array();
        for (const auto& ch : report.chambers) {
            json e;
            e["t_lo"] = format_rational(ch.t_lo);
            e["t_hi"] = format_rational(ch.t_hi);
            e["status"] = status_name(ch.status);
            e["dest"] = ch.dest;
            e["c_top_mid"] = format_rational(ch.c_top_mid);
            chambersj.push_back(std::move(e));
        }
        j["chambers"] = std::move(chambersj);
        emit(oopt, j.dump(2));
        return kExitOk;
    }
    throw precondition_error("--var must be beta or coeffs");
}

int run_oracle_sweep(const ManifoldOptions& mopt, const OutputOptions& oopt,
                     const std::vector<std::string>& alpha_s, const std::string& beta0_s,
                     const std::string& beta1_s, int grid) {
    ManifoldPresentation m = resolve_manifold(mopt);
    std::vector<CohClass> alphas;
    for (const auto& s : alpha_s) alphas.push_back(parse_class(m, s));
    ParameterSegment seg = make_segment(m, parse_class(m, beta0_s), parse_class(m, beta1_s));
    std::vector<OracleRow> rows = sweep_oracle(m, alphas, seg, grid);
    if (oopt.format == "csv") {
        std::ostringstream os;
        os << "t";
        for (std::size_t i = 0; i < alphas.size(); ++i)
            os << ",status[alpha" << i << "],dest[alpha" << i << "]";
        os << "\n";
        for (const auto& row : rows) {
            os << format_rational(row.t);
            for (std::size_t i = 0; i < alphas.size(); ++i) {
                os << "," << status_name(row.statuses[i]) << ",";
                for (std::size_t k = 0; k < row.dest[i].size(); ++k)
                    os << (k ? ";" : "") << row.dest[i][k];
            }
            os << "\n";
        }
        emit(oopt, os.str());
    } else {
        json j = report_shell(m, "oracle-sweep");
        j["grid"] = grid;
        j["rows"] = oracle_to_json(rows);
        emit(oopt, j.dump(2));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stability-lab: exact numerical stability criteria on Kaehler manifolds"};
    app.require_subcommand(1);
    app.set_version_flag("--version", stablab::kVersion);

    ManifoldOptions mopt;
    OutputOptions oopt;
    std::string alpha_s, beta_s, beta0_s, beta1_s, coeffs_s, coeffs0_s, coeffs1_s;
    std::string lambda_s, class_s, kind_s, z_s, rho_s, var = "beta";
    std::vector<std::string> alphas_s;
    double phi_hat = 0;
    double eps = stablab::kDefaultEps;
    int p = 0, ih_k = 0, n_fact = 3, grid = 1000;
    bool project = false, hypotheses = false;

    CLI::App* aj = app.add_subcommand("analyze-j", "slopes, threshold and J-stability verdict");
    add_manifold_options(aj, mopt);
    add_output_options(aj, oopt);
    aj->add_option("--alpha", alpha_s)->required();
    aj->add_option("--beta", beta_s)->required();
    aj->add_option("--lambda", lambda_s, "shift for the modified-cone hypotheses");

    CLI::App* ag = app.add_subcommand("analyze-gma", "generalized Monge-Ampere verdict");
    add_manifold_options(ag, mopt);
    add_output_options(ag, oopt);
    ag->add_option("--alpha", alpha_s);
    ag->add_option("--beta", beta_s);
    ag->add_option("--coeffs", coeffs_s, "c_1..c_(n-1); the top constant is solved");
    ag->add_option("--inverse-hessian", ih_k, "use the inverse Hessian source of index k");
    ag->add_option("--z", z_s, "Z-datum mode: central charge value re,im");
    ag->add_option("--rho", rho_s, "Z-datum mode: stability vector re,im;re,im;...");

    CLI::App* ad = app.add_subcommand("analyze-dhym", "supercritical dHYM criterion");
    add_manifold_options(ad, mopt);
    add_output_options(ad, oopt);
    ad->add_option("--alpha", alpha_s)->required();
    ad->add_option("--beta", beta_s)->required();
    CLI::Option* phi_opt = ad->add_option("--phi-hat", phi_hat, "angle in radians; computed from Z when omitted");
    ad->add_option("--eps", eps, "marginality tolerance");

    CLI::App* af = app.add_subcommand("factorize", "factor the Q_p family of a coefficient vector");
    add_output_options(af, oopt);
    af->add_option("--n", n_fact, "dimension")->required();
    af->add_option("--coeffs", coeffs_s)->required();

    CLI::App* ac = app.add_subcommand("cones", "cone membership, projection, hypotheses");
    add_manifold_options(ac, mopt);
    add_output_options(ac, oopt);
    ac->add_option("--class", class_s, "class to test against the cones");
    ac->add_option("--kind", kind_s, "kahler|nef|pseff|big|modified");
    ac->add_option("--p", p, "index for modified cones");
    ac->add_flag("--project", project, "compute the nef-boundary projection of beta through alpha");
    ac->add_flag("--hypotheses", hypotheses, "check the modified-cone hypotheses");
    ac->add_option("--alpha", alpha_s);
    ac->add_option("--beta", beta_s);
    ac->add_option("--lambda", lambda_s);

    CLI::App* as = app.add_subcommand("sweep", "walls and chambers along a segment");
    add_manifold_options(as, mopt);
    add_output_options(as, oopt);
    as->add_option("--alpha", alphas_s, "Kaehler class (repeatable)");
    as->add_option("--var", var, "beta or coeffs");
    as->add_option("--beta0", beta0_s);
    as->add_option("--beta1", beta1_s);
    as->add_option("--beta", beta_s, "fixed beta for coefficient sweeps");
    as->add_option("--coeffs0", coeffs0_s);
    as->add_option("--coeffs1", coeffs1_s);

    CLI::App* ao = app.add_subcommand("oracle-sweep", "grid classification oracle");
    add_manifold_options(ao, mopt);
    add_output_options(ao, oopt);
    ao->add_option("--alpha", alphas_s, "Kaehler class (repeatable)");
    ao->add_option("--beta0", beta0_s)->required();
    ao->add_option("--beta1", beta1_s)->required();
    ao->add_option("--grid", grid, "number of grid intervals");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (aj->parsed()) return run_analyze_j(mopt, oopt, alpha_s, beta_s, lambda_s);
        if (ag->parsed())
            return run_analyze_gma(mopt, oopt, alpha_s, beta_s, coeffs_s, ih_k, z_s, rho_s);
        if (ad->parsed())
            return run_analyze_dhym(mopt, oopt, alpha_s, beta_s, phi_hat,
                                    phi_opt->count() > 0, eps);
        if (af->parsed()) return run_factorize(oopt, n_fact, coeffs_s);
        if (ac->parsed())
            return run_cones(mopt, oopt, class_s, kind_s, p, alpha_s, beta_s, project,
                             hypotheses, lambda_s);
        if (as->parsed())
            return run_sweep(mopt, oopt, alphas_s, var, beta0_s, beta1_s, beta_s, coeffs0_s,
                             coeffs1_s);
        if (ao->parsed()) return run_oracle_sweep(mopt, oopt, alphas_s, beta0_s, beta1_s, grid);
    } catch (const stablab::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitInput;
}
