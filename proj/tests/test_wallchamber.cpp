#include <catch2/catch_amalgamated.hpp>

#include <stablab/wallchamber.hpp>

#include <random>

using namespace stablab;

namespace {

ManifoldPresentation wu13() { return wu_bundle(1, {1, 3}); }

CohClass beta_b(const ManifoldPresentation& m, const Rational& b) {
    return m.basis_class(0) + b * m.basis_class(1);
}

}  // namespace

TEST_CASE("slope walls on the threefold sweep") {
    ManifoldPresentation m = wu13();
    CohClass alpha = m.basis_class(0) + m.basis_class(1);
    ParameterSegment seg = make_segment(m, beta_b(m, Rational(1, 20)), beta_b(m, Rational(1, 2)));

    std::vector<Wall> walls = j_walls(m, {alpha}, seg);
    REQUIRE(walls.size() == 2);
    // walls live at b = 5/26 (S) and b = 2/9 (C); map t back to the H-coordinate
    REQUIRE(walls[0].t.has_value());
    REQUIRE(walls[1].t.has_value());
    CHECK(seg.at(*walls[0].t)[1] == Rational(5, 26));
    CHECK(seg.at(*walls[1].t)[1] == Rational(2, 9));
    CHECK(walls[0].sources.size() == 1);
    CHECK(walls[0].sources[0].candidate == "S");
    CHECK(walls[1].sources[0].candidate == "C");
    // the defining affine form vanishes exactly at the wall
    for (const auto& w : walls)
        for (const auto& s : w.sources) CHECK(s.equation(*w.t) == Rational(0));

    // no candidates, no walls
    ManifoldPresentation none = m;
    none.candidates.clear();
    CHECK(j_walls(none, {alpha}, seg).empty());

    // scale invariance: alpha and 2 alpha give identical wall sets
    std::vector<Wall> doubled = j_walls(m, {alpha, Rational(2) * alpha}, seg);
    REQUIRE(doubled.size() == 2);
    for (const auto& w : doubled) {
        CHECK(w.sources.size() == 2);  // both alphas cross at the same t
        CHECK(w.sources[0].candidate == w.sources[1].candidate);
    }

    // wall count is bounded by |S| x |candidates|
    CHECK(doubled.size() <= 2 * m.candidates.size());
}

TEST_CASE("chambers of the threefold sweep match the table") {
    ManifoldPresentation m = wu13();
    CohClass alpha = m.basis_class(0) + m.basis_class(1);
    ParameterSegment seg = make_segment(m, beta_b(m, Rational(1, 20)), beta_b(m, Rational(1, 2)));

    ChamberReport report = chambers(m, {alpha}, seg);
    // two slope walls plus the certification boundary at b = 1/15 (t = 1/27)
    REQUIRE(report.chambers.size() == 4);
    REQUIRE(report.certification_cuts.size() == 1);
    CHECK(seg.at(report.certification_cuts[0])[1] == Rational(1, 15));
    auto dest_of = [&](std::size_t i) {
        std::vector<std::string> d = report.chambers[i].dest[0];
        std::sort(d.begin(), d.end());
        return d;
    };
    CHECK(dest_of(0) == std::vector<std::string>{"C", "S"});
    CHECK(dest_of(1) == std::vector<std::string>{"C", "S"});
    CHECK(dest_of(2) == std::vector<std::string>{"C"});
    CHECK(dest_of(3) == std::vector<std::string>{});
    CHECK(report.chambers[0].completeness[0] == Completeness::Relative);
    CHECK(report.chambers[1].completeness[0] == Completeness::Certified);
    CHECK(report.chambers[2].completeness[0] == Completeness::Certified);
    CHECK(report.chambers[0].statuses[0] == Status::Unstable);
    CHECK(report.chambers[3].statuses[0] == Status::Stable);
    CHECK(report.chambers[3].stable_alphas == std::vector<std::size_t>{0});
    for (const auto& w : report.walls) CHECK_FALSE(w.spurious);

    // a segment inside the stable region is a single chamber
    ParameterSegment stable_seg =
        make_segment(m, beta_b(m, Rational(1, 3)), beta_b(m, Rational(1, 2)));
    ChamberReport stable = chambers(m, {alpha}, stable_seg);
    CHECK(stable.walls.empty());
    REQUIRE(stable.chambers.size() == 1);
    CHECK(stable.chambers[0].statuses[0] == Status::Stable);
    CHECK(stable.chambers[0].stable_alphas == std::vector<std::size_t>{0});

    // degenerate segment: one chamber, no walls
    ParameterSegment degenerate =
        make_segment(m, beta_b(m, Rational(1, 5)), beta_b(m, Rational(1, 5)));
    ChamberReport deg = chambers(m, {alpha}, degenerate);
    CHECK(deg.walls.empty());
    REQUIRE(deg.chambers.size() == 1);
    CHECK(deg.chambers[0].dest[0] == std::vector<std::string>{"C"});

    CHECK_THROWS_AS(make_segment(m, beta_b(m, Rational(1, 5)), CohClass{Rational(-1), Rational(1)}),
                    precondition_error);
}

TEST_CASE("gma walls along a coefficient path") {
    ManifoldPresentation m = wu13();
    CohClass alpha = m.basis_class(0) + m.basis_class(1);
    CohClass beta = beta_b(m, Rational(1, 5));

    // path c_1(t) = t: the section curve C crosses at t = alpha.C / beta.C = 1
    std::vector<Rational> c0{Rational(0), Rational(0)};
    std::vector<Rational> c1{Rational(1), Rational(0)};
    std::vector<Wall> walls = gma_walls(m, alpha, beta, c0, c1);
    bool found_c = false;
    for (const auto& w : walls) {
        REQUIRE(w.t.has_value());
        for (const auto& s : w.sources) {
            if (s.candidate == "C") {
                found_c = true;
                CHECK(*w.t == Rational(1));
            }
            CHECK(s.equation(*w.t) == Rational(0));
        }
    }
    CHECK(found_c);

    // constant path: walls only where a test value vanishes identically;
    // with c_1 = 1 that is exactly the section C, flagged rather than located
    std::vector<Wall> constant = gma_walls(m, alpha, beta, c1, c1);
    REQUIRE(constant.size() == 1);
    CHECK(constant[0].identically_zero);
    CHECK(constant[0].sources[0].candidate == "C");
    CHECK(gma_walls(m, alpha, beta, c0, c0).empty());  // zero path sees nothing

    // a path that starts outside the admissible orthant is rejected
    CHECK_THROWS_AS(gma_walls(m, alpha, beta, {Rational(-1), Rational(0)}, c1),
                    precondition_error);

    // identically-zero test values come back flagged: use a candidate the
    // path cannot see (zero Q_1 integral needs alpha.V = t beta.V for all t,
    // impossible for Kaehler data), so craft a degenerate family instead
    ManifoldPresentation crafted = m;
    SubvarietyCandidate null_curve;
    null_curve.name = "N";
    null_curve.dim = 1;
    null_curve.restricted = SymTensor(1, 2);
    null_curve.restricted.set({1, 0}, Rational(1));
    null_curve.restricted.set({0, 1}, Rational(-1));  // pairs to 0 with alpha = L + H
    crafted.candidates.push_back(null_curve);
    std::vector<Wall> flagged = gma_walls(crafted, alpha, beta, c0, c0);
    REQUIRE(flagged.size() == 1);
    CHECK(flagged[0].identically_zero);
    CHECK_FALSE(flagged[0].t.has_value());
    CHECK(flagged[0].sources[0].candidate == "N");
}

TEST_CASE("gma chambers with resolved top constant") {
    ManifoldPresentation m = wu13();
    CohClass alpha = m.basis_class(0) + m.basis_class(1);
    CohClass beta = beta_b(m, Rational(1, 5));
    std::vector<Rational> c0{Rational(0), Rational(0)};
    std::vector<Rational> c1{Rational(2), Rational(0)};

    GmaChamberReport report = gma_chambers(m, alpha, beta, c0, c1);
    REQUIRE(report.chambers.size() >= 2);
    CHECK(report.chambers.front().status == Status::Stable);
    CHECK(report.chambers.back().status == Status::Unstable);
    // the top constant is re-solved along the path: residual vanishes
    for (const auto& ch : report.chambers) {
        Rational mid_t = (ch.t_lo + ch.t_hi) / 2;
        std::vector<Rational> c{(Rational(1) - mid_t) * c0[0] + mid_t * c1[0],
                                (Rational(1) - mid_t) * c0[1] + mid_t * c1[1]};
        GmaCoefficients g{c, ch.c_top_mid};
        CHECK(cohomological_residual(m, alpha, beta, g) == Rational(0));
    }
}

TEST_CASE("J-specialized gma path reproduces the slope walls") {
    ManifoldPresentation m = wu13();
    CohClass alpha = m.basis_class(0) + m.basis_class(1);
    CohClass beta = beta_b(m, Rational(1, 5));
    Rational mu = total_slope(m, alpha, beta);

    // path through the J-specialization point c_1 = 1/mu: for each candidate
    // the wall sits exactly where t c_1^max = mu(V)/mu ... i.e. the zero of
    // integral(V, alpha - t c beta) with c = 2/mu
    Rational cmax = Rational(2) / mu;
    std::vector<Rational> c0{Rational(0), Rational(0)};
    std::vector<Rational> c1{cmax, Rational(0)};
    std::vector<Wall> walls = gma_walls(m, alpha, beta, c0, c1);
    for (const auto& w : walls) {
        for (const auto& s : w.sources) {
            const SubvarietyCandidate* v = m.find_candidate(s.candidate);
            REQUIRE(v != nullptr);
            if (v->dim != 1) continue;
            // oracle: t* = (alpha.V) / (cmax beta.V)
            Rational expected = pairing_on(*v, alpha, 1, beta, 0) /
                                (cmax * pairing_on(*v, beta, 1, alpha, 0));
            CHECK(*w.t == expected);
        }
    }
}

TEST_CASE("slope walls are zeros of the J-specialized gma test") {
    // cross-module check: at a slope wall for candidate V the gma test with
    // c_1 = 1/mu vanishes exactly on V
    ManifoldPresentation m = wu13();
    CohClass alpha = m.basis_class(0) + m.basis_class(1);
    ParameterSegment seg = make_segment(m, beta_b(m, Rational(1, 20)), beta_b(m, Rational(1, 2)));
    std::vector<Wall> walls = j_walls(m, {alpha}, seg);
    REQUIRE_FALSE(walls.empty());
    for (const auto& w : walls) {
        REQUIRE(w.t.has_value());
        CohClass beta = seg.at(*w.t);
        Rational mu = total_slope(m, alpha, beta);
        std::vector<Rational> c{Rational(1) / mu, Rational(0)};
        GmaCoefficients g{c, solve_top_constant(m, alpha, beta, c)};
        for (const auto& s : w.sources) {
            const SubvarietyCandidate* v = m.find_candidate(s.candidate);
            REQUIRE(v != nullptr);
            CHECK(gma_test(m, alpha, beta, g, *v).value == Rational(0));
        }
    }
}

TEST_CASE("sweep oracle agrees with chamber verdicts") {
    ManifoldPresentation m = wu13();
    CohClass alpha = m.basis_class(0) + m.basis_class(1);
    ParameterSegment seg = make_segment(m, beta_b(m, Rational(1, 20)), beta_b(m, Rational(1, 2)));
    ChamberReport report = chambers(m, {alpha}, seg);
    std::vector<OracleRow> rows = sweep_oracle(m, {alpha}, seg, 200);
    REQUIRE(rows.size() == 201);
    for (const auto& row : rows) {
        const ChamberEntry* chamber = nullptr;
        for (const auto& ch : report.chambers)
            if (ch.t_lo < row.t && row.t < ch.t_hi) chamber = &ch;
        if (!chamber) continue;  // grid point on a wall or endpoint
        CHECK(chamber->statuses == row.statuses);
        CHECK(chamber->dest == row.dest);
    }
    CHECK_THROWS_AS(sweep_oracle(m, {alpha}, seg, 1), precondition_error);

    // trivial grid of two intervals
    std::vector<OracleRow> tiny = sweep_oracle(m, {alpha}, seg, 2);
    REQUIRE(tiny.size() == 3);
    CHECK(tiny[0].t == Rational(0));
    CHECK(tiny[1].t == Rational(1, 2));
    CHECK(tiny[2].t == Rational(1));

    // a stable-region segment classifies uniformly on the whole grid
    ParameterSegment stable_seg =
        make_segment(m, beta_b(m, Rational(1, 3)), beta_b(m, Rational(1, 2)));
    std::vector<OracleRow> uniform = sweep_oracle(m, {alpha}, stable_seg, 50);
    for (const auto& row : uniform) {
        CHECK(row.statuses[0] == Status::Stable);
        CHECK(row.dest[0].empty());
    }
}

TEST_CASE("random segments: chambers against the oracle") {
    std::mt19937_64 rng(91);
    std::uniform_int_distribution<int> num(1, 12);
    std::uniform_int_distribution<int> den(2, 24);
    for (int trial = 0; trial < 6; ++trial) {
        ManifoldPresentation m = (trial % 2 == 0) ? wu13() : blowup_pn(3);
        CohClass alpha, b0, b1;
        if (trial % 2 == 0) {
            alpha = CohClass{Rational(num(rng), 3), Rational(num(rng), 3)};
            b0 = CohClass{Rational(num(rng)), Rational(num(rng), den(rng))};
            b1 = CohClass{Rational(num(rng)), Rational(num(rng), den(rng))};
        } else {
            Rational x(num(rng)), x2(num(rng));
            alpha = CohClass{x + 1, -x};
            b0 = CohClass{x2 + Rational(num(rng), den(rng)), -x2};
            Rational x3(num(rng));
            b1 = CohClass{x3 + Rational(num(rng), den(rng)), -x3};
        }
        ParameterSegment seg = make_segment(m, b0, b1);
        ChamberReport report = chambers(m, {alpha}, seg);
        std::vector<OracleRow> rows = sweep_oracle(m, {alpha}, seg, 100);
        for (const auto& row : rows) {
            const ChamberEntry* chamber = nullptr;
            for (const auto& ch : report.chambers)
                if (ch.t_lo < row.t && row.t < ch.t_hi) chamber = &ch;
            if (!chamber) continue;
            CHECK(chamber->statuses == row.statuses);
            CHECK(chamber->dest == row.dest);
        }
    }
}

TEST_CASE("chamber CSV export") {
    ManifoldPresentation m = wu13();
    CohClass alpha = m.basis_class(0) + m.basis_class(1);
    ParameterSegment seg = make_segment(m, beta_b(m, Rational(1, 20)), beta_b(m, Rational(1, 2)));
    ChamberReport report = chambers(m, {alpha}, seg);
    std::string csv = chambers_to_csv(report, {"alpha0"});
    CHECK(csv.find("t_lo,t_hi,wall_source") == 0);
    CHECK(csv.find("unstable") != std::string::npos);
    CHECK(csv.find("stable") != std::string::npos);
    CHECK(csv.find("S") != std::string::npos);
}
