#include <catch2/catch_amalgamated.hpp>

#include <stablab/gma.hpp>

#include <cmath>
#include <random>

using namespace stablab;

namespace {

ManifoldPresentation wu13() { return wu_bundle(1, {1, 3}); }

CohClass beta_b(const ManifoldPresentation& m, const Rational& b) {
    return m.basis_class(0) + b * m.basis_class(1);
}

Rational rnd_pos(std::mt19937_64& rng, int hi, int den) {
    std::uniform_int_distribution<int> num(1, hi);
    std::uniform_int_distribution<int> d(1, den);
    return Rational(num(rng), d(rng));
}

}  // namespace

TEST_CASE("Q_p construction") {
    std::vector<Rational> c{Rational(3, 2), Rational(5)};
    RatBiPoly q2 = q_polynomial(2, c);
    CHECK(q2.coeff(2) == Rational(1, 2));
    CHECK(q2.coeff(1) == Rational(-3, 2));
    CHECK(q2.coeff(0) == Rational(-5));
    RatBiPoly q1 = q_polynomial(1, c);
    CHECK(q1.coeff(1) == Rational(1));
    CHECK(q1.coeff(0) == Rational(-3, 2));
    RatBiPoly q0c = q_polynomial(2, {Rational(0), Rational(0)});
    CHECK(q0c.coeff(2) == Rational(1, 2));
    CHECK(q0c.coeff(1) == Rational(0));
    CHECK(q0c.coeff(0) == Rational(0));
    CHECK_THROWS_AS(q_polynomial(3, c), precondition_error);
    CHECK_THROWS_AS(q_polynomial(0, c), precondition_error);
}

TEST_CASE("top constant from the cohomological condition") {
    ManifoldPresentation m = wu13();
    CohClass alpha = m.basis_class(0) + m.basis_class(1);
    CohClass beta = beta_b(m, Rational(1, 5));

    // all c_k = 0: c_n = alpha^n / (n! beta^n)
    Rational c0 = solve_top_constant(m, alpha, beta, {Rational(0), Rational(0)});
    Rational expected = pairing(m, alpha, 3, beta, 0) /
                        (Rational(6) * pairing(m, alpha, 0, beta, 3));
    CHECK(c0 == expected);

    // J-specialization c_1 = 1/mu has vanishing top constant
    Rational mu = total_slope(m, alpha, beta);
    Rational cj = solve_top_constant(m, alpha, beta, {Rational(1) / mu, Rational(0)});
    CHECK(cj == Rational(0));

    // residual recheck is exactly zero by construction
    GmaCoefficients g{{Rational(1, 3), Rational(2, 7)}, Rational(0)};
    g.c_top = solve_top_constant(m, alpha, beta, g.c);
    CHECK(cohomological_residual(m, alpha, beta, g) == Rational(0));

    // beta = alpha closed form
    Rational ca = solve_top_constant(m, alpha, alpha, {Rational(1, 2), Rational(1, 3)});
    GmaCoefficients ga{{Rational(1, 2), Rational(1, 3)}, ca};
    CHECK(cohomological_residual(m, alpha, alpha, ga) == Rational(0));

    // degenerate beta^n
    CohClass L = m.basis_class(0);
    CHECK_THROWS_AS(solve_top_constant(m, alpha, L, {Rational(0), Rational(0)}),
                    degenerate_error);
}

TEST_CASE("factorization of the threefold example") {
    GmaCoefficients g{{Rational(1), Rational(1)}, Rational(0)};
    FactorData f = factorize(g);
    REQUIRE(f.entries.size() == 2);
    // r_1 = c_1 = 1; r_2 = 1 + sqrt(3)
    REQUIRE(f.at(1).r.is_exact());
    CHECK(f.at(1).r.exact_value() == Rational(1));
    REQUIRE(f.at(2).r.is_surd());
    CHECK(f.at(2).r.surd_value().a == Rational(1));
    CHECK(f.at(2).r.surd_value().b == Rational(1));
    CHECK(f.at(2).r.surd_value().d == Rational(3));
    CHECK(f.at(2).qtilde.all_nonnegative);
    CHECK(compare_roots(f.at(1).r, f.at(2).r) < 0);
}

TEST_CASE("factorization: inverse Hessian shape and the zero case") {
    // k = 1, c_1 = c: r_p = p c exactly
    Rational c(2, 3);
    GmaCoefficients g{{c, Rational(0), Rational(0), Rational(0)}, Rational(0)};  // n = 5
    FactorData f = factorize(g);
    for (int p = 1; p <= 4; ++p) {
        REQUIRE(f.at(p).r.is_exact());
        CHECK(f.at(p).r.exact_value() == Rational(p) * c);
    }
    // all zero coefficients: roots all zero, tau_p = alpha
    GmaCoefficients z{{Rational(0), Rational(0)}, Rational(1)};
    FactorData fz = factorize(z);
    CHECK(fz.at(1).r.is_zero());
    CHECK(fz.at(2).r.is_zero());
    // fully zero data is rejected
    GmaCoefficients bad{{Rational(0), Rational(0)}, Rational(0)};
    CHECK_THROWS_AS(factorize(bad), precondition_error);
    GmaCoefficients neg{{Rational(-1), Rational(0)}, Rational(0)};
    CHECK_THROWS_AS(factorize(neg), precondition_error);
}

TEST_CASE("factor roots are nondecreasing, strictly past a positive root") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        GmaCoefficients g;
        bool any = false;
        for (int k = 0; k < n - 1; ++k) {
            Rational x = (rng() % 3 == 0) ? Rational(0) : rnd_pos(rng, 12, 6);
            if (x != 0) any = true;
            g.c.push_back(x);
        }
        g.c_top = any ? Rational(0) : Rational(1);
        FactorData f = factorize(g);
        for (int p = 1; p <= n - 2; ++p) {
            int cmp = compare_roots(f.at(p).r, f.at(p + 1).r);
            CHECK(cmp <= 0);
            if (!f.at(p + 1).r.is_zero()) CHECK(cmp < 0);
            CHECK(f.at(p).qtilde.all_nonnegative);
        }
        // derivative identity d/dx Q_(p+1) = Q_p
        for (int p = 1; p <= n - 2; ++p)
            CHECK(d_dx(q_polynomial(p + 1, g.c)) == q_polynomial(p, g.c));
    }
}

TEST_CASE("gma test values on candidates") {
    ManifoldPresentation m = wu13();
    CohClass alpha = m.basis_class(0) + m.basis_class(1);
    const SubvarietyCandidate* c = m.find_candidate("C");
    REQUIRE(c != nullptr);

    // V = C with large c_1: integral of alpha - c_1 beta over C is 1 - c_1
    CohClass beta = beta_b(m, Rational(1, 5));
    GmaCoefficients big_c1{{Rational(2), Rational(0)}, Rational(0)};
    GmaTestResult t = gma_test(m, alpha, beta, big_c1, *c);
    CHECK(t.value == Rational(-1));
    CHECK(t.sgn < 0);

    // zero coefficients: the test integral is the Kaehler volume term
    GmaCoefficients zero{{Rational(0), Rational(0)}, Rational(1)};
    for (const auto& v : m.candidates) {
        GmaTestResult tz = gma_test(m, alpha, beta, zero, v);
        CHECK(tz.value > 0);
    }
}

TEST_CASE("J-specialization matches slope signs") {
    std::mt19937_64 rng(321);
    std::vector<ManifoldPresentation> families{wu13(), blowup_pn(3)};
    for (const auto& m : families) {
        for (int trial = 0; trial < 20; ++trial) {
            CohClass alpha, beta;
            if (m.name.substr(0, 2) == "wu") {
                alpha = CohClass{rnd_pos(rng, 8, 4), rnd_pos(rng, 8, 4)};
                beta = CohClass{rnd_pos(rng, 8, 4), rnd_pos(rng, 8, 4)};
            } else {
                // Kaehler on the blow-up: x + y > 0, y < 0
                Rational x = rnd_pos(rng, 8, 4);
                alpha = CohClass{x + rnd_pos(rng, 4, 4), Rational(0) - x};
                Rational x2 = rnd_pos(rng, 8, 4);
                beta = CohClass{x2 + rnd_pos(rng, 4, 4), Rational(0) - x2};
            }
            Rational mu = total_slope(m, alpha, beta);
            REQUIRE(mu > 0);
            std::vector<Rational> c(static_cast<std::size_t>(m.dim - 1), Rational(0));
            c[0] = Rational(1) / mu;
            GmaCoefficients g{c, solve_top_constant(m, alpha, beta, c)};
            for (const auto& v : m.candidates) {
                GmaTestResult t = gma_test(m, alpha, beta, g, v);
                Rational muv = slope(m, alpha, beta, v);
                CHECK(t.sgn == sign(mu - muv));
            }
        }
    }
}

TEST_CASE("gma classification against the table rows") {
    ManifoldPresentation m = wu13();
    CohClass alpha = m.basis_class(0) + m.basis_class(1);
    auto classify_j_specialized = [&](const Rational& b) {
        CohClass beta = beta_b(m, b);
        Rational mu = total_slope(m, alpha, beta);
        std::vector<Rational> c{Rational(1) / mu, Rational(0)};
        GmaCoefficients g{c, solve_top_constant(m, alpha, beta, c)};
        return classify_gma(m, alpha, beta, g);
    };
    GmaVerdict v1 = classify_j_specialized(Rational(1, 10));
    CHECK(v1.status == Status::Unstable);
    CHECK(v1.dest.size() == 2);
    GmaVerdict v2 = classify_j_specialized(Rational(1, 5));
    CHECK(v2.dest == std::vector<std::string>{"C"});
    GmaVerdict v3 = classify_j_specialized(Rational(1, 4));
    CHECK(v3.dest.empty());
    CHECK(v3.status == Status::Stable);

    // zero coefficients: stable, every integral positive
    GmaCoefficients zero{{Rational(0), Rational(0)}, Rational(1)};
    CHECK(classify_gma(m, alpha, beta_b(m, Rational(1, 5)), zero).status == Status::Stable);
}

TEST_CASE("factor class cone verdict flips as alpha grows") {
    ManifoldPresentation m = wu13();
    CohClass base = m.basis_class(0) + m.basis_class(1);
    CohClass beta = beta_b(m, Rational(1, 2));
    GmaCoefficients g{{Rational(1), Rational(1)}, Rational(0)};
    auto tau2_verdict = [&](const Rational& s) {
        GmaVerdict v = classify_gma(m, s * base, beta, g);
        REQUIRE(v.tau_cones.size() == 2);
        REQUIRE_FALSE(v.tau_cones[1].missing_data);
        return v.tau_cones[1].region;
    };
    CHECK(tau2_verdict(Rational(1, 10)) == Region::Outside);
    CHECK(tau2_verdict(Rational(100)) == Region::Inside);
    bool seen_outside = false, seen_inside = false;
    for (int s = 1; s <= 64; s *= 2) {
        Region r = tau2_verdict(Rational(s));
        if (r == Region::Outside) {
            seen_outside = true;
            CHECK_FALSE(seen_inside);  // flips once, outside -> inside
        }
        if (r == Region::Inside) seen_inside = true;
    }
    CHECK((seen_outside || seen_inside));
}

TEST_CASE("inverse Hessian normalizations") {
    ManifoldPresentation m = wu13();
    CohClass alpha = m.basis_class(0) + m.basis_class(1);
    CohClass beta = beta_b(m, Rational(1, 5));

    // k = 1 reduces to the J-normalization kappa = 1/mu
    InverseHessianData ih1 = inverse_hessian(m, alpha, beta, 1);
    CHECK(ih1.kappa == Rational(1) / total_slope(m, alpha, beta));
    CHECK(cohomological_residual(m, alpha, beta, ih1.coeffs) == Rational(0));
    FactorData f1 = factorize(ih1.coeffs);
    for (int p = 1; p <= 2; ++p) {
        REQUIRE(f1.at(p).r.is_exact());
        CHECK(f1.at(p).r.exact_value() == Rational(p) * ih1.kappa);
    }

    // k = 2 on the threefold: kappa rational, r_2 = sqrt(2 kappa)
    InverseHessianData ih2 = inverse_hessian(m, alpha, beta, 2);
    CHECK(cohomological_residual(m, alpha, beta, ih2.coeffs) == Rational(0));
    REQUIRE(ih2.kappa_p.size() == 1);
    CHECK(ih2.kappa_p[0].first == 2);
    CHECK(ih2.kappa_p[0].second == Rational(2) * ih2.kappa);
    FactorData f2 = factorize(ih2.coeffs);
    // oracle: substitute the root back into x^2/2 - kappa
    double r2 = f2.at(2).r.approx();
    CHECK(std::fabs(r2 * r2 / 2 - to_double(ih2.kappa)) < 1e-9);
    CHECK(f2.at(1).r.is_zero());  // Q_1 = x when c_1 = 0

    // beta = alpha: kappa is a binomial-normalized rational
    InverseHessianData iha = inverse_hessian(m, alpha, alpha, 2);
    CHECK(iha.kappa == Rational(factorial(1)) / Rational(factorial(3)));
    CHECK_THROWS_AS(inverse_hessian(m, alpha, beta, 0), precondition_error);
    CHECK_THROWS_AS(inverse_hessian(m, alpha, beta, 3), precondition_error);
}

TEST_CASE("coefficients from a stability datum") {
    // rho = (i, 0, 0): all b_k = 0
    ZDatumResult r1 = from_z_datum(ComplexRational{Rational(2), Rational(3)},
                                   {ComplexRational{Rational(0), Rational(1)},
                                    ComplexRational{Rational(0), Rational(0)},
                                    ComplexRational{Rational(0), Rational(0)}});
    CHECK(r1.b == std::vector<Rational>{Rational(0), Rational(0)});
    CHECK_FALSE(r1.all_negative);

    // Z = 1 + i, rho = (1, i): b_1 = Im((1-i) i)/Im(1-i) = 1 / (-1) = -1
    ZDatumResult r2 = from_z_datum(ComplexRational{Rational(1), Rational(1)},
                                   {ComplexRational{Rational(1), Rational(0)},
                                    ComplexRational{Rational(0), Rational(1)}});
    REQUIRE(r2.b.size() == 1);
    CHECK(r2.b[0] == Rational(-1));
    CHECK(r2.all_negative);

    // positive real rescaling of Z leaves the ratios unchanged
    ZDatumResult r3 = from_z_datum(ComplexRational{Rational(7), Rational(7)},
                                   {ComplexRational{Rational(1), Rational(0)},
                                    ComplexRational{Rational(0), Rational(1)}});
    CHECK(r3.b == r2.b);

    CHECK_THROWS_AS(from_z_datum(ComplexRational{Rational(1), Rational(0)},
                                 {ComplexRational{Rational(1), Rational(0)}}),
                    degenerate_error);
}

TEST_CASE("quotient coefficients stay nonnegative on random data") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        GmaCoefficients g;
        bool any = false;
        for (int k = 0; k < n - 1; ++k) {
            Rational x = (rng() % 4 == 0) ? Rational(0) : rnd_pos(rng, 10, 5);
            if (x != 0) any = true;
            g.c.push_back(x);
        }
        if (!any) g.c[0] = rnd_pos(rng, 10, 5);
        FactorData f = factorize(g);
        for (const auto& e : f.entries) {
            CHECK(e.qtilde.all_nonnegative);
            for (const auto& c : e.qtilde.coeffs) CHECK(c.certified_sign >= 0);
        }
    }
}
