#include <catch2/catch_amalgamated.hpp>

#include <stablab/jstability.hpp>
#include <stablab/positivity.hpp>

#include <random>

using namespace stablab;

namespace {

CohClass lb(const Rational& a, const Rational& b) { return CohClass{a, b}; }

}  // namespace

TEST_CASE("cone membership verdicts on the threefold") {
    ManifoldPresentation m = wu_bundle(1, {1, 3});
    CohClass L = m.basis_class(0), H = m.basis_class(1);
    CohClass alpha = L + H;

    // mu alpha - 2 beta at b = 1/10 is big: A + 3B = (30 b - 2)/7 = 1/7 > 0
    Rational b(1, 10);
    CohClass beta = L + b * H;
    Rational mu = total_slope(m, alpha, beta);
    CohClass cls = mu * alpha - Rational(2) * beta;
    CHECK(in_cone(m, ConeKind::Modified, 3, cls) == Region::Inside);
    CHECK(in_cone(m, ConeKind::Big, cls) == Region::Inside);

    CHECK(in_cone(m, ConeKind::Kahler, H) == Region::Boundary);
    CHECK(in_cone(m, ConeKind::Nef, H) == Region::Boundary);
    CHECK(in_cone(m, ConeKind::Kahler, lb(0, 0)) == Region::Boundary);
    CHECK(in_cone(m, ConeKind::Big, lb(0, 0)) == Region::Boundary);
    CHECK(in_cone(m, ConeKind::Kahler, lb(-1, 1)) == Region::Outside);

    // pseff: a + 3b >= 0, b >= 0
    CHECK(in_cone(m, ConeKind::Pseff, lb(-3, 1)) == Region::Boundary);
    CHECK(in_cone(m, ConeKind::Pseff, lb(-4, 1)) == Region::Outside);
}

TEST_CASE("missing cone data is an error, not a guess") {
    ManifoldPresentation b3 = blowup_pn(3);
    CohClass H = b3.basis_class(0);
    CHECK_THROWS_AS(in_cone(b3, ConeKind::Modified, 2, H), missing_cone_error);
    // modified(1) and modified(n) fall back to the stated Kaehler/big cones
    CHECK(in_cone(b3, ConeKind::Modified, 1, H + Rational(-1, 2) * b3.basis_class(1)) ==
          Region::Inside);
    CHECK(in_cone(b3, ConeKind::Modified, 3, H) == Region::Inside);  // H is nef and big
    CHECK(in_cone(b3, ConeKind::Modified, 3, Rational(-1) * H) == Region::Outside);
}

TEST_CASE("exact bigness threshold at b = 1/15") {
    ManifoldPresentation m = wu_bundle(1, {1, 3});
    CohClass L = m.basis_class(0), H = m.basis_class(1);
    CohClass alpha = L + H;
    auto verdict_at = [&](const Rational& b) {
        CohClass beta = L + b * H;
        Rational mu = total_slope(m, alpha, beta);
        return in_cone(m, ConeKind::Modified, 3, mu * alpha - Rational(2) * beta);
    };
    CHECK(verdict_at(Rational(1, 15)) == Region::Boundary);
    CHECK(verdict_at(Rational(1, 15) + Rational(1, 1000000)) == Region::Inside);
    CHECK(verdict_at(Rational(1, 15) - Rational(1, 1000000)) == Region::Outside);
    CHECK(verdict_at(Rational(1, 16)) == Region::Outside);
    CHECK(verdict_at(Rational(1, 14)) == Region::Inside);
}

TEST_CASE("modified cones are nested") {
    std::mt19937_64 rng(71);
    ManifoldPresentation m = wu_bundle(1, {1, 3, 4, 9});  // dimension 5
    std::uniform_int_distribution<int> num(-40, 40);
    std::uniform_int_distribution<int> den(1, 9);
    for (int trial = 0; trial < 100; ++trial) {
        CohClass c = lb(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
        for (int p = 1; p < m.dim; ++p) {
            Region below = in_cone(m, ConeKind::Modified, p, c);
            Region above = in_cone(m, ConeKind::Modified, p + 1, c);
            if (below == Region::Inside) CHECK(above == Region::Inside);
        }
    }
}

TEST_CASE("projection onto the nef boundary") {
    ManifoldPresentation m = wu_bundle(1, {1, 3});
    CohClass L = m.basis_class(0), H = m.basis_class(1);
    CohClass alpha = L + H;

    // beta = L + bH with b < 1 projects onto H, with b > 1 onto L
    CohClass eta1 = projection(m, alpha, L + Rational(1, 10) * H);
    CHECK(eta1 == H);
    CohClass eta2 = projection(m, alpha, L + Rational(2) * H);
    CHECK(eta2 == L);
    // diagnostic invariants: nef but not Kaehler, in span with positive
    // alpha part (checked via the defining property instead)
    for (const CohClass& eta : {eta1, eta2}) {
        CHECK(in_cone(m, ConeKind::Nef, eta) == Region::Boundary);
        CHECK(in_cone(m, ConeKind::Kahler, eta) != Region::Inside);
    }
    // eta = (1-t) beta + t alpha solvable: t = 10/9 for the H branch after
    // rescaling beta, concretely eta is a positive combination c2 alpha + c1 beta
    // with c2 > 0; verify by solving 2x2 exactly
    // (for eta1 = H: x alpha + y beta = (x + y, x + y/10); x+y=0 gives H-coeff 9x/10)
    CHECK(alpha + Rational(-1) * (L + Rational(1, 10) * H) == lb(0, Rational(9, 10)));

    CHECK_THROWS_AS(projection(m, alpha, Rational(3) * alpha), precondition_error);
    CHECK_THROWS_AS(projection(m, alpha, H), precondition_error);  // beta not Kaehler

    ManifoldPresentation b3 = blowup_pn(3);
    CohClass Hb = b3.basis_class(0), Eb = b3.basis_class(1);
    CohClass a = Hb + Rational(-1, 4) * Eb;
    CohClass bcl = Hb + Rational(-1, 2) * Eb;
    CohClass eta = projection(b3, a, bcl);
    CHECK(eta == Hb);  // facet -y = 0 of cone(H, H-E)
    CHECK(in_cone(b3, ConeKind::Nef, eta) == Region::Boundary);
}

TEST_CASE("modified hypotheses across the threefold family") {
    ManifoldPresentation m = wu_bundle(1, {1, 3});
    CohClass L = m.basis_class(0), H = m.basis_class(1);
    CohClass alpha = L + H;

    // p = 2 verdict flips exactly at b = 1/15 (lambda = 0)
    auto p2_verdict = [&](const Rational& b) {
        auto vs = check_modified_hypotheses(m, alpha, L + b * H, Rational(0));
        return vs[1].region;
    };
    CHECK(p2_verdict(Rational(1, 10)) == Region::Inside);
    CHECK(p2_verdict(Rational(1, 15)) == Region::Boundary);
    CHECK(p2_verdict(Rational(1, 20)) == Region::Outside);

    // p = 1 verdict against modified(2) flips at b = 1/29:
    // (mu - 1) + (mu - b) > 0 iff 29 b > 1
    auto p1_verdict = [&](const Rational& b) {
        auto vs = check_modified_hypotheses(m, alpha, L + b * H, Rational(0));
        return vs[0].region;
    };
    CHECK(p1_verdict(Rational(1, 29)) == Region::Boundary);
    CHECK(p1_verdict(Rational(1, 28)) == Region::Inside);
    CHECK(p1_verdict(Rational(1, 30)) == Region::Outside);

    // beta = alpha: every class is a positive multiple of alpha
    for (const auto& v : check_modified_hypotheses(m, alpha, alpha, Rational(0)))
        CHECK(v.region == Region::Inside);
}
