#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "harmjet/jetflow.hpp"
#include "harmjet/rng.hpp"

using namespace harmjet;

namespace {

HomPoly random_hompoly(Rng& rng, int degree) {
    HomPoly p(degree);
    for (int j = 0; j <= degree; ++j) p.set_coeff(j, rng.next_rational());
    return p;
}

HomPoly r2_power(int q) {
    return hp_pow(HomPoly::monomial(2, 0, 1) + HomPoly::monomial(2, 2, 1), q);
}

Jet deep_tail_jet(int m, int order, Rng& rng) {
    GradedPoly tail;
    for (int n = s_of_m(m) + 1; n <= order; ++n) tail.add(random_hompoly(rng, n));
    return make_jet(m, tail, order);
}

}  // namespace

TEST_CASE("s(m) threshold") {
    CHECK(s_of_m(2) == 2);
    CHECK(s_of_m(3) == 3);
    CHECK(s_of_m(4) == 4);
    CHECK(s_of_m(5) == 6);
    CHECK(s_of_m(7) == 10);
    CHECK_THROWS_AS(s_of_m(1), std::domain_error);
}

TEST_CASE("witness jet construction") {
    const Jet f5 = make_fstar(5, rat(1));
    CHECK(f5.order == 6);
    HomPoly expected(6);  // (x^2+y^2)^3 = x^6 + 3x^4y^2 + 3x^2y^4 + y^6
    expected.set_coeff(0, rat(1));
    expected.set_coeff(2, rat(3));
    expected.set_coeff(4, rat(3));
    expected.set_coeff(6, rat(1));
    CHECK(f5.tail.component(6) == expected);
    CHECK(f5.tail.component(5).is_zero());

    const Jet f6 = make_fstar(6, rat(-2));
    CHECK(f6.order == 8);
    CHECK(f6.tail.component(8) == Rational(-2) * r2_power(4));

    CHECK_THROWS_AS(make_fstar(4, rat(1)), std::domain_error);
    CHECK_THROWS_AS(make_fstar(5, rat(0)), std::domain_error);
}

TEST_CASE("jet validation") {
    GradedPoly low;
    low.add(HomPoly::monomial(5, 0, 1));
    CHECK_THROWS_AS(make_jet(5, low, 8), std::domain_error);  // degree not above m
    GradedPoly high;
    high.add(HomPoly::monomial(9, 0, 1));
    CHECK_THROWS_AS(make_jet(5, high, 8), std::domain_error);  // above the order
    CHECK_THROWS_AS(make_jet(1, GradedPoly{}, 3), std::domain_error);
    const Jet f = make_jet(5, GradedPoly{}, kExactOrder);
    CHECK(jet_function(f).component(5) == expand_re_im_zm(5).first);
}

TEST_CASE("phi vanishes identically on the zero-tail jet") {
    const Jet f = make_jet(6, GradedPoly{}, kExactOrder);
    StarJet t = StarJet::flat(6);
    const ThetaContext ctx(6, 4);
    for (int k = 1; k <= 4; ++k) {
        CHECK(phi_next(t, f, k).is_zero());
        const StepRecord record = step(t, f, k, ctx.op(k));
        CHECK(record.g11.is_zero());
        CHECK(record.g12.is_zero());
        CHECK(record.g22.is_zero());
    }
    CHECK(t.entry(0, 0).is_zero());
    CHECK(t.entry(1, 1).is_zero());
}

TEST_CASE("phi_1 of the witness jet is -4C(m-2)^2 (x^2+y^2)^{m-3}") {
    const Jet f = make_fstar(5, rat(1));
    const StarJet t = StarJet::flat(5);
    CHECK(phi_next(t, f, 1) == Rational(-36) * r2_power(2));

    for (int m = 6; m <= 9; ++m) {
        const Rational c = rat(-3, 7);
        const Jet g = make_fstar(m, c);
        const ThetaContext ctx(m, m - 4);
        // Walk to the last problematic degree; phi must stay zero before it.
        StarJet walker = StarJet::flat(m);
        for (int k = 1; k < m - 4; ++k) {
            CHECK(phi_next(walker, g, k).is_zero());
            step(walker, g, k, ctx.op(k));
        }
        const HomPoly expected = -(c * Rational(4 * (m - 2) * (m - 2)) * r2_power(m - 3));
        CHECK(phi_next(walker, g, m - 4) == expected);
    }
}

TEST_CASE("single tail term: phi is zero below N-m and -laplacian at N-m") {
    Rng rng(51);
    for (int m = 5; m <= 9; ++m)
        for (int n = m + 1; n <= 2 * m - 4; ++n) {
            HomPoly term = random_hompoly(rng, n);
            if (term.is_zero()) term = HomPoly::monomial(n, 0, 1);
            GradedPoly tail;
            tail.set(term);
            const Jet f = make_jet(m, tail, n);
            const RunResult r = run(f, n - m);
            for (int k = 1; k < n - m; ++k) CHECK(r.steps[k - 1].phi.is_zero());
            CHECK(r.steps.back().phi == -laplace_flat(term));
        }
}

TEST_CASE("failing step keeps the flat star and reports the residual") {
    const Rational c = rat(2, 3);
    const Jet f = make_fstar(5, c);
    StarJet t = StarJet::flat(5);
    const ThetaOperator op = ThetaOperator::build(5, 1);
    const StepRecord record = step(t, f, 1, op);
    CHECK(!record.outcome.in_image);
    CHECK(record.outcome.residual == -(c * Rational(36) * r2_power(2)));
    CHECK(record.outcome.projection.is_zero());
    CHECK(record.g11.is_zero());
    CHECK(record.g12.is_zero());
    CHECK(record.g22.is_zero());
    CHECK(t == StarJet::assemble(5, {}, StarJet::flat(5).entry(0, 1),
                                 StarJet::flat(5).entry(1, 0), {}, 1));
}

TEST_CASE("steps at k >= m-3 are always solvable") {
    Rng rng(52);
    for (int m : {5, 6}) {
        const Jet f = deep_tail_jet(m, 3 * m, rng);
        const RunResult r = run(f, 2 * m);
        for (const auto& record : r.steps)
            if (record.k >= m - 3) CHECK(record.outcome.in_image);
    }
}

TEST_CASE("full run on an equivalent jet: zero residuals and true assertions") {
    Rng rng(53);
    const Jet f = deep_tail_jet(7, 13, rng);  // zero tail through s(7) = 10
    const RunResult r = run(f, 6);
    CHECK(r.report.verdict == ObstructionReport::Verdict::equivalent);
    CHECK(!r.report.first_failure);
    REQUIRE(r.report.covered_S == std::vector<int>{1, 2, 3});
    for (const auto& residual : r.report.residuals) CHECK(residual.is_zero());
    for (bool ok : r.assertions) CHECK(ok);
    CHECK(r.report.covers_all_of_S);
}

TEST_CASE("witness run: verdict, first failure and exit data") {
    const RunResult r = run(make_fstar(5, rat(1)), 1);
    CHECK(r.report.verdict == ObstructionReport::Verdict::not_equivalent);
    REQUIRE(r.report.first_failure.has_value());
    CHECK(*r.report.first_failure == 1);
    CHECK(r.report.covers_all_of_S);
    CHECK(!r.assertions[0]);
}

TEST_CASE("m <= 4 has an empty problematic set and a default verdict") {
    Rng rng(54);
    GradedPoly tail;
    for (int n = 5; n <= 7; ++n) tail.add(random_hompoly(rng, n));
    const Jet f = make_jet(4, tail, 7);
    const RunResult r = run(f, 3);
    CHECK(r.report.covered_S.empty());
    CHECK(r.report.verdict == ObstructionReport::Verdict::equivalent);
    CHECK(r.report.covers_all_of_S);
}

TEST_CASE("assertion A_k") {
    // Flat star plus the pure leading term is harmonic to every order.
    const Jet lead = make_jet(5, GradedPoly{}, kExactOrder);
    for (int k = 1; k <= 4; ++k) CHECK(assert_Ak(StarJet::flat(5), lead, k));

    // Flat star against the witness jet fails at n = m-1 + ... = 4.
    const Jet f = make_fstar(5, rat(1));
    CHECK(!assert_Ak(StarJet::flat(5), f, 1));

    // After a successful run the assertions hold up to the horizon.
    Rng rng(55);
    const Jet g = deep_tail_jet(6, 14, rng);
    const RunResult r = run(g, 8);
    for (int k = 1; k <= 8; ++k) CHECK(assert_Ak(r.metric, g, k));
}

TEST_CASE("determinant correction keeps both A_k identities exact") {
    // Tails straddling s(m) force nonzero G_k early; by degree 2k the
    // determinant of T_{k-1} picks up quadratic contributions, so the
    // trace-correcting entry g22 must depart from -g11.
    Rng rng(56);
    const int m = 5;
    const Jet f = deep_tail_jet(m, 13, rng);  // tail degrees 7..13
    const RunResult r = run(f, 8);
    bool correction_active = false;
    for (const auto& record : r.steps)
        if (!(record.g22 + record.g11).is_zero()) correction_active = true;
    CHECK(correction_active);
    for (int k = 1; k <= 8; ++k) {
        CHECK(r.assertions[k - 1]);
        CHECK(r.metric.det_component(k).is_zero());
        CHECK(r.metric.trace_component(k).is_zero());
    }
}

TEST_CASE("continuation well past the problematic range stays assertion-clean") {
    Rng rng(59);
    const int m = 5, horizon = m + 6;
    const Jet f = deep_tail_jet(m, m + horizon, rng);
    const RunResult r = run(f, horizon);
    CHECK(r.report.verdict == ObstructionReport::Verdict::equivalent);
    for (int k = 1; k <= horizon; ++k) {
        CHECK(r.assertions[k - 1]);
        CHECK(r.metric.det_component(k).is_zero());
        CHECK(r.metric.trace_component(k).is_zero());
    }
}

TEST_CASE("degree bookkeeping of phi and G") {
    Rng rng(57);
    const int m = 6;
    const Jet f = deep_tail_jet(m, 14, rng);
    const RunResult r = run(f, 8);
    for (const auto& record : r.steps) {
        CHECK(record.phi.degree() == record.k + m - 2);
        CHECK(record.g11.degree() == record.k);
        CHECK(record.g12.degree() == record.k);
        CHECK(record.g22.degree() == record.k);
    }
}

TEST_CASE("short jets raise errors that name the required order") {
    const Jet f = make_fstar(5, rat(1));  // order 6
    CHECK_THROWS_AS(run(f, 2), JetTooShort);
    try {
        run(f, 2);
    } catch (const JetTooShort& e) {
        CHECK(e.required_order == 7);
        CHECK(std::string(e.what()).find("7") != std::string::npos);
    }
    StarJet t = StarJet::flat(5);
    CHECK_THROWS_AS(phi_next(t, f, 2), std::domain_error);  // star degree mismatch
    const ThetaContext ctx(5, 1);
    CHECK_THROWS_AS(run(f, 2, ctx), std::domain_error);  // horizon beyond context
    CHECK_THROWS_AS(assert_Ak(StarJet::flat(5), f, 3), JetTooShort);
}

TEST_CASE("verdict does not depend on the auxiliary pairing") {
    Rng rng(58);
    for (int m : {5, 6}) {
        for (int trial = 0; trial < 2; ++trial) {
            GradedPoly h;
            for (int n = m + 1; n <= 2 * m - 4; ++n)
                if (rng.next_below(2)) h.add(random_hompoly(rng, n));
            const Jet f = make_jet(m, h, 2 * m - 4);
            const RunResult a = run(f, m - 4, PairingKind::circle);
            const RunResult b = run(f, m - 4, PairingKind::coefficient);
            CHECK(a.report.verdict == b.report.verdict);
            CHECK(a.report.first_failure == b.report.first_failure);
        }
    }
}
