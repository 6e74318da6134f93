#include "harmjet/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "harmjet/analysis.hpp"
#include "harmjet/geometry.hpp"
#include "harmjet/jetdoc.hpp"
#include "harmjet/jetflow.hpp"
#include "harmjet/pairing.hpp"
#include "harmjet/rng.hpp"

namespace harmjet {

namespace {

HomPoly random_hompoly(Rng& rng, int degree) {
    HomPoly p(degree);
    for (int j = 0; j <= degree; ++j) p.set_coeff(j, rng.next_rational());
    return p;
}

HomPoly r2_power(int q) {
    return hp_pow(HomPoly::monomial(2, 0, 1) + HomPoly::monomial(2, 2, 1), q);
}

// Monomial-basis matrix of the flat Laplacian R_n -> R_{n-2}; independent of
// the production code path (written from the power rule directly).
Mat laplace_matrix(int n) {
    Mat d(n - 1, n + 1);
    for (int j = 0; j <= n; ++j) {
        const int a = n - j;  // x-exponent
        if (a >= 2) d.at(j, j) += Rational(a) * Rational(a - 1);
        if (j >= 2) d.at(j - 2, j) += Rational(j) * Rational(j - 1);
    }
    return d;
}

struct Suite {
    std::vector<CheckResult> results;

    void check(const std::string& name, const std::function<bool(std::string&)>& body) {
        CheckResult r{name, false, ""};
        try {
            r.passed = body(r.detail);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        results.push_back(std::move(r));
    }
};

bool expect(bool cond, std::string& detail, const std::string& message) {
    if (!cond && detail.empty()) detail = message;
    return cond;
}

}  // namespace

std::vector<CheckResult> run_selfchecks() {
    Suite suite;

    suite.check("polyring.leibniz_product_rule", [](std::string& detail) {
        Rng rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            const int dp = 1 + static_cast<int>(rng.next_below(12));
            const int dq = 1 + static_cast<int>(rng.next_below(12));
            const HomPoly p = random_hompoly(rng, dp), q = random_hompoly(rng, dq);
            for (Var v : {Var::x, Var::y}) {
                const HomPoly lhs = derive(hp_mul(p, q), v);
                const HomPoly rhs = hp_mul(derive(p, v), q) + hp_mul(p, derive(q, v));
                if (!expect(lhs == rhs, detail, "product rule failed")) return false;
            }
        }
        return true;
    });

    suite.check("polyring.euler_identity", [](std::string& detail) {
        Rng rng(12);
        for (int n = 1; n <= 12; ++n) {
            const HomPoly p = random_hompoly(rng, n);
            const HomPoly lhs = hp_mul(HomPoly::monomial(1, 0, 1), derive(p, Var::x)) +
                                hp_mul(HomPoly::monomial(1, 1, 1), derive(p, Var::y));
            if (!expect(lhs == Rational(n) * p, detail, "euler identity failed at n=" +
                                                            std::to_string(n)))
                return false;
        }
        return true;
    });

    suite.check("polyring.harmonic_decompose_roundtrip", [](std::string& detail) {
        Rng rng(13);
        for (int n = 0; n <= 20; ++n) {
            const HomPoly p = random_hompoly(rng, n);
            const auto parts = harmonic_decompose(p);
            if (!expect(irr_reconstruct(n, parts) == p, detail,
                        "reconstruction failed at degree " + std::to_string(n)))
                return false;
            for (const auto& part : parts)
                if (!expect(part.p > 0 || is_zero(part.b), detail, "b != 0 with p = 0"))
                    return false;
        }
        return true;
    });

    suite.check("polyring.laplacian_radial_powers", [](std::string& detail) {
        for (int n = 1; n <= 10; ++n) {
            const HomPoly expected = Rational(4 * n * n) * r2_power(n - 1);
            if (!expect(laplace_flat(r2_power(n)) == expected, detail,
                        "4n^2 law failed at n=" + std::to_string(n)))
                return false;
        }
        return true;
    });

    suite.check("polyring.laplacian_kills_harmonic_leads", [](std::string& detail) {
        for (int p = 2; p <= 20; ++p) {
            auto [re, im] = expand_re_im_zm(p);
            if (!expect(laplace_flat(re).is_zero() && laplace_flat(im).is_zero(), detail,
                        "harmonic pair not annihilated at p=" + std::to_string(p)))
                return false;
        }
        return true;
    });

    suite.check("polyring.frozen_examples", [](std::string& detail) {
        const HomPoly x = HomPoly::monomial(1, 0, 1), y = HomPoly::monomial(1, 1, 1);
        if (!expect(hp_mul(x, y) == HomPoly::monomial(2, 1, 1), detail, "x*y")) return false;
        if (!expect(hp_mul(x + y, x - y) == expand_re_im_zm(2).first, detail, "(x+y)(x-y)"))
            return false;
        if (!expect(laplace_flat(r2_power(3)) == Rational(36) * r2_power(2), detail,
                    "laplacian of (x^2+y^2)^3"))
            return false;
        const auto parts = harmonic_decompose(HomPoly::monomial(2, 0, 1));
        if (!expect(parts.size() == 2 && parts[0].a == rat(1, 2) && is_zero(parts[0].b) &&
                        parts[1].a == rat(1, 2),
                    detail, "decomposition of x^2"))
            return false;
        return true;
    });

    suite.check("linalg.parallel_matches_serial", [](std::string& detail) {
        Rng rng(14);
        for (int trial = 0; trial < 6; ++trial) {
            const int rows = 6 + static_cast<int>(rng.next_below(16));
            const int cols = 6 + static_cast<int>(rng.next_below(16));
            Mat a(rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j)
                    if (rng.next_below(3)) a.at(i, j) = rng.next_rational(5, 3);
            EliminationOptions force;
            force.parallel = true;
            force.min_parallel_cells = 0;
            const Echelon par = Echelon::compute(a, force);
            const Echelon ser = Echelon::compute_serial(a);
            if (!expect(par == ser, detail, "serial and parallel elimination differ"))
                return false;
            if (!expect(ser.transform() * a == ser.rref(), detail, "E*A != rref")) return false;
            for (const auto& v : ser.kernel_basis()) {
                bool zero = true;
                for (const auto& e : mat_vec(a, v)) zero = zero && is_zero(e);
                if (!expect(zero, detail, "kernel vector not annihilated")) return false;
            }
        }
        return true;
    });

    suite.check("theta.rank_law", [](std::string& detail) {
        for (int m = 2; m <= 8; ++m)
            for (int k = 1; k <= 2 * m; ++k) {
                const ThetaOperator op = ThetaOperator::build(m, k);
                const int expected = std::min(2 * (k + 1), k + m - 1);
                if (!expect(op.rank() == expected, detail,
                            "rank law failed at m=" + std::to_string(m) +
                                " k=" + std::to_string(k)))
                    return false;
            }
        return true;
    });

    suite.check("theta.explicit_image_law", [](std::string& detail) {
        for (int m = 2; m <= 7; ++m)
            for (int k = 1; k <= 8; ++k) {
                const ThetaOperator op = ThetaOperator::build(m, k);
                for (int q = 0; q <= op.M_k(); ++q) {
                    const int n = k - q, p = k + m - 2 - 2 * q;
                    const Rational scale(2 * m * (n + m - 1));
                    const auto [re_target, im_target] = irr_basis(k + m - 2, q);
                    const CxHomPoly zq = zbar_q_z_n(q, n);
                    if (!expect(op.apply(zq) == scale * re_target, detail, "real image law"))
                        return false;
                    if (!expect(op.apply(cx_scale_i(zq)) == -(scale * im_target), detail,
                                "imaginary image law"))
                        return false;
                }
            }
        return true;
    });

    suite.check("theta.irr_inclusion", [](std::string& detail) {
        for (int m = 2; m <= 7; ++m)
            for (int k = 1; k <= 6; ++k) {
                const ThetaOperator op = ThetaOperator::build(m, k);
                for (int q = 0; q <= op.M_k(); ++q) {
                    const auto [re, im] = irr_basis(k + m - 2, q);
                    if (!expect(op.solve_in_image(re).in_image, detail, "Re basis missed"))
                        return false;
                    if (!im.is_zero() && !expect(op.solve_in_image(im).in_image, detail,
                                                 "Im basis missed"))
                        return false;
                }
            }
        return true;
    });

    suite.check("theta.cokernel_missed_direction", [](std::string& detail) {
        for (int m = 5; m <= 9; ++m) {
            const ThetaOperator op = ThetaOperator::build(m, m - 4);
            const auto outcome = op.solve_in_image(r2_power(m - 3));
            if (!expect(!outcome.in_image && !outcome.residual.is_zero(), detail,
                        "radial power claimed inside the image, m=" + std::to_string(m)))
                return false;
            if (!expect(op.rank() == 2 * m - 6, detail, "image dimension")) return false;
            for (int q = 0; q <= m - 4; ++q) {
                const auto [re, im] = irr_basis(2 * m - 6, q);
                if (!expect(op.solve_in_image(re).in_image && op.solve_in_image(im).in_image,
                            detail, "irr summand missed"))
                    return false;
            }
        }
        return true;
    });

    suite.check("theta.two_path_equality", [](std::string& detail) {
        for (int m = 2; m <= 7; ++m)
            for (int k = 1; k <= 8; ++k)
                if (!expect(build_theta_matrix_real(m, k) == build_theta_matrix_complex(m, k),
                            detail,
                            "paths differ at m=" + std::to_string(m) + " k=" + std::to_string(k)))
                    return false;
        return true;
    });

    suite.check("theta.projection_and_adjoint", [](std::string& detail) {
        Rng rng(15);
        for (int trial = 0; trial < 10; ++trial) {
            const int m = 2 + static_cast<int>(rng.next_below(7));
            const int k = 1 + static_cast<int>(rng.next_below(6));
            const ThetaOperator op = ThetaOperator::build(m, k);
            const HomPoly phi = random_hompoly(rng, k + m - 2);
            const HomPoly psi = random_hompoly(rng, k + m - 2);
            const HomPoly p_phi = op.project(phi), p_psi = op.project(psi);
            if (!expect(op.project(p_phi) == p_phi, detail, "projection not idempotent"))
                return false;
            if (!expect(circle_pairing(p_phi, psi) == circle_pairing(phi, p_psi), detail,
                        "projection not self-adjoint"))
                return false;
            const CxHomPoly q{random_hompoly(rng, k), random_hompoly(rng, k)};
            const Rational lhs = circle_pairing(op.apply(q), phi);
            const CxHomPoly aphi = op.adjoint_apply(phi);
            const Rational rhs =
                circle_pairing(q.re(), aphi.re()) + circle_pairing(q.im(), aphi.im());
            if (!expect(lhs == rhs, detail, "adjoint pairing identity failed")) return false;
        }
        return true;
    });

    suite.check("theta.minimum_norm_preimage", [](std::string& detail) {
        Rng rng(16);
        for (int trial = 0; trial < 8; ++trial) {
            const int m = 2 + static_cast<int>(rng.next_below(5));
            // k >= m-2 makes the kernel nontrivial.
            const int k = std::max(1, m - 2) + static_cast<int>(rng.next_below(4));
            const ThetaOperator op = ThetaOperator::build(m, k);
            const HomPoly phi = random_hompoly(rng, k + m - 2);
            const auto outcome = op.solve_in_image(phi);
            const CxHomPoly pre{outcome.preimage_q1, outcome.preimage_q2};
            if (!expect(op.apply(pre) == outcome.projection, detail,
                        "preimage does not reproduce the projection"))
                return false;
            const Echelon ech = Echelon::compute(op.matrix());
            for (const auto& kv : ech.kernel_basis()) {
                const RatVec gd_pre = mat_vec(op.gram_domain(), cx_to_vec(pre));
                if (!expect(is_zero(dot(kv, gd_pre)), detail,
                            "preimage not orthogonal to the kernel"))
                    return false;
            }
        }
        return true;
    });

    suite.check("theta.frozen_solves", [](std::string& detail) {
        const ThetaOperator op = ThetaOperator::build(5, 1);
        const auto missed = op.solve_in_image(r2_power(2));
        if (!expect(!missed.in_image, detail, "(x^2+y^2)^2 misreported in image")) return false;
        const auto hit = op.solve_in_image(expand_re_im_zm(4).first);
        if (!expect(hit.in_image, detail, "Re z^4 not in image")) return false;
        if (!expect(hit.preimage_q1 == HomPoly::monomial(1, 0, rat(1, 50)) &&
                        hit.preimage_q2 == HomPoly::monomial(1, 1, rat(1, 50)),
                    detail, "preimage of Re z^4 is not (x/50, y/50)"))
            return false;
        const auto zero = op.solve_in_image(HomPoly(4));
        if (!expect(zero.in_image && zero.preimage_q1.is_zero() && zero.preimage_q2.is_zero() &&
                        zero.residual.is_zero(),
                    detail, "zero right-hand side"))
            return false;
        return true;
    });

    suite.check("jetflow.zero_tail_stays_flat", [](std::string& detail) {
        const Jet f = make_jet(6, {}, kExactOrder);
        const RunResult r = run(f, 5);
        if (!expect(r.metric == StarJet::assemble(6, {}, StarJet::flat(6).entry(0, 1),
                                                  StarJet::flat(6).entry(1, 0), {}, 5),
                    detail, "star jet moved off G0"))
            return false;
        for (const auto& record : r.steps)
            if (!expect(record.phi.is_zero() && record.g11.is_zero() && record.g12.is_zero() &&
                            record.g22.is_zero(),
                        detail, "nonzero step on the zero-tail jet"))
                return false;
        if (!expect(r.report.verdict == ObstructionReport::Verdict::equivalent, detail,
                    "zero tail not equivalent"))
            return false;
        return true;
    });

    suite.check("jetflow.witness_jet_obstruction", [](std::string& detail) {
        for (int m = 5; m <= 8; ++m) {
            const Rational c = rat(3, 2);
            const Jet f = make_fstar(m, c);
            const RunResult r = run(f, m - 4);
            const HomPoly expected_phi =
                -(c * Rational(4 * (m - 2) * (m - 2)) * r2_power(m - 3));
            if (!expect(r.report.verdict == ObstructionReport::Verdict::not_equivalent &&
                            r.report.first_failure && *r.report.first_failure == m - 4,
                        detail, "witness jet verdict wrong at m=" + std::to_string(m)))
                return false;
            if (!expect(r.steps.back().phi == expected_phi, detail,
                        "phi_{m-4} value wrong at m=" + std::to_string(m)))
                return false;
            if (!expect(r.report.residuals.back() == expected_phi, detail,
                        "residual not equal to phi under the circle pairing"))
                return false;
            if (!expect(!r.assertions[m - 5], detail, "assertion unexpectedly true"))
                return false;
        }
        return true;
    });

    suite.check("jetflow.single_tail_term_rhs", [](std::string& detail) {
        Rng rng(17);
        for (int m = 5; m <= 8; ++m)
            for (int n = m + 1; n <= 2 * m - 4; ++n) {
                GradedPoly tail;
                HomPoly term = random_hompoly(rng, n);
                if (term.is_zero()) term = HomPoly::monomial(n, 0, 1);
                tail.set(term);
                const Jet f = make_jet(m, tail, n);
                const RunResult r = run(f, n - m);
                for (int k = 1; k < n - m; ++k)
                    if (!expect(r.steps[k - 1].phi.is_zero(), detail,
                                "phi_k nonzero below the tail term"))
                        return false;
                if (!expect(r.steps.back().phi == -laplace_flat(term), detail,
                            "phi_{N-m} != -laplacian of the tail term"))
                    return false;
            }
        return true;
    });

    suite.check("jetflow.equivalent_continuation", [](std::string& detail) {
        Rng rng(18);
        for (int m = 5; m <= 8; ++m) {
            const int s = s_of_m(m);
            const int order = m + s;  // run horizon K = s below
            GradedPoly tail;
            for (int n = s + 1; n <= order; ++n) tail.add(random_hompoly(rng, n));
            const Jet f = make_jet(m, tail, order);
            const RunResult r = run(f, s);
            if (!expect(r.report.verdict == ObstructionReport::Verdict::equivalent, detail,
                        "deep-tail jet not equivalent at m=" + std::to_string(m)))
                return false;
            for (int k = 1; k <= s; ++k) {
                if (!expect(r.assertions[k - 1], detail,
                            "assertion A_k failed at k=" + std::to_string(k)))
                    return false;
                const auto& record = r.steps[k - 1];
                if (!expect(record.phi.is_zero() || record.phi.degree() == k + m - 2, detail,
                            "phi degree bookkeeping"))
                    return false;
                if (!expect(record.outcome.in_image || k <= m - 4, detail,
                            "unsolvable step outside S"))
                    return false;
                if (!expect(r.metric.trace_component(k).is_zero(), detail, "trace nonzero"))
                    return false;
                if (!expect(r.metric.det_component(k).is_zero(), detail, "det nonzero"))
                    return false;
            }
        }
        return true;
    });

    suite.check("jetflow.verdict_pairing_invariance", [](std::string& detail) {
        Rng rng(19);
        for (int m = 5; m <= 7; ++m) {
            for (int trial = 0; trial < 3; ++trial) {
                GradedPoly h = random_tail(m, rng.next_u64());
                if (trial == 0) h = make_fstar(m, rat(1)).tail;
                const Jet f = make_jet(m, h, 2 * m - 4);
                const RunResult circle = run(f, m - 4, PairingKind::circle);
                const RunResult coeff = run(f, m - 4, PairingKind::coefficient);
                for (std::size_t i = 0; i < circle.report.residuals.size(); ++i)
                    if (!expect(circle.report.residuals[i].is_zero() ==
                                    coeff.report.residuals[i].is_zero(),
                                detail, "membership verdict depends on the pairing"))
                        return false;
                if (!expect(circle.report.verdict == coeff.report.verdict, detail,
                            "verdict depends on the pairing"))
                    return false;
            }
        }
        return true;
    });

    suite.check("jetflow.small_m_vacuous_verdict", [](std::string& detail) {
        Rng rng(20);
        for (int m = 2; m <= 4; ++m) {
            GradedPoly tail;
            for (int n = m + 1; n <= m + 3; ++n) tail.add(random_hompoly(rng, n));
            const Jet f = make_jet(m, tail, m + 3);
            const RunResult r = run(f, 3);
            if (!expect(r.report.covered_S.empty() &&
                            r.report.verdict == ObstructionReport::Verdict::equivalent &&
                            r.report.covers_all_of_S,
                        detail, "S not vacuous for m=" + std::to_string(m)))
                return false;
        }
        return true;
    });

    suite.check("jetflow.short_jet_errors", [](std::string& detail) {
        const Jet f = make_fstar(5, rat(1));
        try {
            run(f, 2);
            return expect(false, detail, "run accepted an over-long horizon");
        } catch (const JetTooShort& e) {
            if (!expect(e.required_order == 7, detail, "wrong required order")) return false;
        }
        try {
            make_fstar(4, rat(1));
            return expect(false, detail, "make_fstar accepted m=4");
        } catch (const std::domain_error&) {
        }
        try {
            make_fstar(5, rat(0));
            return expect(false, detail, "make_fstar accepted C=0");
        } catch (const std::domain_error&) {
        }
        return true;
    });

    suite.check("geometry.star_metric_dictionary", [](std::string& detail) {
        const StarJet flat = star_from_metric(identity_metric(), 5, 0);
        if (!expect(flat == StarJet::flat(5), detail, "identity metric is not G0")) return false;
        MetricJet g = identity_metric();
        g.g12.add(HomPoly::monomial(1, 0, 1));  // g12 = x
        const StarJet t = star_from_metric(g, 5, 1);
        if (!expect(t.entry(0, 0).component(1) == HomPoly::monomial(1, 0, -1) &&
                        t.entry(1, 1).component(1) == HomPoly::monomial(1, 0, 1) &&
                        t.entry(0, 1).component(1).is_zero() &&
                        t.entry(1, 0).component(1).is_zero(),
                    detail, "degree-1 star template wrong"))
            return false;
        Rng rng(21);
        MetricJet gr = identity_metric();
        for (int n = 1; n <= 4; ++n) {
            gr.g11.add(random_hompoly(rng, n));
            gr.g12.add(random_hompoly(rng, n));
            gr.g22.add(random_hompoly(rng, n));
        }
        const StarJet tr = star_from_metric(gr, 6, 4);
        const MetricJet back = metric_from_star(tr);
        if (!expect(back.g11 == gp_truncate(gr.g11, 4) && back.g12 == gp_truncate(gr.g12, 4) &&
                        back.g22 == gp_truncate(gr.g22, 4),
                    detail, "round trip failed"))
            return false;
        StarJet bad = StarJet::flat(5);
        bad.add_step(HomPoly(1), HomPoly::monomial(1, 0, 1), HomPoly(1));
        // Force a trace violation by assembling entries directly.
        const StarJet traced =
            StarJet::assemble(5, gp_from({HomPoly::monomial(1, 0, 1)}), bad.entry(0, 1),
                              bad.entry(1, 0), {}, 1);
        try {
            metric_from_star(traced);
            return expect(false, detail, "nonzero trace accepted");
        } catch (const std::domain_error&) {
        }
        return true;
    });

    suite.check("geometry.graded_laplacian_consistency", [](std::string& detail) {
        Rng rng(22);
        for (int m = 5; m <= 7; ++m) {
            MetricJet g = identity_metric();
            for (int n = 1; n <= 4; ++n) {
                g.g11.add(random_hompoly(rng, n));
                g.g12.add(random_hompoly(rng, n));
                g.g22.add(random_hompoly(rng, n));
            }
            GradedPoly tail;
            for (int n = m + 1; n <= m + 3; ++n) tail.add(random_hompoly(rng, n));
            const Jet f = make_jet(m, tail, m + 3);
            const StarJet t = star_from_metric(g, m, 4);
            const GradedPoly lap = laplacian_graded(metric_from_star(t), f, m + 4);
            const GradedPoly func = jet_function(f);
            for (int n = 0; n <= m + 4; ++n)
                if (!expect(lap.component(n) == star_residual_component(t, func, n), detail,
                            "graded laplacian disagrees with d(T df) at degree " +
                                std::to_string(n)))
                    return false;
            if (!expect(lap.component(m - 2).is_zero(), detail,
                        "[lap]_{m-2} nonzero despite the flat base"))
                return false;
            for (int n = 0; n < m - 2; ++n)
                if (!expect(lap.component(n).is_zero(), detail, "low-degree component nonzero"))
                    return false;
        }
        return true;
    });

    suite.check("geometry.identity_metric_examples", [](std::string& detail) {
        const Jet fstar = make_fstar(5, rat(1));
        const GradedPoly lap = laplacian_graded(identity_metric(), fstar, 6);
        if (!expect(lap.component(4) == Rational(36) * r2_power(2), detail,
                    "laplacian of the witness jet"))
            return false;
        const Jet lead = make_jet(7, {}, kExactOrder);
        if (!expect(laplacian_graded(identity_metric(), lead, 10).is_zero(), detail,
                    "flat laplacian of Re z^m nonzero"))
            return false;
        return true;
    });

    suite.check("geometry.residual_decay_slopes", [](std::string& detail) {
        const auto radii = default_probe_radii();
        const auto angles = default_probe_angles();
        // Witness jet against the flat star: residual is exactly 36(x^2+y^2)^2.
        const Jet fstar = make_fstar(5, rat(1));
        const ResidualProbe flat_probe =
            residual_decay(StarJet::flat(5), fstar, radii, angles);
        if (!expect(std::fabs(flat_probe.fitted_slope - 4.0) < 0.05, detail,
                    "flat-star witness slope not ~4"))
            return false;
        Rng rng(23);
        const int m = 5, horizon = 2;
        GradedPoly tail;
        for (int n = s_of_m(m) + 1; n <= m + horizon; ++n) tail.add(random_hompoly(rng, n));
        const Jet f = make_jet(m, tail, m + horizon);
        const RunResult r = run(f, horizon);
        const ResidualProbe probe = residual_decay(r.metric, f, radii, angles);
        if (!expect(probe.fitted_slope >= horizon + m - 1 - 0.2, detail,
                    "decay slope below the vanishing order"))
            return false;
        const Jet exact = make_jet(5, {}, kExactOrder);
        const ResidualProbe zero_probe = residual_decay(StarJet::flat(5), exact, radii, angles);
        if (!expect(std::isinf(zero_probe.fitted_slope), detail, "zero residual sentinel"))
            return false;
        return true;
    });

    suite.check("analysis.jacobian_block_structure", [](std::string& detail) {
        for (int m = 5; m <= 7; ++m) {
            const ThetaContext ctx(m, m - 4);
            for (int trial = 0; trial < 2; ++trial) {
                const GradedPoly h = trial == 0 ? GradedPoly{} : random_tail(m, 100 + m);
                const PhiJacobian jac = phi_jacobian(m, h, ctx);
                for (int k = 1; k <= m - 4; ++k) {
                    const Mat expected_diag = laplace_matrix(m + k);
                    Mat neg = jac.block(k, k);
                    if (!expect(neg + expected_diag == Mat(neg.rows(), neg.cols()), detail,
                                "diagonal block is not -laplacian"))
                        return false;
                    for (int l = k + 1; l <= m - 4; ++l)
                        if (!expect(jac.block(k, l).is_zero(), detail,
                                    "block (k,l) with l > k nonzero"))
                            return false;
                }
            }
        }
        return true;
    });

    suite.check("analysis.submersion", [](std::string& detail) {
        for (int m = 5; m <= 7; ++m) {
            const ThetaContext ctx(m, m - 4);
            for (int trial = 0; trial < 4; ++trial) {
                const GradedPoly h =
                    trial == 0 ? GradedPoly{} : random_tail(m, 200 + 10 * m + trial);
                const PhiJacobian jac = phi_jacobian(m, h, ctx);
                if (!expect(Echelon::compute(jac.matrix).rank() == phi_target_dim(m), detail,
                            "jacobian rank below full at m=" + std::to_string(m)))
                    return false;
            }
        }
        return true;
    });

    suite.check("analysis.codim_identities", [](std::string& detail) {
        for (int m = 5; m <= 20; ++m)
            if (!expect(codim(m) == (m - 2) * (m - 3) - 2, detail, "codim closed form"))
                return false;
        if (!expect(codim(5) == 4 && codim(6) == 10 && codim(7) == 18, detail,
                    "codim frozen values"))
            return false;
        return true;
    });

    suite.check("analysis.composed_derivative_dimensions", [](std::string& detail) {
        for (int m = 5; m <= 7; ++m) {
            if (!expect(adjoint_composed_kernel_dim(m) == tail_space_dim(m) - codim(m), detail,
                        "adjoint-composed kernel dimension"))
                return false;
            int expected = 0;
            for (int k = 1; k <= m - 4; ++k) expected += m - 3 - k;
            if (!expect(residual_composed_rank(m) == expected, detail,
                        "residual-composed rank"))
                return false;
        }
        return true;
    });

    suite.check("analysis.phi_examples", [](std::string& detail) {
        if (!expect(phi_of_h(5, GradedPoly{})[0].is_zero(), detail, "phi(0) != 0")) return false;
        GradedPoly h;
        h.set(rat(3, 2) * r2_power(3));
        const auto phis = phi_of_h(5, h);
        if (!expect(phis.size() == 1 && phis[0] == -(rat(3, 2) * Rational(36) * r2_power(2)),
                    detail, "phi of the witness tail"))
            return false;
        return true;
    });

    suite.check("jetdoc.roundtrip_and_errors", [](std::string& detail) {
        Rng rng(24);
        for (int trial = 0; trial < 5; ++trial) {
            const int m = 5 + static_cast<int>(rng.next_below(3));
            const Jet f = make_jet(m, random_tail(m, rng.next_u64()), 2 * m - 4);
            const Jet back = parse_jet_document(jet_to_json(f));
            if (!expect(back.m == f.m && back.tail == f.tail && back.order == f.order, detail,
                        "round trip lost information"))
                return false;
        }
        const auto expect_parse_error = [&detail](const nlohmann::json& doc,
                                                  const std::string& label) {
            try {
                parse_jet_document(doc);
                return expect(false, detail, label + " accepted");
            } catch (const ParseError&) {
                return true;
            }
        };
        using nlohmann::json;
        if (!expect_parse_error(json{{"m", 5},
                                     {"terms", json::array({json{{"i", 0}, {"j", 0},
                                                                 {"c", "1/1"}}})}},
                                "degree-0 term"))
            return false;
        if (!expect_parse_error(
                json{{"m", 5},
                     {"terms", json::array({json{{"i", 6}, {"j", 0}, {"c", "1/1"}},
                                            json{{"i", 6}, {"j", 0}, {"c", "2/1"}}})}},
                "duplicate monomial"))
            return false;
        if (!expect_parse_error(json{{"m", 5},
                                     {"terms", json::array({json{{"i", 6}, {"j", 0},
                                                                 {"c", "1.5"}}})}},
                                "float coefficient"))
            return false;
        const Jet empty = parse_jet_document(json{{"m", 7}});
        if (!expect(empty.tail.is_zero() && empty.order == kExactOrder, detail,
                    "empty jet document"))
            return false;
        return true;
    });

    return suite.results;
}

}  // namespace harmjet
