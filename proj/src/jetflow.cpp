#include "harmjet/jetflow.hpp"

namespace harmjet {

Jet make_jet(int m, GradedPoly tail, int order) {
    if (m < 2) throw std::domain_error("leading power must be at least 2");
    if (order < m) throw std::domain_error("jet order below the leading degree");
    if (!tail.is_zero()) {
        if (tail.min_degree() <= m) throw std::domain_error("tail term of degree <= m");
        if (tail.max_degree() > order) throw std::domain_error("tail term above the jet order");
    }
    return Jet{m, std::move(tail), order};
}

Jet make_fstar(int m, const Rational& c) {
    if (m < 5) throw std::domain_error("witness jet requires m >= 5");
    if (is_zero(c)) throw std::domain_error("witness jet requires C != 0");
    const HomPoly r2 = HomPoly::monomial(2, 0, 1) + HomPoly::monomial(2, 2, 1);
    GradedPoly tail;
    tail.set(c * hp_pow(r2, m - 2));
    return make_jet(m, std::move(tail), 2 * m - 4);
}

int s_of_m(int m) {
    if (m < 2) throw std::domain_error("s(m) requires m >= 2");
    return std::max(m, 2 * m - 4);
}

GradedPoly jet_function(const Jet& f) {
    GradedPoly g = f.tail;
    g.add(expand_re_im_zm(f.m).first);
    return g;
}

bool jet_order_at_least(const Jet& f, int n) { return f.order >= n; }

StarJet StarJet::flat(int m) {
    if (m < 2) throw std::domain_error("leading power must be at least 2");
    StarJet t;
    t.m_ = m;
    t.e_[0][1].set(HomPoly::constant(rat(-1)));
    t.e_[1][0].set(HomPoly::constant(rat(1)));
    return t;
}

StarJet StarJet::assemble(int m, GradedPoly t11, GradedPoly t12, GradedPoly t21,
                          GradedPoly t22, int max_degree) {
    StarJet t = flat(m);
    if (max_degree < 0) throw std::domain_error("negative star jet degree");
    if (!t11.component(0).is_zero() || !t22.component(0).is_zero() ||
        t12.component(0) != HomPoly::constant(rat(-1)) ||
        t21.component(0) != HomPoly::constant(rat(1)))
        throw std::domain_error("degree-0 part of a star jet must be the flat star");
    t.e_[0][0] = std::move(t11);
    t.e_[0][1] = std::move(t12);
    t.e_[1][0] = std::move(t21);
    t.e_[1][1] = std::move(t22);
    t.max_degree_ = max_degree;
    return t;
}

HomPoly StarJet::det_component(int n) const {
    return gp_product_component(e_[0][0], e_[1][1], n) -
           gp_product_component(e_[0][1], e_[1][0], n);
}

HomPoly StarJet::trace_component(int n) const {
    return e_[0][0].component(n) + e_[1][1].component(n);
}

void StarJet::add_step(const HomPoly& g11, const HomPoly& g12, const HomPoly& g22) {
    const int k = max_degree_ + 1;
    if (g11.degree() != k || g12.degree() != k || g22.degree() != k)
        throw std::domain_error("step polynomials must have the next degree");
    e_[0][0].add(-g12);
    e_[0][1].add(-g22);
    e_[1][0].add(g11);
    e_[1][1].add(g12);
    max_degree_ = k;
}

namespace {

HomPoly dtdf_component(const StarJet& t, const GradedPoly& fx, const GradedPoly& fy, int n) {
    const HomPoly a = gp_product_component(t.entry(1, 0), fx, n + 1) +
                      gp_product_component(t.entry(1, 1), fy, n + 1);
    const HomPoly b = gp_product_component(t.entry(0, 0), fx, n + 1) +
                      gp_product_component(t.entry(0, 1), fy, n + 1);
    return derive(a, Var::x) - derive(b, Var::y);
}

}  // namespace

HomPoly star_residual_component(const StarJet& t, const GradedPoly& f, int n) {
    return dtdf_component(t, derive(f, Var::x), derive(f, Var::y), n);
}

ThetaContext::ThetaContext(int m, int kmax, PairingKind pairing, const EliminationOptions& opts)
    : m_(m) {
    ops_.reserve(kmax);
    for (int k = 1; k <= kmax; ++k) ops_.push_back(ThetaOperator::build(m, k, pairing, opts));
}

const ThetaOperator& ThetaContext::op(int k) const {
    if (k < 1 || k > kmax()) throw std::domain_error("operator degree outside the context");
    return ops_[k - 1];
}

HomPoly phi_next(const StarJet& t_prev, const Jet& f, int k) {
    if (k < 1) throw std::domain_error("step index must be positive");
    if (t_prev.max_degree() != k - 1)
        throw std::domain_error("star jet degree does not match the step index");
    if (!jet_order_at_least(f, k + f.m)) throw JetTooShort(k + f.m);
    const int m = f.m;
    const HomPoly lead = -star_residual_component(t_prev, jet_function(f), k + m - 2);
    const HomPoly det_k = t_prev.det_component(k);
    if (det_k.is_zero()) return lead;
    const HomPoly f0y = derive(expand_re_im_zm(m).first, Var::y);
    return lead + derive(hp_mul(det_k, f0y), Var::y);
}

StepRecord step(StarJet& t, const Jet& f, int k, const ThetaOperator& op) {
    if (op.m() != f.m || op.k() != k) throw std::domain_error("operator does not match the step");
    HomPoly phi = phi_next(t, f, k);
    SolveOutcome outcome = op.solve_in_image(phi);
    const HomPoly g11 = outcome.preimage_q1;
    const HomPoly g12 = outcome.preimage_q2;
    const HomPoly g22 = -t.det_component(k) - g11;
    t.add_step(g11, g12, g22);
    return StepRecord{k, std::move(phi), std::move(outcome), g11, g12, g22};
}

RunResult run(const Jet& f, int big_k, const ThetaContext& ctx) {
    if (big_k < 0) throw std::domain_error("run horizon must be nonnegative");
    if (ctx.m() != f.m) throw std::domain_error("context does not match the jet");
    if (big_k > ctx.kmax()) throw std::domain_error("run horizon beyond the context");
    if (!jet_order_at_least(f, big_k + f.m)) throw JetTooShort(big_k + f.m);

    RunResult result{StarJet::flat(f.m), {}, {}, {}};
    result.report.m = f.m;
    const int s_max = f.m - 4;  // S is empty for m <= 4
    for (int k = 1; k <= big_k; ++k) {
        StepRecord record = step(result.metric, f, k, ctx.op(k));
        if (k <= s_max) {
            result.report.covered_S.push_back(k);
            result.report.residuals.push_back(record.outcome.residual);
            if (!record.outcome.residual.is_zero() && !result.report.first_failure)
                result.report.first_failure = k;
        }
        result.steps.push_back(std::move(record));
        result.assertions.push_back(assert_Ak(result.metric, f, k));
    }
    result.report.covers_all_of_S = big_k >= s_max;
    result.report.verdict = result.report.first_failure
                                ? ObstructionReport::Verdict::not_equivalent
                                : ObstructionReport::Verdict::equivalent;
    return result;
}

RunResult run(const Jet& f, int big_k, PairingKind pairing) {
    return run(f, big_k, ThetaContext(f.m, big_k, pairing));
}

bool assert_Ak(const StarJet& t, const Jet& f, int k) {
    // Components of t above its max degree are zero by representation, so
    // the check is meaningful for any k the jet order supports.
    if (k < 1) throw std::domain_error("assertion index must be positive");
    if (!jet_order_at_least(f, k + f.m)) throw JetTooShort(k + f.m);
    const GradedPoly func = jet_function(f);
    const GradedPoly fx = derive(func, Var::x);
    const GradedPoly fy = derive(func, Var::y);
    for (int n = 0; n <= k + f.m - 2; ++n)
        if (!dtdf_component(t, fx, fy, n).is_zero()) return false;
    for (int n = 1; n <= k; ++n)
        if (!t.det_component(n).is_zero()) return false;
    return true;
}

}  // namespace harmjet
