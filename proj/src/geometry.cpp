#include "harmjet/geometry.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace harmjet {

MetricJet identity_metric() {
    MetricJet g;
    g.g11.set(HomPoly::constant(rat(1)));
    g.g22.set(HomPoly::constant(rat(1)));
    return g;
}

namespace {

void check_identity_base(const MetricJet& g) {
    if (g.g11.component(0) != HomPoly::constant(rat(1)) ||
        g.g22.component(0) != HomPoly::constant(rat(1)) || !g.g12.component(0).is_zero())
        throw std::domain_error("metric jet base point must be the identity");
}

}  // namespace

StarJet star_from_metric(const MetricJet& g, int m, int max_degree) {
    check_identity_base(g);
    return StarJet::assemble(m, gp_truncate(-g.g12, max_degree),
                             gp_truncate(-g.g22, max_degree),
                             gp_truncate(g.g11, max_degree),
                             gp_truncate(g.g12, max_degree), max_degree);
}

MetricJet metric_from_star(const StarJet& t) {
    for (int n = 1; n <= t.max_degree(); ++n)
        if (!t.trace_component(n).is_zero())
            throw std::domain_error("star jet with nonzero trace has no metric form");
    MetricJet g;
    g.g11 = t.entry(1, 0);
    g.g12 = t.entry(1, 1);
    g.g22 = -t.entry(0, 1);
    check_identity_base(g);
    return g;
}

GradedPoly laplacian_graded(const MetricJet& g, const Jet& f, int max_degree) {
    check_identity_base(g);
    const GradedPoly func = jet_function(f);
    const GradedPoly fx = derive(func, Var::x);
    const GradedPoly fy = derive(func, Var::y);
    const GradedPoly u = gp_mul_truncated(g.g12, fx, max_degree + 1) +
                         gp_mul_truncated(g.g22, fy, max_degree + 1);
    const GradedPoly v = gp_mul_truncated(g.g11, fx, max_degree + 1) +
                         gp_mul_truncated(g.g12, fy, max_degree + 1);
    return gp_truncate(derive(u, Var::y) + derive(v, Var::x), max_degree);
}

GradedPoly star_residual(const StarJet& t, const Jet& f) {
    const GradedPoly func = jet_function(f);
    const GradedPoly fx = derive(func, Var::x);
    const GradedPoly fy = derive(func, Var::y);
    const int limit = t.max_degree() + std::max(func.max_degree() - 1, 0) + 1;
    const GradedPoly a = gp_mul_truncated(t.entry(1, 0), fx, limit) +
                         gp_mul_truncated(t.entry(1, 1), fy, limit);
    const GradedPoly b = gp_mul_truncated(t.entry(0, 0), fx, limit) +
                         gp_mul_truncated(t.entry(0, 1), fy, limit);
    return derive(a, Var::x) - derive(b, Var::y);
}

ResidualProbe residual_decay(const StarJet& t, const Jet& f, std::span<const double> radii,
                             std::span<const double> angles, bool parallel) {
    if (radii.empty()) throw std::domain_error("residual probe needs at least one radius");
    if (radii.size() < 4) throw std::domain_error("residual probe needs at least 4 radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0 && radii[i] < 1.0))
            throw std::domain_error("probe radii must lie in (0,1)");
        if (i > 0 && !(radii[i] < radii[i - 1]))
            throw std::domain_error("probe radii must decrease strictly");
    }
    if (angles.empty()) throw std::domain_error("residual probe needs at least one angle");
    if (!jet_order_at_least(f, t.max_degree() + f.m)) throw JetTooShort(t.max_degree() + f.m);

    const GradedPoly res = star_residual(t, f);

    ResidualProbe probe;
    probe.radii.assign(radii.begin(), radii.end());
    probe.angles.assign(angles.begin(), angles.end());
    probe.values.assign(radii.size(), std::vector<double>(angles.size(), 0.0));

    const int nr = static_cast<int>(radii.size());
    const int na = static_cast<int>(angles.size());
#pragma omp parallel for collapse(2) if (parallel)
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < na; ++j)
            probe.values[i][j] = std::fabs(
                eval(res, radii[i] * std::cos(angles[j]), radii[i] * std::sin(angles[j])));

    if (res.is_zero()) {
        probe.fitted_slope = std::numeric_limits<double>::infinity();
        return probe;
    }

    // Log-log fit on the per-radius maxima; angles where the leading
    // coefficient happens to vanish would otherwise poison the fit.
    std::vector<double> xs, ys;
    for (int i = 0; i < nr; ++i) {
        double v = 0.0;
        for (int j = 0; j < na; ++j) v = std::max(v, probe.values[i][j]);
        if (v > 0.0) {
            xs.push_back(std::log(radii[i]));
            ys.push_back(std::log(v));
        }
    }
    if (xs.size() < 2) {
        probe.fitted_slope = std::numeric_limits<double>::infinity();
        return probe;
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    probe.fitted_slope = sxy / sxx;
    return probe;
}

std::vector<double> default_probe_radii() {
    std::vector<double> radii;
    for (int e = 3; e <= 10; ++e) radii.push_back(std::ldexp(1.0, -e));
    return radii;
}

std::vector<double> default_probe_angles() {
    std::vector<double> angles;
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int j = 0; j < 12; ++j) angles.push_back(two_pi * j / 12.0 + 0.1);
    return angles;
}

void write_probe_csv(std::ostream& out, const ResidualProbe& probe) {
    out << "radius,angle,abs_residual\n";
    char line[128];
    for (std::size_t i = 0; i < probe.radii.size(); ++i)
        for (std::size_t j = 0; j < probe.angles.size(); ++j) {
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", probe.radii[i],
                          probe.angles[j], probe.values[i][j]);
            out << line;
        }
}

}  // namespace harmjet
