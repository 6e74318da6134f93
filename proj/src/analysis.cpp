#include "harmjet/analysis.hpp"

#include "harmjet/rng.hpp"

namespace harmjet {

namespace {

void check_analysis_m(int m) {
    if (m < 5) throw std::domain_error("obstruction analysis requires m >= 5");
}

void check_tail_support(int m, const GradedPoly& h) {
    if (h.is_zero()) return;
    if (h.min_degree() <= m || h.max_degree() > 2 * m - 4)
        throw std::domain_error("tail must be supported on degrees m+1 .. 2m-4");
}

// Coefficient of t^1 of the Lagrange basis polynomials on nodes 0..count-1.
RatVec lagrange_linear_weights(int count) {
    RatVec weights(count);
    for (int i = 0; i < count; ++i) {
        // Expand prod_{j != i} (t - j); track only as much as needed? The
        // degree is small, expand fully.
        RatVec poly{Rational(1)};
        Rational denom(1);
        for (int j = 0; j < count; ++j) {
            if (j == i) continue;
            RatVec next(poly.size() + 1);
            for (std::size_t d = 0; d < poly.size(); ++d) {
                next[d] -= Rational(j) * poly[d];
                next[d + 1] += poly[d];
            }
            poly = std::move(next);
            denom *= Rational(i - j);
        }
        weights[i] = (count > 1 ? poly[1] : Rational(0)) / denom;
    }
    return weights;
}

RatVec stack_phi(int m, const std::vector<HomPoly>& phis) {
    RatVec v;
    v.reserve(phi_target_dim(m));
    for (const HomPoly& p : phis) {
        const auto c = p.coeffs();
        v.insert(v.end(), c.begin(), c.end());
    }
    return v;
}

}  // namespace

int tail_space_dim(int m) {
    check_analysis_m(m);
    int dim = 0;
    for (int l = 1; l <= m - 4; ++l) dim += m + l + 1;
    return dim;
}

int phi_target_dim(int m) {
    check_analysis_m(m);
    int dim = 0;
    for (int k = 1; k <= m - 4; ++k) dim += m + k - 1;
    return dim;
}

std::vector<HomPoly> phi_of_h(int m, const GradedPoly& h, const ThetaContext& ctx) {
    check_analysis_m(m);
    check_tail_support(m, h);
    const Jet f = make_jet(m, h, 2 * m - 4);
    const RunResult result = run(f, m - 4, ctx);
    std::vector<HomPoly> phis;
    phis.reserve(result.steps.size());
    for (const StepRecord& record : result.steps) phis.push_back(record.phi);
    return phis;
}

std::vector<HomPoly> phi_of_h(int m, const GradedPoly& h) {
    check_analysis_m(m);
    return phi_of_h(m, h, ThetaContext(m, m - 4));
}

Mat PhiJacobian::block(int k, int l) const {
    const int rows = static_cast<int>(row_offsets.size()) - 1;
    const int cols = static_cast<int>(col_offsets.size()) - 1;
    if (k < 1 || k > rows || l < 1 || l > cols)
        throw std::domain_error("jacobian block index out of range");
    return submatrix(matrix, row_offsets[k - 1], row_offsets[k], col_offsets[l - 1],
                     col_offsets[l]);
}

PhiJacobian phi_jacobian(int m, const GradedPoly& h, const ThetaContext& ctx, bool parallel) {
    check_analysis_m(m);
    check_tail_support(m, h);

    PhiJacobian jac;
    jac.m = m;
    jac.base_point = h;
    jac.row_offsets.assign(1, 0);
    for (int k = 1; k <= m - 4; ++k) jac.row_offsets.push_back(jac.row_offsets.back() + m + k - 1);
    jac.col_offsets.assign(1, 0);
    for (int l = 1; l <= m - 4; ++l) jac.col_offsets.push_back(jac.col_offsets.back() + m + l + 1);

    const int rows = jac.row_offsets.back();
    const int cols = jac.col_offsets.back();
    jac.matrix = Mat(rows, cols);

    // t -> phi(h + t e) has degree at most m-4 in t, so m-3 integer nodes
    // determine it; the shared weights extract the linear coefficient.
    const int nodes = m - 3;
    const RatVec weights = lagrange_linear_weights(nodes);
    const RatVec phi_at_h = stack_phi(m, phi_of_h(m, h, ctx));

    struct ColKey {
        int l;
        int y_exp;
    };
    std::vector<ColKey> keys;
    for (int l = 1; l <= m - 4; ++l)
        for (int j = 0; j <= m + l; ++j) keys.push_back({l, j});

    const int ncols = static_cast<int>(keys.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int c = 0; c < ncols; ++c) {
        const auto [l, y_exp] = keys[c];
        RatVec column(rows);
        for (int node = 0; node < nodes; ++node) {
            if (is_zero(weights[node])) continue;
            RatVec value;
            if (node == 0) {
                value = phi_at_h;
            } else {
                GradedPoly shifted = h;
                shifted.add(HomPoly::monomial(m + l, y_exp, Rational(node)));
                value = stack_phi(m, phi_of_h(m, shifted, ctx));
            }
            for (int r = 0; r < rows; ++r) column[r] += weights[node] * value[r];
        }
        for (int r = 0; r < rows; ++r) jac.matrix.at(r, c) = std::move(column[r]);
    }
    return jac;
}

PhiJacobian phi_jacobian(int m, const GradedPoly& h) {
    check_analysis_m(m);
    return phi_jacobian(m, h, ThetaContext(m, m - 4));
}

bool submersion_check(int m, const GradedPoly& h) {
    const PhiJacobian jac = phi_jacobian(m, h);
    return Echelon::compute(jac.matrix).rank() == phi_target_dim(m);
}

int codim(int m) {
    check_analysis_m(m);
    const int closed_form = (m - 2) * (m - 3) - 2;
    int dimension_sum = 0;
    for (int k = 1; k <= m - 4; ++k) dimension_sum += 2 * (k + 1);
    if (dimension_sum != closed_form)
        throw std::logic_error("codimension closed form disagrees with the dimension sum");
    return closed_form;
}

int adjoint_composed_kernel_dim(int m) {
    check_analysis_m(m);
    const ThetaContext ctx(m, m - 4);
    const PhiJacobian jac = phi_jacobian(m, GradedPoly{}, ctx);
    std::vector<Mat> blocks;
    for (int k = 1; k <= m - 4; ++k)
        blocks.push_back(ctx.op(k).adjoint_matrix() *
                         submatrix(jac.matrix, jac.row_offsets[k - 1], jac.row_offsets[k], 0,
                                   jac.matrix.cols()));
    const Mat composed = vstack(blocks);
    return tail_space_dim(m) - Echelon::compute(composed).rank();
}

int residual_composed_rank(int m) {
    check_analysis_m(m);
    const ThetaContext ctx(m, m - 4);
    const PhiJacobian jac = phi_jacobian(m, GradedPoly{}, ctx);
    std::vector<Mat> blocks;
    for (int k = 1; k <= m - 4; ++k) {
        const Mat rows = submatrix(jac.matrix, jac.row_offsets[k - 1], jac.row_offsets[k], 0,
                                   jac.matrix.cols());
        const Mat residual_projector =
            Mat::identity(ctx.op(k).target_dim()) - ctx.op(k).projector_matrix();
        blocks.push_back(residual_projector * rows);
    }
    return Echelon::compute(vstack(blocks)).rank();
}

GradedPoly random_tail(int m, std::uint64_t seed) {
    check_analysis_m(m);
    Rng rng(seed);
    GradedPoly h;
    for (int n = m + 1; n <= 2 * m - 4; ++n) {
        HomPoly p(n);
        for (int j = 0; j <= n; ++j) p.set_coeff(j, rng.next_rational());
        h.add(p);
    }
    return h;
}

}  // namespace harmjet
