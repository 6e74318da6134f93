#include "harmjet/theta.hpp"

#include <stdexcept>

#include "harmjet/pairing.hpp"

namespace harmjet {

RatVec hompoly_to_vec(const HomPoly& p) { return RatVec(p.coeffs().begin(), p.coeffs().end()); }

HomPoly vec_to_hompoly(int degree, std::span<const Rational> v) {
    if (static_cast<int>(v.size()) != degree + 1)
        throw std::domain_error("coordinate length does not match degree");
    HomPoly p(degree);
    for (int j = 0; j <= degree; ++j) p.set_coeff(j, v[j]);
    return p;
}

RatVec cx_to_vec(const CxHomPoly& q) {
    RatVec v = hompoly_to_vec(q.re());
    const RatVec w = hompoly_to_vec(q.im());
    v.insert(v.end(), w.begin(), w.end());
    return v;
}

CxHomPoly vec_to_cx(int degree, std::span<const Rational> v) {
    const int n = degree + 1;
    if (static_cast<int>(v.size()) != 2 * n)
        throw std::domain_error("coordinate length does not match complexified degree");
    return {vec_to_hompoly(degree, v.subspan(0, n)), vec_to_hompoly(degree, v.subspan(n, n))};
}

HomPoly theta_apply_real(int m, const CxHomPoly& q) {
    if (m < 2) throw std::domain_error("leading power must be at least 2");
    const HomPoly f0 = expand_re_im_zm(m).first;
    const HomPoly f0x = derive(f0, Var::x);
    const HomPoly f0y = derive(f0, Var::y);
    const HomPoly& q1 = q.re();
    const HomPoly& q2 = q.im();
    return derive(hp_mul(q1, f0x) + hp_mul(q2, f0y), Var::x) +
           derive(hp_mul(q2, f0x) - hp_mul(q1, f0y), Var::y);
}

HomPoly theta_apply_complex(int m, const CxHomPoly& q) {
    if (m < 2) throw std::domain_error("leading power must be at least 2");
    auto [re, im] = expand_re_im_zm(m - 1);
    const CxHomPoly w = cx_mul(q, CxHomPoly(std::move(re), std::move(im)));
    // 2m Re dz(w) with dz = (d/dx - i d/dy)/2.
    return Rational(m) * (derive(w.re(), Var::x) + derive(w.im(), Var::y));
}

namespace {

Mat build_matrix(int m, int k, HomPoly (*apply)(int, const CxHomPoly&)) {
    const int rows = k + m - 1;
    std::vector<RatVec> columns;
    columns.reserve(2 * (k + 1));
    for (int part = 0; part < 2; ++part)
        for (int j = 0; j <= k; ++j) {
            CxHomPoly q(k);
            (part == 0 ? q.re() : q.im()).set_coeff(j, Rational(1));
            columns.push_back(hompoly_to_vec(apply(m, q)));
        }
    return Mat::from_columns(rows, columns);
}

Mat block_diag_pair(const Mat& g) {
    Mat d(2 * g.rows(), 2 * g.cols());
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) {
            d.at(i, j) = g.at(i, j);
            d.at(g.rows() + i, g.cols() + j) = g.at(i, j);
        }
    return d;
}

}  // namespace

Mat build_theta_matrix_real(int m, int k) { return build_matrix(m, k, theta_apply_real); }
Mat build_theta_matrix_complex(int m, int k) { return build_matrix(m, k, theta_apply_complex); }

ThetaOperator ThetaOperator::build(int m, int k, PairingKind pairing,
                                   const EliminationOptions& opts) {
    if (m < 2 || k < 1) throw std::domain_error("operator requires m >= 2 and k >= 1");
    ThetaOperator op;
    op.m_ = m;
    op.k_ = k;
    op.matrix_ = build_theta_matrix_real(m, k);
    if (op.matrix_ != build_theta_matrix_complex(m, k))
        throw std::logic_error("real and complex operator constructions disagree");
    if (pairing == PairingKind::circle) {
        op.gram_target_ = circle_gram(k + m - 2);
        op.gram_domain_ = block_diag_pair(circle_gram(k));
    } else {
        op.gram_target_ = Mat::identity(k + m - 1);
        op.gram_domain_ = Mat::identity(2 * (k + 1));
    }
    op.echelon_ = Echelon::compute(op.matrix_, opts);
    const int expected_rank = std::min(2 * (k + 1), k + m - 1);
    if (op.rank() != expected_rank) throw std::logic_error("operator rank is not maximal");

    std::vector<RatVec> image_cols;
    for (int c : op.echelon_.pivot_cols()) image_cols.push_back(op.matrix_.column(c));
    op.image_basis_ = Mat::from_columns(op.target_dim(), image_cols);
    op.image_btg_ = op.image_basis_.transposed() * op.gram_target_;
    op.image_normal_ = Echelon::compute(op.image_btg_ * op.image_basis_, opts);

    const auto kernel = op.echelon_.kernel_basis();
    op.kernel_basis_ = Mat::from_columns(op.domain_dim(), kernel);
    if (!kernel.empty()) {
        op.kernel_ktg_ = op.kernel_basis_.transposed() * op.gram_domain_;
        op.kernel_normal_ = Echelon::compute(op.kernel_ktg_ * op.kernel_basis_, opts);
    }
    op.gram_domain_ech_ = Echelon::compute(op.gram_domain_, opts);
    return op;
}

int ThetaOperator::M_k() const { return std::min(k_, (k_ + m_ - 2) / 2); }

HomPoly ThetaOperator::apply(const CxHomPoly& q) const {
    if (q.degree() != k_) throw std::domain_error("operator argument degree mismatch");
    return vec_to_hompoly(target_degree(), mat_vec(matrix_, cx_to_vec(q)));
}

RatVec ThetaOperator::project_vec(std::span<const Rational> phi) const {
    const auto c = image_normal_.solve(mat_vec(image_btg_, phi));
    if (!c) throw std::logic_error("projection normal system inconsistent");
    return mat_vec(image_basis_, *c);
}

HomPoly ThetaOperator::project(const HomPoly& phi) const {
    if (phi.degree() != target_degree()) throw std::domain_error("projection degree mismatch");
    return vec_to_hompoly(target_degree(), project_vec(hompoly_to_vec(phi)));
}

SolveOutcome ThetaOperator::solve_in_image(const HomPoly& phi) const {
    if (phi.degree() != target_degree())
        throw std::domain_error("right-hand side degree mismatch");
    const RatVec v = hompoly_to_vec(phi);
    const RatVec proj = project_vec(v);

    SolveOutcome out(k_, target_degree());
    out.projection = vec_to_hompoly(target_degree(), proj);
    out.residual = phi - out.projection;
    out.in_image = out.residual.is_zero();

    auto x = echelon_.solve(proj);
    if (!x) throw std::logic_error("projection fell outside the image");
    if (kernel_basis_.cols() > 0) {
        const auto alpha = kernel_normal_.solve(mat_vec(kernel_ktg_, *x));
        if (!alpha) throw std::logic_error("kernel normal system inconsistent");
        const RatVec shift = mat_vec(kernel_basis_, *alpha);
        for (std::size_t i = 0; i < x->size(); ++i) (*x)[i] -= shift[i];
    }
    const CxHomPoly pre = vec_to_cx(k_, *x);
    out.preimage_q1 = pre.re();
    out.preimage_q2 = pre.im();
    return out;
}

CxHomPoly ThetaOperator::adjoint_apply(const HomPoly& phi) const {
    if (phi.degree() != target_degree()) throw std::domain_error("adjoint argument degree mismatch");
    const RatVec rhs = mat_vec(matrix_.transposed(), mat_vec(gram_target_, hompoly_to_vec(phi)));
    const auto y = gram_domain_ech_.solve(rhs);
    if (!y) throw std::logic_error("domain Gram matrix not invertible");
    return vec_to_cx(k_, *y);
}

Mat ThetaOperator::adjoint_matrix() const {
    const Mat atg = matrix_.transposed() * gram_target_;
    Mat adj(domain_dim(), target_dim());
    for (int j = 0; j < target_dim(); ++j) {
        const auto y = gram_domain_ech_.solve(atg.column(j));
        if (!y) throw std::logic_error("domain Gram matrix not invertible");
        for (int i = 0; i < domain_dim(); ++i) adj.at(i, j) = (*y)[i];
    }
    return adj;
}

Mat ThetaOperator::projector_matrix() const {
    Mat p(target_dim(), target_dim());
    RatVec e(target_dim());
    for (int j = 0; j < target_dim(); ++j) {
        e[j] = 1;
        const RatVec col = project_vec(e);
        for (int i = 0; i < target_dim(); ++i) p.at(i, j) = col[i];
        e[j] = 0;
    }
    return p;
}

RankReport rank_report(const ThetaOperator& op) {
    RankReport r;
    r.rank = op.rank();
    r.injective = r.rank == op.domain_dim();
    r.surjective = r.rank == op.target_dim();
    r.M_k = op.M_k();
    return r;
}

}  // namespace harmjet
