#pragma once

#include "harmjet/hompoly.hpp"
#include "harmjet/linalg.hpp"

namespace harmjet {

// Traceless template [[-b, a], [a, b]] applied to 1-form coefficients.
struct LMatrix {
    Rational a;
    Rational b;

    std::pair<Rational, Rational> apply(const Rational& dx_coeff,
                                        const Rational& dy_coeff) const {
        return {-b * dx_coeff + a * dy_coeff, a * dx_coeff + b * dy_coeff};
    }
};

// Coordinate conventions: R_n[x,y] uses the monomial basis ordered by
// y-exponent; the domain R_k[x,y]^2 stacks the Q1 coordinates before Q2.
RatVec hompoly_to_vec(const HomPoly& p);
HomPoly vec_to_hompoly(int degree, std::span<const Rational> v);
RatVec cx_to_vec(const CxHomPoly& q);
CxHomPoly vec_to_cx(int degree, std::span<const Rational> v);

// (Q1 f0x + Q2 f0y)_x + (Q2 f0x - Q1 f0y)_y with f0 = Re(x+iy)^m: the
// operator applied through the traceless template acting on df0.
HomPoly theta_apply_real(int m, const CxHomPoly& q);

// 2m Re d/dz (Q z^{m-1}); the complex route. Agrees with the real route.
HomPoly theta_apply_complex(int m, const CxHomPoly& q);

Mat build_theta_matrix_real(int m, int k);
Mat build_theta_matrix_complex(int m, int k);

// Which auxiliary Euclidean structure backs projections and adjoints.
// circle: mean over the unit circle of the pointwise product (S^1-invariant,
// Irr^q summands mutually orthogonal). coefficient: plain dot product of
// monomial coordinates, used to confirm the membership verdict is
// pairing-independent.
enum class PairingKind { circle, coefficient };

struct RankReport {
    int rank = 0;
    bool injective = false;
    bool surjective = false;
    int M_k = 0;
};

struct SolveOutcome {
    bool in_image = false;
    HomPoly preimage_q1;  // minimum-norm preimage of the projection
    HomPoly preimage_q2;
    HomPoly projection;
    HomPoly residual;

    SolveOutcome(int k, int target_degree)
        : preimage_q1(k), preimage_q2(k), projection(target_degree), residual(target_degree) {}
};

// Exact matrix form of the degree-k operator for leading power m, with the
// scaffolding for rank, image membership, orthogonal projection and
// minimum-norm preimages. Immutable after build; safe to share across
// threads.
class ThetaOperator {
  public:
    static ThetaOperator build(int m, int k, PairingKind pairing = PairingKind::circle,
                               const EliminationOptions& opts = {});

    int m() const { return m_; }
    int k() const { return k_; }
    int domain_dim() const { return 2 * (k_ + 1); }
    int target_dim() const { return k_ + m_ - 1; }
    int target_degree() const { return k_ + m_ - 2; }
    int rank() const { return echelon_.rank(); }
    int M_k() const;

    const Mat& matrix() const { return matrix_; }
    const Mat& gram_domain() const { return gram_domain_; }
    const Mat& gram_target() const { return gram_target_; }

    HomPoly apply(const CxHomPoly& q) const;
    HomPoly project(const HomPoly& phi) const;
    SolveOutcome solve_in_image(const HomPoly& phi) const;

    // Literal adjoint G_d^{-1} A^T G_t; its vanishing means phi is
    // orthogonal to the image, not membership in it.
    CxHomPoly adjoint_apply(const HomPoly& phi) const;
    Mat adjoint_matrix() const;

    // Matrix of the orthogonal projection onto the image w.r.t. gram_target.
    Mat projector_matrix() const;

  private:
    ThetaOperator() = default;

    RatVec project_vec(std::span<const Rational> phi) const;

    int m_ = 0, k_ = 0;
    Mat matrix_;
    Mat gram_domain_, gram_target_;
    Echelon echelon_;          // of matrix_
    Mat image_basis_;          // pivot columns of matrix_
    Mat image_btg_;            // B^T G_t
    Echelon image_normal_;     // of B^T G_t B
    Mat kernel_basis_;         // columns span ker(matrix_); may be 0 wide
    Mat kernel_ktg_;           // K^T G_d
    Echelon kernel_normal_;    // of K^T G_d K
    Echelon gram_domain_ech_;  // for the adjoint solve
};

RankReport rank_report(const ThetaOperator& op);

}  // namespace harmjet
