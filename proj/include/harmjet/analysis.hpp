#pragma once

#include "harmjet/jetflow.hpp"

namespace harmjet {

// dim R_{m+1 <= 2m-4}[x,y], the space of problem tails h.
int tail_space_dim(int m);

// dim of the stacked target space, sum over k in S of (m+k-1).
int phi_target_dim(int m);

// The sequence (phi_1, ..., phi_{m-4}) of the inductive recursion applied to
// the jet with tail h (projected continuation in failing branches). Requires
// m >= 5 and h supported on degrees m+1 .. 2m-4.
std::vector<HomPoly> phi_of_h(int m, const GradedPoly& h, const ThetaContext& ctx);
std::vector<HomPoly> phi_of_h(int m, const GradedPoly& h);

// Exact Jacobian of h -> phi(h) with respect to monomial coordinates, block
// structured by the degree splittings of domain and target. Columns are
// recovered by exact Lagrange interpolation of t -> phi(h + t e) at integer
// nodes, never by floating-point differences.
struct PhiJacobian {
    int m = 5;
    GradedPoly base_point;
    Mat matrix;
    std::vector<int> row_offsets;  // m-3 entries: target block k starts at row_offsets[k-1]
    std::vector<int> col_offsets;  // m-3 entries: domain block l starts at col_offsets[l-1]

    Mat block(int k, int l) const;
};

PhiJacobian phi_jacobian(int m, const GradedPoly& h, const ThetaContext& ctx,
                         bool parallel = true);
PhiJacobian phi_jacobian(int m, const GradedPoly& h);

// True iff the Jacobian has full row rank phi_target_dim(m).
bool submersion_check(int m, const GradedPoly& h);

// (m-2)(m-3)-2, cross-checked against the dimension sum over S of 2(k+1).
// Requires m >= 5.
int codim(int m);

// Kernel dimension at h = 0 of the derivative of the adjoint-composed map
// h -> (Theta_k^* phi_k(h))_k; equals tail_space_dim(m) - codim(m).
int adjoint_composed_kernel_dim(int m);

// Rank at h = 0 of the derivative of the cokernel-residual composed map
// h -> (phi_k(h) - P_k phi_k(h))_k, i.e. sum over S of (m-3-k).
int residual_composed_rank(int m);

// Deterministic random tail supported on degrees m+1 .. 2m-4.
GradedPoly random_tail(int m, std::uint64_t seed);

}  // namespace harmjet
