#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "harmjet/graded.hpp"
#include "harmjet/theta.hpp"

namespace harmjet {

// Order of a jet that is the polynomial itself (every higher coefficient is
// known to be zero, not merely unspecified).
inline constexpr int kExactOrder = std::numeric_limits<int>::max();

struct JetTooShort : std::runtime_error {
    explicit JetTooShort(int required)
        : std::runtime_error("jet too short: order >= " + std::to_string(required) +
                             " required"),
          required_order(required) {}
    int required_order;
};

// Input jet: leading term Re(x+iy)^m is implicit, the tail lives strictly
// above degree m and at or below the order.
struct Jet {
    int m = 2;
    GradedPoly tail;
    int order = 2;
};

Jet make_jet(int m, GradedPoly tail, int order);

// Re(x+iy)^m + C(x^2+y^2)^{m-2}, the order-(2m-4) witness jet. Requires
// m >= 5 and C != 0.
Jet make_fstar(int m, const Rational& c);

// max(m, 2m-4): tail-vanishing threshold that forces the trivial verdict.
int s_of_m(int m);

// f0 + tail as one graded polynomial.
GradedPoly jet_function(const Jet& f);

bool jet_order_at_least(const Jet& f, int n);

// The accumulated Hodge-star jet T_k = G_0 + ... + G_k: a 2x2 matrix of
// graded polynomials with the flat star ((0,-1),(1,0)) at degree 0.
class StarJet {
  public:
    static StarJet flat(int m);

    // Builds from explicit entries; the degree-0 part must be the flat star.
    static StarJet assemble(int m, GradedPoly t11, GradedPoly t12, GradedPoly t21,
                            GradedPoly t22, int max_degree);

    int m() const { return m_; }
    int max_degree() const { return max_degree_; }
    const GradedPoly& entry(int i, int j) const { return e_[i][j]; }

    // Degree-n component of the determinant.
    HomPoly det_component(int n) const;
    // Degree-n component of the trace.
    HomPoly trace_component(int n) const;

    // Appends G_k built from the degree-(max_degree+1) solution triple.
    void add_step(const HomPoly& g11, const HomPoly& g12, const HomPoly& g22);

    friend bool operator==(const StarJet&, const StarJet&) = default;

  private:
    StarJet() = default;
    int m_ = 2;
    int max_degree_ = 0;
    GradedPoly e_[2][2];
};

// Degree-n component of d(T df)/dx^dy for graded f, i.e. of
// (T21 fx + T22 fy)_x - (T11 fx + T12 fy)_y.
HomPoly star_residual_component(const StarJet& t, const GradedPoly& f, int n);

struct StepRecord {
    int k;
    HomPoly phi;
    SolveOutcome outcome;
    HomPoly g11, g12, g22;
};

struct ObstructionReport {
    enum class Verdict { equivalent, not_equivalent };

    int m = 2;
    std::vector<int> covered_S;      // S = {1..m-4} intersected with the run horizon
    std::vector<HomPoly> residuals;  // parallel to covered_S
    std::optional<int> first_failure;
    bool covers_all_of_S = true;
    Verdict verdict = Verdict::equivalent;
};

struct RunResult {
    StarJet metric;
    ObstructionReport report;
    std::vector<StepRecord> steps;   // k = 1..K
    std::vector<bool> assertions;    // assert_Ak after each step, index k-1
};

// Shared immutable operator cache for one leading power m, degrees 1..kmax.
class ThetaContext {
  public:
    ThetaContext(int m, int kmax, PairingKind pairing = PairingKind::circle,
                 const EliminationOptions& opts = {});

    int m() const { return m_; }
    int kmax() const { return static_cast<int>(ops_.size()); }
    const ThetaOperator& op(int k) const;

  private:
    int m_;
    std::vector<ThetaOperator> ops_;
};

// Right-hand side of the degree-k linear problem:
// -[d T_{k-1} df]_{k+m-2}/dx^dy + ([det T_{k-1}]_k f0y)_y.
// Requires T up to degree k-1 and jet order >= k+m.
HomPoly phi_next(const StarJet& t_prev, const Jet& f, int k);

// One inductive step: solve for (G11,G12), close the determinant constraint
// with G22 = -[det T_{k-1}]_k - G11, extend T. In the failing branch the
// projected solve is used, so the continuation stays well defined.
StepRecord step(StarJet& t, const Jet& f, int k, const ThetaOperator& op);

RunResult run(const Jet& f, int big_k, const ThetaContext& ctx);
RunResult run(const Jet& f, int big_k, PairingKind pairing = PairingKind::circle);

// Assertion A_k: (i) [dT df]_n = 0 for n = 0..k+m-2 and
// (ii) [det T]_n = 0 for n = 1..k, both exact.
bool assert_Ak(const StarJet& t, const Jet& f, int k);

}  // namespace harmjet
