#pragma once

#include <optional>
#include <span>
#include <vector>

#include "harmjet/rational.hpp"

namespace harmjet {

using RatVec = std::vector<Rational>;

// Dense exact rational matrix, row major.
class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static Mat identity(int n);
    static Mat from_columns(int rows, std::span<const RatVec> columns);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Rational& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    Rational& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    Mat transposed() const;
    RatVec column(int j) const;
    bool is_zero() const;

    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator+(const Mat& a, const Mat& b);
    friend Mat operator-(const Mat& a, const Mat& b);
    friend bool operator==(const Mat&, const Mat&) = default;

  private:
    int rows_ = 0;
    int cols_ = 0;
    RatVec a_;
};

RatVec mat_vec(const Mat& a, std::span<const Rational> v);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);

// Rows [r0, r1) and columns [c0, c1).
Mat submatrix(const Mat& a, int r0, int r1, int c0, int c1);

// Stacks blocks vertically; all blocks must share a column count.
Mat vstack(std::span<const Mat> blocks);

struct EliminationOptions {
    bool parallel = true;
    // Below this many cells the OpenMP path falls back to plain loops;
    // set to 0 to force team spawning on any size (used by the
    // serial/parallel equivalence tests and the benchmark).
    int min_parallel_cells = 4096;
};

// Reduced row echelon data for A, carrying the row transform E with
// E*A = rref. Pivot selection is by smallest operand size among the
// candidate rows (deterministic), so the serial and OpenMP paths produce
// identical output.
class Echelon {
  public:
    static Echelon compute(const Mat& a, const EliminationOptions& opts = {});
    // Reference implementation: same pivoting, plain loops, no OpenMP.
    static Echelon compute_serial(const Mat& a);

    int rank() const { return static_cast<int>(pivot_cols_.size()); }
    const std::vector<int>& pivot_cols() const { return pivot_cols_; }
    const Mat& rref() const { return rref_; }
    const Mat& transform() const { return transform_; }

    // Solve A x = b; free variables are set to zero. nullopt when
    // inconsistent.
    std::optional<RatVec> solve(std::span<const Rational> b) const;

    // Basis of ker A, one vector per free column.
    std::vector<RatVec> kernel_basis() const;

    friend bool operator==(const Echelon&, const Echelon&) = default;

  private:
    Mat rref_;
    Mat transform_;
    std::vector<int> pivot_cols_;
};

}  // namespace harmjet
