#include "harmjet/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace harmjet {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::from_columns(int rows, std::span<const RatVec> columns) {
    Mat m(rows, static_cast<int>(columns.size()));
    for (int j = 0; j < m.cols(); ++j) {
        if (static_cast<int>(columns[j].size()) != rows)
            throw std::domain_error("column height mismatch");
        for (int i = 0; i < rows; ++i) m.at(i, j) = columns[j][i];
    }
    return m;
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RatVec Mat::column(int j) const {
    RatVec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (!harmjet::is_zero(x)) return false;
    return true;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw std::domain_error("matrix product shape mismatch");
    Mat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (is_zero(a.at(i, k))) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

Mat operator+(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::domain_error("matrix sum shape mismatch");
    Mat c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
}

Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::domain_error("matrix difference shape mismatch");
    Mat c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
}

RatVec mat_vec(const Mat& a, std::span<const Rational> v) {
    if (a.cols() != static_cast<int>(v.size())) throw std::domain_error("mat_vec shape mismatch");
    RatVec r(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!is_zero(a.at(i, j))) r[i] += a.at(i, j) * v[j];
    return r;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw std::domain_error("dot length mismatch");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Mat submatrix(const Mat& a, int r0, int r1, int c0, int c1) {
    if (r0 < 0 || r1 > a.rows() || c0 < 0 || c1 > a.cols() || r0 > r1 || c0 > c1)
        throw std::domain_error("submatrix range out of bounds");
    Mat s(r1 - r0, c1 - c0);
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j) s.at(i - r0, j - c0) = a.at(i, j);
    return s;
}

Mat vstack(std::span<const Mat> blocks) {
    if (blocks.empty()) return {};
    int rows = 0;
    for (const Mat& b : blocks) {
        if (b.cols() != blocks[0].cols()) throw std::domain_error("vstack width mismatch");
        rows += b.rows();
    }
    Mat s(rows, blocks[0].cols());
    int r = 0;
    for (const Mat& b : blocks) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) s.at(r + i, j) = b.at(i, j);
        r += b.rows();
    }
    return s;
}

namespace {

// Limb-count proxy for pivot choice; small pivots keep intermediates small.
std::size_t rational_size(const Rational& r) {
    const auto* q = r.get_mpq_t();
    return mpz_size(mpq_numref(q)) + mpz_size(mpq_denref(q));
}

// [A | I] working block; the identity half accumulates the row transform.
struct Work {
    int rows, cols, acols;
    std::vector<Rational> a;

    Work(const Mat& m)
        : rows(m.rows()), cols(m.cols() + m.rows()), acols(m.cols()),
          a(static_cast<std::size_t>(rows) * cols) {
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < acols; ++j) at(i, j) = m.at(i, j);
            at(i, acols + i) = 1;
        }
    }

    Rational& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Rational& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
    }
};

int select_pivot(const Work& w, int from_row, int col) {
    int best = -1;
    std::size_t best_size = 0;
    for (int i = from_row; i < w.rows; ++i) {
        if (is_zero(w.at(i, col))) continue;
        const std::size_t s = rational_size(w.at(i, col));
        if (best < 0 || s < best_size) {
            best = i;
            best_size = s;
        }
    }
    return best;
}

// row i -= factor * pivot row, columns right of the pivot only.
void axpy_row(Work& w, int i, int p, const Rational& factor, int from_col) {
    for (int c = from_col; c < w.cols; ++c) {
        if (is_zero(w.at(p, c))) continue;
        w.at(i, c) -= factor * w.at(p, c);
    }
}

void eliminate_others_serial(Work& w, int pivot_row, int col) {
    for (int i = 0; i < w.rows; ++i) {
        if (i == pivot_row || is_zero(w.at(i, col))) continue;
        const Rational factor = std::move(w.at(i, col));
        w.at(i, col) = 0;
        axpy_row(w, i, pivot_row, factor, col + 1);
    }
}

// Row updates are independent (each thread owns one destination row and
// only reads the pivot row), so the result is identical to the serial path.
void eliminate_others_parallel(Work& w, int pivot_row, int col) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < w.rows; ++i) {
        if (i == pivot_row || is_zero(w.at(i, col))) continue;
        const Rational factor = std::move(w.at(i, col));
        w.at(i, col) = 0;
        axpy_row(w, i, pivot_row, factor, col + 1);
    }
}

struct Parts {
    Mat rref, transform;
    std::vector<int> pivot_cols;
};

Parts gauss_jordan(const Mat& a, bool parallel_updates) {
    Work w(a);
    std::vector<int> pivot_cols;
    int next_row = 0;
    for (int col = 0; col < w.acols && next_row < w.rows; ++col) {
        const int pivot = select_pivot(w, next_row, col);
        if (pivot < 0) continue;
        w.swap_rows(pivot, next_row);
        const Rational inv = 1 / w.at(next_row, col);
        w.at(next_row, col) = 1;
        for (int c = col + 1; c < w.cols; ++c)
            if (!is_zero(w.at(next_row, c))) w.at(next_row, c) *= inv;
        if (parallel_updates)
            eliminate_others_parallel(w, next_row, col);
        else
            eliminate_others_serial(w, next_row, col);
        pivot_cols.push_back(col);
        ++next_row;
    }
    Parts parts{Mat(w.rows, w.acols), Mat(w.rows, w.rows), std::move(pivot_cols)};
    for (int i = 0; i < w.rows; ++i) {
        for (int j = 0; j < w.acols; ++j) parts.rref.at(i, j) = std::move(w.at(i, j));
        for (int j = 0; j < w.rows; ++j) parts.transform.at(i, j) = std::move(w.at(i, w.acols + j));
    }
    return parts;
}

}  // namespace

Echelon Echelon::compute(const Mat& a, const EliminationOptions& opts) {
    const long cells = static_cast<long>(a.rows()) * a.cols();
    const bool parallel = opts.parallel && cells >= opts.min_parallel_cells;
    Parts p = gauss_jordan(a, parallel);
    Echelon e;
    e.rref_ = std::move(p.rref);
    e.transform_ = std::move(p.transform);
    e.pivot_cols_ = std::move(p.pivot_cols);
    return e;
}

Echelon Echelon::compute_serial(const Mat& a) {
    Parts p = gauss_jordan(a, false);
    Echelon e;
    e.rref_ = std::move(p.rref);
    e.transform_ = std::move(p.transform);
    e.pivot_cols_ = std::move(p.pivot_cols);
    return e;
}

std::optional<RatVec> Echelon::solve(std::span<const Rational> b) const {
    if (static_cast<int>(b.size()) != transform_.rows())
        throw std::domain_error("solve: rhs length mismatch");
    const RatVec eb = mat_vec(transform_, b);
    for (int i = rank(); i < static_cast<int>(eb.size()); ++i)
        if (!is_zero(eb[i])) return std::nullopt;
    RatVec x(rref_.cols());
    for (int i = 0; i < rank(); ++i) x[pivot_cols_[i]] = eb[i];
    return x;
}

std::vector<RatVec> Echelon::kernel_basis() const {
    std::vector<bool> is_pivot(rref_.cols(), false);
    for (int c : pivot_cols_) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (int j = 0; j < rref_.cols(); ++j) {
        if (is_pivot[j]) continue;
        RatVec v(rref_.cols());
        v[j] = 1;
        for (int i = 0; i < rank(); ++i) v[pivot_cols_[i]] = -rref_.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace harmjet
