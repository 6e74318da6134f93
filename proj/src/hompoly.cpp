#include "harmjet/hompoly.hpp"

#include <sstream>
#include <stdexcept>

#include "harmjet/linalg.hpp"

namespace harmjet {

int HomPoly::check_degree(int degree) {
    if (degree < 0) throw std::domain_error("negative polynomial degree");
    return degree;
}

HomPoly HomPoly::monomial(int degree, int y_exp, Rational coeff) {
    HomPoly p(degree);
    p.set_coeff(y_exp, std::move(coeff));
    return p;
}

bool HomPoly::is_zero() const {
    for (const auto& c : c_)
        if (!harmjet::is_zero(c)) return false;
    return true;
}

HomPoly& HomPoly::operator+=(const HomPoly& o) {
    if (o.degree_ != degree_) throw std::domain_error("degree mismatch in sum");
    for (int j = 0; j <= degree_; ++j) c_[j] += o.c_[j];
    return *this;
}

HomPoly& HomPoly::operator-=(const HomPoly& o) {
    if (o.degree_ != degree_) throw std::domain_error("degree mismatch in difference");
    for (int j = 0; j <= degree_; ++j) c_[j] -= o.c_[j];
    return *this;
}

HomPoly& HomPoly::operator*=(const Rational& s) {
    for (auto& c : c_) c *= s;
    return *this;
}

HomPoly operator-(HomPoly a) {
    for (auto& c : a.c_) c = -c;
    return a;
}

HomPoly hp_mul(const HomPoly& p, const HomPoly& q) {
    HomPoly r(p.degree() + q.degree());
    for (int a = 0; a <= p.degree(); ++a) {
        if (is_zero(p.coeff(a))) continue;
        for (int b = 0; b <= q.degree(); ++b) {
            if (is_zero(q.coeff(b))) continue;
            r.set_coeff(a + b, r.coeff(a + b) + p.coeff(a) * q.coeff(b));
        }
    }
    return r;
}

HomPoly hp_pow(const HomPoly& p, int e) {
    if (e < 0) throw std::domain_error("negative exponent");
    HomPoly r = HomPoly::constant(Rational(1));
    for (int i = 0; i < e; ++i) r = hp_mul(r, p);
    return r;
}

HomPoly derive(const HomPoly& p, Var v) {
    const int n = p.degree();
    if (n == 0) return HomPoly(0);
    HomPoly d(n - 1);
    if (v == Var::x) {
        for (int j = 0; j < n; ++j) d.set_coeff(j, Rational(n - j) * p.coeff(j));
    } else {
        for (int j = 1; j <= n; ++j) d.set_coeff(j - 1, Rational(j) * p.coeff(j));
    }
    return d;
}

HomPoly laplace_flat(const HomPoly& p) {
    if (p.degree() < 2) throw std::domain_error("laplace_flat requires degree >= 2");
    return derive(derive(p, Var::x), Var::x) + derive(derive(p, Var::y), Var::y);
}

std::pair<HomPoly, HomPoly> expand_re_im_zm(int m) {
    if (m < 0) throw std::domain_error("negative power of z");
    HomPoly re(m), im(m);
    Rational binom(1);
    for (int k = 0; k <= m; ++k) {
        // i^k sends C(m,k) x^{m-k} y^k to the real or imaginary part.
        switch (k % 4) {
            case 0: re.set_coeff(k, binom); break;
            case 1: im.set_coeff(k, binom); break;
            case 2: re.set_coeff(k, -binom); break;
            case 3: im.set_coeff(k, -binom); break;
        }
        binom = binom * Rational(m - k) / Rational(k + 1);
    }
    return {re, im};
}

std::pair<HomPoly, HomPoly> irr_basis(int n, int q) {
    if (q < 0 || 2 * q > n) throw std::domain_error("irr_basis requires 0 <= 2q <= n");
    const int p = n - 2 * q;
    const HomPoly r2q = hp_pow(HomPoly::monomial(2, 0, 1) + HomPoly::monomial(2, 2, 1), q);
    auto [re, im] = expand_re_im_zm(p);
    return {hp_mul(r2q, re), hp_mul(r2q, im)};
}

std::vector<IrrComponent> harmonic_decompose(const HomPoly& p) {
    const int n = p.degree();
    struct Col {
        int q;
        bool imaginary;
    };
    std::vector<Col> cols;
    std::vector<RatVec> columns;
    for (int q = 0; 2 * q <= n; ++q) {
        auto [re, im] = irr_basis(n, q);
        columns.emplace_back(re.coeffs().begin(), re.coeffs().end());
        cols.push_back({q, false});
        if (n - 2 * q > 0) {
            columns.emplace_back(im.coeffs().begin(), im.coeffs().end());
            cols.push_back({q, true});
        }
    }
    const Mat basis = Mat::from_columns(n + 1, columns);
    const auto solution = Echelon::compute(basis).solve(p.coeffs());
    if (!solution) throw std::logic_error("irr basis failed to span R_n[x,y]");
    std::vector<IrrComponent> parts;
    for (int q = 0; 2 * q <= n; ++q) parts.push_back({q, n - 2 * q, Rational(0), Rational(0)});
    for (std::size_t j = 0; j < cols.size(); ++j) {
        auto& part = parts[cols[j].q];
        (cols[j].imaginary ? part.b : part.a) = (*solution)[j];
    }
    return parts;
}

HomPoly irr_reconstruct(int degree, std::span<const IrrComponent> parts) {
    HomPoly sum(degree);
    for (const auto& part : parts) {
        if (part.p + 2 * part.q != degree)
            throw std::domain_error("irr component degree mismatch");
        auto [re, im] = irr_basis(degree, part.q);
        sum += part.a * re + part.b * im;
    }
    return sum;
}

double eval(const HomPoly& p, double x, double y) {
    const int n = p.degree();
    double sum = 0.0;
    double ypow = 1.0;
    std::vector<double> xpow(n + 1);
    xpow[0] = 1.0;
    for (int j = 1; j <= n; ++j) xpow[j] = xpow[j - 1] * x;
    for (int j = 0; j <= n; ++j) {
        if (!is_zero(p.coeff(j))) sum += to_double(p.coeff(j)) * xpow[n - j] * ypow;
        ypow *= y;
    }
    return sum;
}

std::string to_string(const HomPoly& p) {
    std::ostringstream out;
    bool first = true;
    const int n = p.degree();
    for (int j = 0; j <= n; ++j) {
        const Rational& c = p.coeff(j);
        if (is_zero(c)) continue;
        const Rational magnitude = abs(c);
        if (first) {
            if (sgn(c) < 0) out << "-";
            first = false;
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        const int xe = n - j;
        const bool coefficient_shown = magnitude != 1 || (xe == 0 && j == 0);
        if (coefficient_shown) out << magnitude.get_str();
        if (xe > 0) {
            if (coefficient_shown) out << "*";
            out << "x";
            if (xe > 1) out << "^" << xe;
        }
        if (j > 0) {
            if (coefficient_shown || xe > 0) out << "*";
            out << "y";
            if (j > 1) out << "^" << j;
        }
    }
    if (first) out << "0";
    return out.str();
}

CxHomPoly::CxHomPoly(HomPoly re, HomPoly im) : re_(std::move(re)), im_(std::move(im)) {
    if (re_.degree() != im_.degree())
        throw std::domain_error("complexified polynomial needs equal degrees");
}

CxHomPoly cx_mul(const CxHomPoly& a, const CxHomPoly& b) {
    return {hp_mul(a.re(), b.re()) - hp_mul(a.im(), b.im()),
            hp_mul(a.re(), b.im()) + hp_mul(a.im(), b.re())};
}

CxHomPoly cx_scale_i(const CxHomPoly& a) { return {-a.im(), a.re()}; }

CxHomPoly zbar_q_z_n(int q, int n) {
    auto [req, imq] = expand_re_im_zm(q);
    auto [ren, imn] = expand_re_im_zm(n);
    return cx_mul(CxHomPoly(req, -imq), CxHomPoly(ren, imn));
}

}  // namespace harmjet
