#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "harmjet/rational.hpp"

namespace harmjet {

enum class Var { x, y };

// Homogeneous bivariate polynomial of a fixed degree n over the rationals.
// coeff(j) is the coefficient of x^(n-j) y^j; the zero polynomial of every
// degree is representable. The degree is part of the value's identity.
class HomPoly {
  public:
    explicit HomPoly(int degree) : degree_(check_degree(degree)), c_(degree + 1) {}

    static HomPoly monomial(int degree, int y_exp, Rational coeff);
    static HomPoly constant(Rational value) { return monomial(0, 0, std::move(value)); }

    int degree() const { return degree_; }
    const Rational& coeff(int y_exp) const { return c_.at(y_exp); }
    void set_coeff(int y_exp, Rational value) { c_.at(y_exp) = std::move(value); }

    std::span<const Rational> coeffs() const { return c_; }
    bool is_zero() const;

    HomPoly& operator+=(const HomPoly& o);
    HomPoly& operator-=(const HomPoly& o);
    HomPoly& operator*=(const Rational& s);

    friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
    friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }
    friend HomPoly operator-(HomPoly a);
    friend HomPoly operator*(const Rational& s, HomPoly p) { return p *= s; }
    friend bool operator==(const HomPoly&, const HomPoly&) = default;

  private:
    static int check_degree(int degree);

    int degree_;
    std::vector<Rational> c_;
};

HomPoly hp_mul(const HomPoly& p, const HomPoly& q);
HomPoly hp_pow(const HomPoly& p, int e);

// Partial derivative. The derivative of a degree-0 polynomial is the
// degree-0 zero polynomial, keeping degree arithmetic total.
HomPoly derive(const HomPoly& p, Var v);

// p_xx + p_yy, degree drops by two. Requires deg p >= 2.
HomPoly laplace_flat(const HomPoly& p);

// Exact binomial expansion of (Re(x+iy)^m, Im(x+iy)^m).
std::pair<HomPoly, HomPoly> expand_re_im_zm(int m);

// ((x^2+y^2)^q Re(x+iy)^p, (x^2+y^2)^q Im(x+iy)^p) with p = n-2q.
// Requires 0 <= 2q <= n.
std::pair<HomPoly, HomPoly> irr_basis(int n, int q);

// One summand of the S^1-irreducible decomposition:
// (x^2+y^2)^q (a Re(x+iy)^p + b Im(x+iy)^p), p + 2q = degree.
struct IrrComponent {
    int q = 0;
    int p = 0;
    Rational a;
    Rational b;
};

// Unique coefficients with p = sum over q of the components above,
// obtained by one exact linear solve against the Irr basis written in
// the monomial basis. Components are returned with q ascending; b is 0
// whenever p = 0.
std::vector<IrrComponent> harmonic_decompose(const HomPoly& p);
HomPoly irr_reconstruct(int degree, std::span<const IrrComponent> parts);

double eval(const HomPoly& p, double x, double y);

std::string to_string(const HomPoly& p);

// Complexified polynomial Q = re + i*im with matching degrees; the domain
// element of the degree-k operator analysis.
class CxHomPoly {
  public:
    explicit CxHomPoly(int degree) : re_(degree), im_(degree) {}
    CxHomPoly(HomPoly re, HomPoly im);

    int degree() const { return re_.degree(); }
    const HomPoly& re() const { return re_; }
    const HomPoly& im() const { return im_; }
    HomPoly& re() { return re_; }
    HomPoly& im() { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    friend bool operator==(const CxHomPoly&, const CxHomPoly&) = default;

  private:
    HomPoly re_, im_;
};

CxHomPoly cx_mul(const CxHomPoly& a, const CxHomPoly& b);
CxHomPoly cx_scale_i(const CxHomPoly& a);  // multiplication by i

// conj(z)^q * z^n as an exact complexified polynomial of degree q+n.
CxHomPoly zbar_q_z_n(int q, int n);

}  // namespace harmjet
