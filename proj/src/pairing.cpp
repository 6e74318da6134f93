#include "harmjet/pairing.hpp"

#include <stdexcept>

namespace harmjet {

namespace {

mpz_class double_factorial(int n) {
    // (-1)!! = 1 by convention.
    mpz_class r = 1;
    for (int k = n; k >= 2; k -= 2) r *= k;
    return r;
}

}  // namespace

Rational circle_moment(int a, int b) {
    if (a < 0 || b < 0) throw std::domain_error("negative exponent in circle moment");
    if (a % 2 != 0 || b % 2 != 0) return Rational(0);
    Rational r(double_factorial(a - 1) * double_factorial(b - 1), double_factorial(a + b));
    r.canonicalize();
    return r;
}

Mat circle_gram(int n) {
    Mat g(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) g.at(i, j) = circle_moment(2 * n - i - j, i + j);
    return g;
}

Rational circle_pairing(const HomPoly& p, const HomPoly& q) {
    const int n = p.degree(), m = q.degree();
    Rational s;
    for (int i = 0; i <= n; ++i) {
        if (is_zero(p.coeff(i))) continue;
        for (int j = 0; j <= m; ++j) {
            if (is_zero(q.coeff(j))) continue;
            s += p.coeff(i) * q.coeff(j) * circle_moment(n + m - i - j, i + j);
        }
    }
    return s;
}

}  // namespace harmjet
