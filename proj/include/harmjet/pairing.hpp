#pragma once

#include "harmjet/hompoly.hpp"
#include "harmjet/linalg.hpp"

namespace harmjet {

// Mean of cos^a(t) sin^b(t) over the unit circle; zero unless a and b are
// both even, in which case it is (a-1)!!(b-1)!!/(a+b)!! as an exact rational.
Rational circle_moment(int a, int b);

// Gram matrix of the circle-average pairing <P,Q> = mean_{S^1}(P*Q) on the
// monomial basis of R_n[x,y]. The pairing is S^1-invariant, makes the Irr^q
// summands mutually orthogonal, and is positive definite.
Mat circle_gram(int n);

Rational circle_pairing(const HomPoly& p, const HomPoly& q);

}  // namespace harmjet
