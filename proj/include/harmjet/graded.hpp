#pragma once

#include <map>

#include "harmjet/hompoly.hpp"

namespace harmjet {

// Finitely supported map degree -> HomPoly; absent degrees are zero.
// Only nonzero components are stored, so is_zero and equality are structural.
class GradedPoly {
  public:
    GradedPoly() = default;

    // Replaces the component of matching degree (erases it when zero).
    void set(HomPoly p);
    void add(const HomPoly& p);

    // Zero polynomial of degree n when absent.
    HomPoly component(int n) const;
    const HomPoly* find(int n) const;

    bool is_zero() const { return comp_.empty(); }
    int min_degree() const;  // -1 when zero
    int max_degree() const;  // -1 when zero

    const std::map<int, HomPoly>& components() const { return comp_; }

    GradedPoly& operator+=(const GradedPoly& o);
    GradedPoly& operator-=(const GradedPoly& o);
    friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
    friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
    friend GradedPoly operator-(const GradedPoly& p);
    friend GradedPoly operator*(const Rational& s, const GradedPoly& p);
    friend bool operator==(const GradedPoly&, const GradedPoly&) = default;

  private:
    std::map<int, HomPoly> comp_;
};

GradedPoly gp_from(std::initializer_list<HomPoly> parts);

// Product with every component of degree > max_degree discarded.
GradedPoly gp_mul_truncated(const GradedPoly& a, const GradedPoly& b, int max_degree);

// Degree-n component of a*b without forming the rest of the product.
HomPoly gp_product_component(const GradedPoly& a, const GradedPoly& b, int n);

GradedPoly gp_truncate(const GradedPoly& a, int max_degree);
GradedPoly gp_slice(const GradedPoly& a, int lo, int hi);  // components with lo <= n <= hi

GradedPoly derive(const GradedPoly& p, Var v);

double eval(const GradedPoly& p, double x, double y);

}  // namespace harmjet
