#include "harmjet/graded.hpp"

namespace harmjet {

void GradedPoly::set(HomPoly p) {
    if (p.is_zero())
        comp_.erase(p.degree());
    else
        comp_.insert_or_assign(p.degree(), std::move(p));
}

void GradedPoly::add(const HomPoly& p) {
    if (p.is_zero()) return;
    auto it = comp_.find(p.degree());
    if (it == comp_.end()) {
        comp_.emplace(p.degree(), p);
        return;
    }
    it->second += p;
    if (it->second.is_zero()) comp_.erase(it);
}

HomPoly GradedPoly::component(int n) const {
    auto it = comp_.find(n);
    return it == comp_.end() ? HomPoly(n) : it->second;
}

const HomPoly* GradedPoly::find(int n) const {
    auto it = comp_.find(n);
    return it == comp_.end() ? nullptr : &it->second;
}

int GradedPoly::min_degree() const { return comp_.empty() ? -1 : comp_.begin()->first; }
int GradedPoly::max_degree() const { return comp_.empty() ? -1 : comp_.rbegin()->first; }

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
    for (const auto& [n, p] : o.comp_) add(p);
    return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
    for (const auto& [n, p] : o.comp_) add(-p);
    return *this;
}

GradedPoly operator-(const GradedPoly& p) {
    GradedPoly r;
    for (const auto& [n, c] : p.comp_) r.set(-c);
    return r;
}

GradedPoly operator*(const Rational& s, const GradedPoly& p) {
    GradedPoly r;
    if (is_zero(s)) return r;
    for (const auto& [n, c] : p.comp_) r.set(s * c);
    return r;
}

GradedPoly gp_from(std::initializer_list<HomPoly> parts) {
    GradedPoly g;
    for (const auto& p : parts) g.add(p);
    return g;
}

GradedPoly gp_mul_truncated(const GradedPoly& a, const GradedPoly& b, int max_degree) {
    GradedPoly r;
    for (const auto& [na, pa] : a.components()) {
        if (na > max_degree) break;
        for (const auto& [nb, pb] : b.components()) {
            if (na + nb > max_degree) break;
            r.add(hp_mul(pa, pb));
        }
    }
    return r;
}

HomPoly gp_product_component(const GradedPoly& a, const GradedPoly& b, int n) {
    HomPoly r(n);
    for (const auto& [na, pa] : a.components()) {
        if (na > n) break;
        if (const HomPoly* pb = b.find(n - na)) r += hp_mul(pa, *pb);
    }
    return r;
}

GradedPoly gp_truncate(const GradedPoly& a, int max_degree) {
    GradedPoly r;
    for (const auto& [n, p] : a.components()) {
        if (n > max_degree) break;
        r.set(p);
    }
    return r;
}

GradedPoly gp_slice(const GradedPoly& a, int lo, int hi) {
    GradedPoly r;
    for (const auto& [n, p] : a.components())
        if (n >= lo && n <= hi) r.set(p);
    return r;
}

GradedPoly derive(const GradedPoly& p, Var v) {
    GradedPoly r;
    for (const auto& [n, c] : p.components())
        if (n >= 1) r.add(derive(c, v));
    return r;
}

double eval(const GradedPoly& p, double x, double y) {
    double sum = 0.0;
    for (const auto& [n, c] : p.components()) sum += eval(c, x, y);
    return sum;
}

}  // namespace harmjet
