#pragma once

#include <iosfwd>
#include <span>

#include "harmjet/jetflow.hpp"

namespace harmjet {

// Symmetric metric jet in the inverse-metric entries; the degree-0 part is
// the identity (g11 = g22 = 1, g12 = 0 at the base point).
struct MetricJet {
    GradedPoly g11, g12, g22;
};

MetricJet identity_metric();

// Entrywise repackaging through the star template ((-g12,-g22),(g11,g12)),
// truncated at degree D.
StarJet star_from_metric(const MetricJet& g, int m, int max_degree);

// Reads the metric entries off a traceless star jet; throws on a nonzero
// trace component.
MetricJet metric_from_star(const StarJet& t);

// Coordinate Laplacian (g12 fx + g22 fy)_y + (g11 fx + g12 fy)_x as a graded
// polynomial truncated at degree D, identified with a function via dx^dy.
GradedPoly laplacian_graded(const MetricJet& g, const Jet& f, int max_degree);

// Full exact d(T df)/dx^dy, no truncation.
GradedPoly star_residual(const StarJet& t, const Jet& f);

struct ResidualProbe {
    std::vector<double> radii;
    std::vector<double> angles;
    std::vector<std::vector<double>> values;  // values[radius][angle] = |residual|
    double fitted_slope = 0.0;                // +inf when the residual polynomial is zero
};

// Samples the exact residual polynomial in double precision on the polar
// grid and fits the log-log decay slope (per-radius maxima over angles).
ResidualProbe residual_decay(const StarJet& t, const Jet& f, std::span<const double> radii,
                             std::span<const double> angles, bool parallel = true);

std::vector<double> default_probe_radii();   // 2^-3 .. 2^-10
std::vector<double> default_probe_angles();  // 12 angles, offset from the axes

// CSV with header radius,angle,abs_residual.
void write_probe_csv(std::ostream& out, const ResidualProbe& probe);

}  // namespace harmjet
