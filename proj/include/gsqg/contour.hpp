#pragma once

#include "gsqg/field.hpp"

#include <optional>
#include <vector>

namespace gsqg {

struct Point {
    double x = 0.0, y = 0.0;
};
using Polyline = std::vector<Point>;

// Marching squares over the interior cells (no periodic wrap). Saddle cells are
// resolved by the cell-centre average. Segments are chained into polylines;
// closed curves repeat their first point at the end.
std::vector<Polyline> marching_squares(const ScalarField& f, double level);

std::size_t point_count(const std::vector<Polyline>& lines);
std::vector<Point> points_in_disk(const std::vector<Polyline>& lines, Point centre, double radius);

double point_segment_distance(Point p, Point a, Point b);
// Minimum distance between two polyline sets; none if either is empty.
std::optional<double> polyline_distance(const std::vector<Polyline>& a, const std::vector<Polyline>& b);

// Least-squares conic a x^2 + b x y + c y^2 + d x + e y = 1 in coordinates relative to centre.
struct ConicFit {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0;
    double rms_residual = 0.0;
    int points = 0;
};
std::optional<ConicFit> fit_conic(const std::vector<Point>& pts, Point centre = {});

// Acute angle between the asymptotes of a hyperbolic fit; none if the quadratic
// part is not indefinite.
std::optional<double> hyperbola_opening_angle(const ConicFit& c);
// sqrt(1 - lambda_min / lambda_max) of a positive definite quadratic part; none otherwise.
std::optional<double> ellipse_eccentricity(const ConicFit& c);

// Contour at `level`, points within `radius` of the origin, conic fit, asymptote angle.
std::optional<double> contour_opening_angle(const ScalarField& f, double level, double radius);
std::optional<double> contour_eccentricity(const ScalarField& f, double level, double radius);

}  // namespace gsqg
