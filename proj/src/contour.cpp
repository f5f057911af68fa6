#include "gsqg/contour.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

namespace gsqg {

namespace {

using EdgeId = long long;

struct Segment {
    EdgeId e0, e1;
};

}  // namespace

std::vector<Polyline> marching_squares(const ScalarField& f, double level) {
    const int n = f.n;
    const double h = f.spacing();
    std::unordered_map<EdgeId, Point> edge_point;
    std::vector<Segment> segs;

    // Horizontal edge (i,j)-(i+1,j): 2(i n + j); vertical edge (i,j)-(i,j+1): 2(i n + j) + 1.
    auto hid = [n](int i, int j) { return 2LL * (static_cast<EdgeId>(i) * n + j); };
    auto vid = [n](int i, int j) { return 2LL * (static_cast<EdgeId>(i) * n + j) + 1; };
    auto crossing = [&](EdgeId id, double x0, double y0, double x1, double y1, double va, double vb) {
        if (edge_point.count(id)) return;
        const double t = (level - va) / (vb - va);
        edge_point[id] = {x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
    };

    for (int i = 0; i + 1 < n; ++i)
        for (int j = 0; j + 1 < n; ++j) {
            const double v00 = f.at(i, j), v10 = f.at(i + 1, j), v11 = f.at(i + 1, j + 1), v01 = f.at(i, j + 1);
            const bool b00 = v00 >= level, b10 = v10 >= level, b11 = v11 >= level, b01 = v01 >= level;
            if (b00 == b10 && b10 == b11 && b11 == b01) continue;
            const double x0 = f.coord(i), y0 = f.coord(j), x1 = x0 + h, y1 = y0 + h;
            // Edges: bottom, right, top, left.
            const std::array<EdgeId, 4> id{hid(i, j), vid(i + 1, j), hid(i, j + 1), vid(i, j)};
            const std::array<bool, 4> cut{b00 != b10, b10 != b11, b01 != b11, b00 != b01};
            if (cut[0]) crossing(id[0], x0, y0, x1, y0, v00, v10);
            if (cut[1]) crossing(id[1], x1, y0, x1, y1, v10, v11);
            if (cut[2]) crossing(id[2], x0, y1, x1, y1, v01, v11);
            if (cut[3]) crossing(id[3], x0, y0, x0, y1, v00, v01);
            const int ncut = cut[0] + cut[1] + cut[2] + cut[3];
            if (ncut == 2) {
                int a = -1, b = -1;
                for (int k = 0; k < 4; ++k)
                    if (cut[k]) (a < 0 ? a : b) = k;
                segs.push_back({id[a], id[b]});
            } else {
                // Saddle cell: cut off the two corners whose side differs from the centre.
                const bool centre = 0.25 * (v00 + v10 + v11 + v01) >= level;
                if (b00 != centre) {
                    segs.push_back({id[3], id[0]});  // around (i, j)
                    segs.push_back({id[1], id[2]});  // around (i+1, j+1)
                } else {
                    segs.push_back({id[0], id[1]});  // around (i+1, j)
                    segs.push_back({id[2], id[3]});  // around (i, j+1)
                }
            }
        }

    std::unordered_map<EdgeId, std::array<int, 2>> incident;
    for (int s = 0; s < static_cast<int>(segs.size()); ++s)
        for (EdgeId e : {segs[s].e0, segs[s].e1}) {
            auto [it, fresh] = incident.try_emplace(e, std::array<int, 2>{-1, -1});
            (it->second[0] < 0 ? it->second[0] : it->second[1]) = s;
        }

    std::vector<char> used(segs.size(), 0);
    std::vector<Polyline> lines;
    auto walk = [&](int s, EdgeId start) {
        Polyline line{edge_point[start]};
        EdgeId at = start;
        while (s >= 0 && !used[s]) {
            used[s] = 1;
            const EdgeId next = segs[s].e0 == at ? segs[s].e1 : segs[s].e0;
            line.push_back(edge_point[next]);
            at = next;
            const auto& inc = incident[at];
            s = inc[0] == s ? inc[1] : inc[0];
        }
        lines.push_back(std::move(line));
    };
    // Open curves first (they start on an edge used once), then closed loops.
    for (const auto& [e, inc] : incident)
        if (inc[1] < 0 && !used[inc[0]]) walk(inc[0], e);
    for (int s = 0; s < static_cast<int>(segs.size()); ++s)
        if (!used[s]) walk(s, segs[s].e0);
    return lines;
}

std::size_t point_count(const std::vector<Polyline>& lines) {
    std::size_t c = 0;
    for (const auto& l : lines) c += l.size();
    return c;
}

std::vector<Point> points_in_disk(const std::vector<Polyline>& lines, Point centre, double radius) {
    std::vector<Point> out;
    for (const auto& l : lines)
        for (const auto& p : l)
            if (std::hypot(p.x - centre.x, p.y - centre.y) <= radius) out.push_back(p);
    return out;
}

double point_segment_distance(Point p, Point a, Point b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

std::optional<double> polyline_distance(const std::vector<Polyline>& a, const std::vector<Polyline>& b) {
    if (point_count(a) == 0 || point_count(b) == 0) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    auto one_way = [&best](const std::vector<Polyline>& pts, const std::vector<Polyline>& segs) {
        for (const auto& lp : pts)
            for (const Point& p : lp)
                for (const auto& ls : segs) {
                    if (ls.size() == 1) best = std::min(best, std::hypot(p.x - ls[0].x, p.y - ls[0].y));
                    for (std::size_t k = 0; k + 1 < ls.size(); ++k)
                        best = std::min(best, point_segment_distance(p, ls[k], ls[k + 1]));
                }
    };
    one_way(a, b);
    one_way(b, a);
    return best;
}

std::optional<ConicFit> fit_conic(const std::vector<Point>& pts, Point centre) {
    if (pts.size() < 5) return std::nullopt;
    double s = 0.0;
    for (const auto& p : pts) s = std::max(s, std::hypot(p.x - centre.x, p.y - centre.y));
    if (!(s > 0.0)) return std::nullopt;
    const Eigen::Index m = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXd A(m, 5);
    Eigen::VectorXd rhs = Eigen::VectorXd::Ones(m);
    for (Eigen::Index r = 0; r < m; ++r) {
        const double x = (pts[r].x - centre.x) / s, y = (pts[r].y - centre.y) / s;
        A.row(r) << x * x, x * y, y * y, x, y;
    }
    const Eigen::VectorXd q = A.colPivHouseholderQr().solve(rhs);
    ConicFit c;
    c.a = q[0] / (s * s);
    c.b = q[1] / (s * s);
    c.c = q[2] / (s * s);
    c.d = q[3] / s;
    c.e = q[4] / s;
    c.rms_residual = (A * q - rhs).norm() / std::sqrt(static_cast<double>(m));
    c.points = static_cast<int>(m);
    return c;
}

namespace {

std::pair<double, double> quadratic_eigenvalues(const ConicFit& c) {
    Eigen::Matrix2d Q;
    Q << c.a, 0.5 * c.b, 0.5 * c.b, c.c;
    const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(Q, Eigen::EigenvaluesOnly).eigenvalues();
    return {ev[1], ev[0]};  // descending
}

}  // namespace

std::optional<double> hyperbola_opening_angle(const ConicFit& c) {
    const auto [l1, l2] = quadratic_eigenvalues(c);
    if (!(l1 > 0.0 && l2 < 0.0)) return std::nullopt;
    // Asymptotes sit at +-atan(sqrt(l1/-l2)) from the l1 eigenvector.
    const double two_phi = 2.0 * std::atan(std::sqrt(l1 / -l2));
    return std::min(two_phi, std::numbers::pi - two_phi);
}

std::optional<double> ellipse_eccentricity(const ConicFit& c) {
    const auto [l1, l2] = quadratic_eigenvalues(c);
    if (!(l1 * l2 > 0.0)) return std::nullopt;
    const double lo = std::min(std::fabs(l1), std::fabs(l2)), hi = std::max(std::fabs(l1), std::fabs(l2));
    return std::sqrt(1.0 - lo / hi);
}

std::optional<double> contour_opening_angle(const ScalarField& f, double level, double radius) {
    const auto fit = fit_conic(points_in_disk(marching_squares(f, level), {0.0, 0.0}, radius));
    if (!fit) return std::nullopt;
    return hyperbola_opening_angle(*fit);
}

std::optional<double> contour_eccentricity(const ScalarField& f, double level, double radius) {
    const auto fit = fit_conic(points_in_disk(marching_squares(f, level), {0.0, 0.0}, radius));
    if (!fit) return std::nullopt;
    return ellipse_eccentricity(*fit);
}

}  // namespace gsqg
