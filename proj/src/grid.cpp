#include "sinrlab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace sinrlab {

GridBox grid_coord(const Vec2& pos, double cell) {
    if (!(cell > 0.0)) throw std::invalid_argument("grid_coord: cell must be > 0");
    GridBox g;
    g.a = static_cast<long>(std::floor(pos.x / cell));
    g.b = static_cast<long>(std::floor(pos.y / cell));
    g.cell = cell;
    return g;
}

int box_distance(const GridBox& p, const GridBox& q) {
    if (p.cell != q.cell) throw std::invalid_argument("box_distance: cell sizes differ");
    if (p.a == q.a && p.b == q.b) return 0;  // identical boxes intersect
    long da1 = std::labs(p.a - q.a - 1), da2 = std::labs(q.a - p.a - 1);
    long db1 = std::labs(p.b - q.b - 1), db2 = std::labs(q.b - p.b - 1);
    long ka = da1 < da2 ? da1 : da2;
    long kb = db1 < db2 ? db1 : db2;
    return static_cast<int>(ka > kb ? ka : kb);
}

bool boxes_within(long da, long db, double cell, double radius) {
    long ma = std::labs(da) > 0 ? std::labs(da) - 1 : 0;
    long mb = std::labs(db) > 0 ? std::labs(db) - 1 : 0;
    double gap2 = static_cast<double>(ma * ma + mb * mb);
    double t = (radius / cell) * (radius / cell);
    // Snap near-integer thresholds so boundary offsets (infimum distance equal
    // to the radius, unattained between half-open boxes) are excluded exactly.
    double tr = std::round(t);
    if (std::fabs(t - tr) < 1e-9 * (t + 1.0)) return gap2 < tr;
    return gap2 < t;
}

int count_boxes_within(double cell, double radius) {
    long span = static_cast<long>(std::ceil(radius / cell)) + 2;
    int count = 0;
    for (long da = -span; da <= span; ++da)
        for (long db = -span; db <= span; ++db)
            if (boxes_within(da, db, cell, radius)) ++count;
    return count;
}

}  // namespace sinrlab
