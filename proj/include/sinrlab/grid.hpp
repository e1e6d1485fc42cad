#pragma once

#include <cstdlib>

#include "sinrlab/sinr.hpp"

namespace sinrlab {

// Half-open grid cell [a*cell, (a+1)*cell) x [b*cell, (b+1)*cell).
struct GridBox {
    long a = 0;
    long b = 0;
    double cell = 1.0;

    bool operator==(const GridBox& o) const { return a == o.a && b == o.b; }
};

GridBox grid_coord(const Vec2& pos, double cell);

// Integer box distance: 0 for the same box, otherwise
// max(min(|a1-a2-1|, |a2-a1-1|), min(|b1-b2-1|, |b2-b1-1|)) verbatim.
// Note the formula makes edge-adjacent boxes distance 1 and diagonal
// neighbours distance 0.
int box_distance(const GridBox& p, const GridBox& q);

// Pivotal grid cell side for a given range: r / sqrt(2). Two stations sharing
// a pivotal box are always within range of each other.
inline double pivotal_cell(double range) { return range / std::sqrt(2.0); }

// True iff some point of box (da,db) lies within `radius` of some point of the
// origin box, for cell side `cell`. Half-open boxes: the infimum distance
// between non-touching boxes is not attained, so the comparison is strict.
bool boxes_within(long da, long db, double cell, double radius);

// Count of distinct boxes (including the origin) reachable within `radius`
// of the origin box; exhaustive enumeration of offsets.
int count_boxes_within(double cell, double radius);

}  // namespace sinrlab
