#include "doctest.h"
#include "sinrlab/grid.hpp"

using namespace sinrlab;

TEST_CASE("grid coordinates floor into half-open cells") {
    CHECK(grid_coord({0.0, 0.0}, 1.0) == GridBox{0, 0, 1.0});
    CHECK(grid_coord({1.5, 2.0}, 1.0) == GridBox{1, 2, 1.0});
    CHECK(grid_coord({-0.5, 0.2}, 1.0) == GridBox{-1, 0, 1.0});
    CHECK_THROWS_AS(grid_coord({0, 0}, 0.0), std::invalid_argument);
}

TEST_CASE("box distance literal formula") {
    GridBox o{0, 0, 1.0};
    CHECK(box_distance(o, o) == 0);
    CHECK(box_distance(o, GridBox{2, 0, 1.0}) == 1);
    CHECK(box_distance(o, GridBox{5, 3, 1.0}) == 4);
    // the printed formula's quirks, kept verbatim
    CHECK(box_distance(o, GridBox{1, 0, 1.0}) == 1);   // edge-adjacent
    CHECK(box_distance(o, GridBox{1, 1, 1.0}) == 0);   // diagonal neighbour
    CHECK(box_distance(o, GridBox{0, 1, 1.0}) == 1);
    CHECK_THROWS_AS(box_distance(o, GridBox{0, 0, 2.0}), std::invalid_argument);
}

TEST_CASE("box distance is symmetric") {
    for (long a = -10; a <= 10; ++a)
        for (long b = -10; b <= 10; ++b) {
            GridBox p{0, 0, 1.0}, q{a, b, 1.0};
            CHECK(box_distance(p, q) == box_distance(q, p));
        }
}

TEST_CASE("pivotal-grid reach constants") {
    double r = 1.0;
    double cell = pivotal_cell(r);
    CHECK(count_boxes_within(cell, r) == 21);
    CHECK(count_boxes_within(cell, 2 * r) == 45);
    int within3 = count_boxes_within(cell, 3 * r);
    CHECK(within3 <= 121);
    CHECK(within3 == 97);  // exhaustive enumeration of offsets
}
