#include <cmath>

#include "sinrlab/grid.hpp"
#include "sinrlab/scenario.hpp"

namespace sinrlab {

namespace {

// Adversarial check for one silence distance: the sender sits at the worst
// corner of its box, the listeners are the farthest in-box point and the
// sqrt(2)*cell diagonal neighbour, boxes at box-distance < d are silent, and
// one box at exactly box-distance d transmits k stations from the corner
// closest to the listener.
bool silence_distance_suffices(const SinrParams& params, int d, int k) {
    double r = transmission_range(params);
    double cell = pivotal_cell(r);
    Vec2 sender{cell * (1.0 - 1e-9), cell * (1.0 - 1e-9)};
    GridBox sbox{0, 0, cell};
    Vec2 in_box{0.0, 0.0};
    Vec2 diag{sender.x + cell, sender.y + cell};
    for (const Vec2& v : {in_box, diag}) {
        double dist_sv = std::hypot(sender.x - v.x, sender.y - v.y);
        double signal = params.power / std::pow(dist_sv, params.alpha);
        if (signal < params.rx_floor()) return false;
        // worst interfering box at exactly box-distance d from the sender's box
        double worst = 0.0;
        for (long da = -(d + 3); da <= d + 3; ++da)
            for (long db = -(d + 3); db <= d + 3; ++db) {
                GridBox w{da, db, cell};
                if (box_distance(sbox, w) != d) continue;
                double x0 = da * cell, x1 = (da + 1) * cell;
                double y0 = db * cell, y1 = (db + 1) * cell;
                double cx = std::min(std::max(v.x, x0), x1);
                double cy = std::min(std::max(v.y, y0), y1);
                double dd = std::hypot(cx - v.x, cy - v.y);
                if (dd <= 0.0) return false;  // an allowed transmitter can touch the listener
                worst = std::max(worst, k * params.power / std::pow(dd, params.alpha));
            }
        if (signal < params.beta * (params.noise + worst)) return false;
    }
    return true;
}

}  // namespace

DilutionConfig calibrate_dilution(const SinrParams& params, int k_density) {
    if (k_density < 1) throw std::invalid_argument("calibrate_dilution: k_density must be >= 1");
    for (int d = 1; d <= 8; ++d) {
        if (silence_distance_suffices(params, d, k_density))
            return DilutionConfig{k_density, d};
    }
    throw CalibrationFailed("calibrate_dilution: no silence distance <= 8 suffices");
}

}  // namespace sinrlab
