#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "sinrlab/common.hpp"

namespace sinrlab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double dist(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Physical-model constants. Construction rejects parameter combinations the
// model cannot support (alpha <= 2, zero noise, non-positive power, ...).
struct SinrParams {
    double alpha;    // path loss exponent, must exceed 2
    double beta;     // reception threshold, >= 1
    double noise;    // ambient noise, > 0
    double epsilon;  // device sensitivity, > 0
    double power;    // uniform transmit power, > 0

    SinrParams(double alpha, double beta, double noise, double epsilon, double power);

    // Defaults chosen so the range comes out exactly 1.0.
    static SinrParams defaults() { return SinrParams(3.0, 1.0, 0.25, 1.0, 0.5); }

    // Received power floor of the weak-device inequality.
    double rx_floor() const { return (1.0 + epsilon) * beta * noise; }
};

struct Station {
    Label label = 0;
    Vec2 pos;
    bool initially_awake = true;
};

// Raw SINR quotient of sender's signal at the listener against noise plus the
// other transmitters' interference. Throws std::invalid_argument on a zero
// distance or when the listener itself transmits.
double sinr_ratio(const Station& sender, const Station& listener,
                  std::span<const Station> transmitters, const SinrParams& params);

// Weak-device reception: the SINR quotient reaches beta and the bare received
// power reaches (1+epsilon)*beta*noise.
bool receives(const Station& sender, const Station& listener,
              std::span<const Station> transmitters, const SinrParams& params);

// Largest interference-free distance at which reception succeeds.
double transmission_range(const SinrParams& params);

}  // namespace sinrlab
