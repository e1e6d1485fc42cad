#include "sinrlab/sinr.hpp"

namespace sinrlab {

SinrParams::SinrParams(double alpha_, double beta_, double noise_, double epsilon_, double power_)
    : alpha(alpha_), beta(beta_), noise(noise_), epsilon(epsilon_), power(power_) {
    if (!(alpha > 2.0)) throw std::invalid_argument("sinr params: alpha must be > 2");
    if (!(beta >= 1.0)) throw std::invalid_argument("sinr params: beta must be >= 1");
    if (!(noise > 0.0))
        throw std::invalid_argument("sinr params: noise must be > 0 (zero noise makes range unbounded)");
    if (!(epsilon > 0.0)) throw std::invalid_argument("sinr params: epsilon must be > 0");
    if (!(power > 0.0)) throw std::invalid_argument("sinr params: power must be > 0");
}

double sinr_ratio(const Station& sender, const Station& listener,
                  std::span<const Station> transmitters, const SinrParams& params) {
    bool sender_listed = false;
    double interference = 0.0;
    for (const Station& t : transmitters) {
        if (t.label == listener.label)
            throw std::invalid_argument("sinr_ratio: listener is transmitting");
        if (t.label == sender.label) {
            sender_listed = true;
            continue;
        }
        double d = dist(t.pos, listener.pos);
        if (d <= 0.0) throw std::invalid_argument("sinr_ratio: zero distance");
        interference += params.power / std::pow(d, params.alpha);
    }
    if (!sender_listed) throw std::invalid_argument("sinr_ratio: sender not in transmitter set");
    double d = dist(sender.pos, listener.pos);
    if (d <= 0.0) throw std::invalid_argument("sinr_ratio: zero distance");
    double signal = params.power / std::pow(d, params.alpha);
    return signal / (params.noise + interference);
}

bool receives(const Station& sender, const Station& listener,
              std::span<const Station> transmitters, const SinrParams& params) {
    double ratio = sinr_ratio(sender, listener, transmitters, params);
    if (ratio < params.beta) return false;
    double d = dist(sender.pos, listener.pos);
    double signal = params.power / std::pow(d, params.alpha);
    return signal >= params.rx_floor();
}

double transmission_range(const SinrParams& params) {
    // The weak-device inequality binds (epsilon > 0 makes it strictly stronger
    // than the SINR threshold when nothing else transmits).
    return std::pow(params.power / params.rx_floor(), 1.0 / params.alpha);
}

}  // namespace sinrlab
