#include "sinrlab/scenario.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace sinrlab {

SsfFamily Scenario::build_family() const {
    SsfBuildConfig cfg;
    cfg.seed = seed;
    return build_ssf(n_labels, effective_c(), ssf_strategy, cfg);
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string Scenario::save() const {
    std::ostringstream os;
    os << "# sinrlab scenario\n";
    os << "id: " << id << '\n';
    os << "alpha: " << fmt_double(params.alpha) << '\n';
    os << "beta: " << fmt_double(params.beta) << '\n';
    os << "noise: " << fmt_double(params.noise) << '\n';
    os << "epsilon: " << fmt_double(params.epsilon) << '\n';
    os << "power: " << fmt_double(params.power) << '\n';
    os << "n: " << n << '\n';
    os << "N: " << n_labels << '\n';
    os << "seed: " << seed << '\n';
    os << "k_density: " << dilution.k_density << '\n';
    os << "d_silence: " << dilution.d_silence << '\n';
    os << "ssf: " << to_string(ssf_strategy) << '\n';
    os << "stations:\n";
    for (const Station& s : stations)
        os << "  " << s.label << ' ' << fmt_double(s.pos.x) << ' ' << fmt_double(s.pos.y) << ' '
           << (s.initially_awake ? 1 : 0) << '\n';
    os << "end\n";
    return os.str();
}

Scenario Scenario::load(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    double alpha = 3, beta = 1, noise = 0.25, epsilon = 1, power = 0.5;
    Scenario sc;
    bool in_stations = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line == "end") break;
        if (in_stations) {
            std::istringstream ls(line);
            Station st;
            int awake = 1;
            if (!(ls >> st.label >> st.pos.x >> st.pos.y >> awake))
                throw std::invalid_argument("scenario: bad station line: " + line);
            st.initially_awake = awake != 0;
            sc.stations.push_back(st);
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("scenario: bad line: " + line);
        std::string key = line.substr(0, colon);
        std::string val = line.substr(colon + 1);
        while (!val.empty() && val.front() == ' ') val.erase(val.begin());
        if (key == "stations") {
            in_stations = true;
        } else if (key == "id") {
            sc.id = val;
        } else if (key == "alpha") {
            alpha = std::stod(val);
        } else if (key == "beta") {
            beta = std::stod(val);
        } else if (key == "noise") {
            noise = std::stod(val);
        } else if (key == "epsilon") {
            epsilon = std::stod(val);
        } else if (key == "power") {
            power = std::stod(val);
        } else if (key == "n") {
            sc.n = std::stoi(val);
        } else if (key == "N") {
            sc.n_labels = std::stoi(val);
        } else if (key == "seed") {
            sc.seed = std::stoull(val);
        } else if (key == "k_density") {
            sc.dilution.k_density = std::stoi(val);
        } else if (key == "d_silence") {
            sc.dilution.d_silence = std::stoi(val);
        } else if (key == "ssf") {
            auto s = ssf_strategy_from(val);
            if (!s) throw std::invalid_argument("scenario: unknown ssf strategy " + val);
            sc.ssf_strategy = *s;
        } else {
            throw std::invalid_argument("scenario: unknown key " + key);
        }
    }
    sc.params = SinrParams(alpha, beta, noise, epsilon, power);
    return sc;
}

}  // namespace sinrlab
