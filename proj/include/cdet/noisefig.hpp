#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdet::noisefig {

// Active-receiving-antenna noise-figure algebra. Every function here takes
// and returns LINEAR factors; decibels exist only at the CLI boundary.
// F_A: ambient noise factor, F_a: antenna, F_r: receiver, G_a: antenna gain.

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K
inline constexpr double kRoomTempK = 290.0;

inline double db_from_linear(double linear) {
    if (linear <= 0.0) throw std::invalid_argument("db_from_linear: value must be positive");
    return 10.0 * std::log10(linear);
}

inline double linear_from_db(double db) { return std::pow(10.0, db / 10.0); }

struct NoiseFigureParams {
    double f_ambient = 0.0;   // F_A, must exceed 1
    double f_antenna = 1.0;   // F_a
    double f_receiver = 1.0;  // F_r
    double g_antenna = 1.0;   // G_a, power gain

    void validate() const {
        if (!(f_ambient > 1.0))
            throw std::invalid_argument("ambient noise factor must exceed 1 (singular otherwise)");
        if (f_antenna < 1.0 || f_receiver < 1.0)
            throw std::invalid_argument("noise factors must be >= 1");
        if (!(g_antenna > 0.0)) throw std::invalid_argument("antenna gain must be positive");
    }
};

// Noise powers referred to the antenna output: ambient noise rides through
// the antenna gain, receiver noise is referred to its own input, so the
// power route and the factor route describe the same system.
struct NoisePowers {
    double n_ambient = 0.0;
    double n_antenna = 0.0;
    double n_receiver = 0.0;
};

inline NoisePowers powers_from_factors(const NoiseFigureParams& p, double bandwidth_hz) {
    p.validate();
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    const double ktb = kBoltzmann * kRoomTempK * bandwidth_hz;
    return {ktb * (p.f_ambient - 1.0) * p.g_antenna,
            ktb * (p.f_antenna - 1.0) * p.g_antenna,
            ktb * (p.f_receiver - 1.0)};
}

inline double output_snr(double signal_power, const NoisePowers& n) {
    if (!(signal_power > 0.0) || !(n.n_ambient > 0.0) || n.n_antenna < 0.0 || n.n_receiver < 0.0)
        throw std::invalid_argument("output_snr: powers must be positive");
    return signal_power / (n.n_ambient + n.n_antenna + n.n_receiver);
}

// System noise factor from powers: F_S = 1 + N_a/N_A + N_r/N_A.
inline double system_nf_from_powers(const NoisePowers& n) {
    if (!(n.n_ambient > 0.0)) throw std::invalid_argument("ambient noise power must be positive");
    return 1.0 + n.n_antenna / n.n_ambient + n.n_receiver / n.n_ambient;
}

// System noise factor from factors:
// F_S = 1 + (F_a-1)/(F_A-1) + (F_r-1)/((F_A-1)*G_a).
inline double system_nf(const NoiseFigureParams& p) {
    p.validate();
    return 1.0 + (p.f_antenna - 1.0) / (p.f_ambient - 1.0) +
           (p.f_receiver - 1.0) / ((p.f_ambient - 1.0) * p.g_antenna);
}

// Largest antenna noise factor that keeps F_S <= 2:
// F_a <= F_A - (F_r-1)/G_a. A bound below 1 means no realizable antenna
// meets the target.
inline double max_antenna_nf(double f_ambient, double f_receiver, double g_antenna) {
    if (!(g_antenna > 0.0)) throw std::invalid_argument("antenna gain must be positive");
    return f_ambient - (f_receiver - 1.0) / g_antenna;
}

inline bool antenna_nf_feasible(double bound) { return bound >= 1.0; }

// High-ambient-noise approximation F_SA = 1 + (F_a-1)/(F_A-1); always a
// lower bound on the exact value, tight when (F_r-1)/G_a << F_A-1.
inline double approx_system_nf(double f_ambient, double f_antenna) {
    if (!(f_ambient > 1.0)) throw std::invalid_argument("ambient noise factor must exceed 1");
    return 1.0 + (f_antenna - 1.0) / (f_ambient - 1.0);
}

// Ambient-noise-vs-frequency table: CSV with a required header
// "freq_mhz,f_ambient_db", interpolated linearly in dB over frequency.
class AmbientNoiseTable {
public:
    static AmbientNoiseTable from_csv_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open ambient-noise table: " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return from_csv(ss.str(), path);
    }

    static AmbientNoiseTable from_csv(const std::string& text, const std::string& origin = "<csv>") {
        AmbientNoiseTable t;
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
            if (line.empty()) continue;
            if (line_no == 1) {
                std::string squashed;
                for (char c : line)
                    if (c != ' ' && c != '\t') squashed.push_back(c);
                if (squashed != "freq_mhz,f_ambient_db")
                    throw std::runtime_error(origin + ": header must be 'freq_mhz, f_ambient_db'");
                continue;
            }
            const auto comma = line.find(',');
            if (comma == std::string::npos)
                throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": expected two columns");
            try {
                t.points_.push_back({std::stod(line.substr(0, comma)),
                                     std::stod(line.substr(comma + 1))});
            } catch (const std::exception&) {
                throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": bad number");
            }
        }
        if (t.points_.empty()) throw std::runtime_error(origin + ": no data rows");
        std::sort(t.points_.begin(), t.points_.end());
        for (std::size_t i = 1; i < t.points_.size(); ++i)
            if (t.points_[i].first == t.points_[i - 1].first)
                throw std::runtime_error(origin + ": duplicate frequency " +
                                         std::to_string(t.points_[i].first));
        return t;
    }

    double f_ambient_db_at(double freq_mhz) const {
        const auto& pts = points_;
        if (freq_mhz <= pts.front().first) return pts.front().second;
        if (freq_mhz >= pts.back().first) return pts.back().second;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (freq_mhz > pts[i].first) continue;
            const double t = (freq_mhz - pts[i - 1].first) / (pts[i].first - pts[i - 1].first);
            return pts[i - 1].second + t * (pts[i].second - pts[i - 1].second);
        }
        return pts.back().second;
    }

    double f_ambient_at(double freq_mhz) const { return linear_from_db(f_ambient_db_at(freq_mhz)); }

    double min_freq_mhz() const { return points_.front().first; }
    double max_freq_mhz() const { return points_.back().first; }

private:
    std::vector<std::pair<double, double>> points_;
};

}  // namespace cdet::noisefig
