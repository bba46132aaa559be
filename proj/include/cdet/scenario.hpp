#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdet/channel.hpp"
#include "cdet/detection.hpp"
#include "cdet/mac_params.hpp"
#include "cdet/station.hpp"

namespace cdet {

using nlohmann::json;

// Configuration problems carry the JSON path of the offending key so the CLI
// can point at it.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(const std::string& where, const std::string& what)
        : std::runtime_error(where.empty() ? what : where + ": " + what) {}
};

enum class OffsetMode { Zero, Explicit, Random };

struct Scenario {
    int stations = 2;
    double duration_s = 1.0;
    std::uint64_t seed = 1;
    MacParams mac;
    RateKbps initial_rate_kbps = 0;  // 0 = top of the rate set
    double p_e = 0.0;
    CaptureConfig capture;
    bool robust_control_frames = false;
    std::vector<double> rx_power_db;               // node-indexed, [0] is the AP
    std::vector<std::vector<bool>> audibility;     // empty = full
    CdetParams cdet;
    TrafficConfig default_traffic;
    PayloadConfig default_payload;
    PolicyConfig default_policy;
    OffsetMode offset_mode = OffsetMode::Zero;
    std::vector<SimTime> offsets_us;  // Explicit mode: AP first, then stations
    SimTime offset_range_us = 0;      // Random mode: uniform in [-range, range]
    std::vector<StationConfig> station_cfgs;  // resolved, one per station

    Duration duration_us() const {
        return static_cast<Duration>(std::llround(duration_s * 1e6));
    }

    ChannelConfig channel_config() const {
        ChannelConfig c;
        c.p_e = p_e;
        c.capture = capture;
        c.robust_control_frames = robust_control_frames;
        c.rx_power_db = rx_power_db;
        if (audibility.empty()) {
            c.hears.assign(static_cast<std::size_t>(stations) + 1,
                           std::vector<bool>(static_cast<std::size_t>(stations) + 1, true));
        } else {
            c.hears = audibility;
        }
        return c;
    }

    void validate() const {
        if (stations < 1) throw ScenarioError("stations", "need at least one station");
        if (!(duration_s > 0)) throw ScenarioError("duration_s", "must be positive");
        try {
            mac.validate();
        } catch (const std::invalid_argument& e) {
            throw ScenarioError("mac", e.what());
        }
        if (p_e < 0.0 || p_e > 1.0) throw ScenarioError("channel.p_e", "must be in [0, 1]");
        if (cdet.rw < 1) throw ScenarioError("cdet.rw", "RBP window must be >= 1");
        if (cdet.rq_horizon_us <= 0) throw ScenarioError("cdet.rq_horizon_us", "must be positive");
        if (rx_power_db.size() != static_cast<std::size_t>(stations) + 1)
            throw ScenarioError("channel.rx_power_db", "one value per station expected");
        if (!audibility.empty()) {
            const auto n = static_cast<std::size_t>(stations) + 1;
            if (audibility.size() != n)
                throw ScenarioError("channel.audibility", "matrix must be (stations+1)^2");
            for (std::size_t i = 0; i < n; ++i) {
                if (audibility[i].size() != n)
                    throw ScenarioError("channel.audibility", "matrix must be (stations+1)^2");
                if (!audibility[i][0] || !audibility[0][i])
                    throw ScenarioError("channel.audibility",
                                        "every station and the AP must hear each other");
            }
        }
        if (offset_mode == OffsetMode::Explicit &&
            offsets_us.size() != static_cast<std::size_t>(stations) + 1)
            throw ScenarioError("clock_offsets.offsets_us",
                                "expected stations+1 entries (AP first)");
        if (offset_mode == OffsetMode::Random && offset_range_us < 0)
            throw ScenarioError("clock_offsets.range_us", "must be non-negative");
        for (const auto& sc : station_cfgs) {
            if (sc.traffic.type == TrafficConfig::Type::Poisson && !(sc.traffic.lambda_fps > 0))
                throw ScenarioError("traffic.lambda_fps", "must be positive");
            if (sc.payload.type == PayloadConfig::Type::Fixed) {
                if (sc.payload.bits < 0) throw ScenarioError("payload.bits", "must be >= 0");
            } else if (sc.payload.min_bits < 0 || sc.payload.min_bits > sc.payload.max_bits) {
                throw ScenarioError("payload", "need 0 <= min_bits <= max_bits");
            }
            const RateKbps r = sc.initial_rate_kbps;
            if (r != 0 && std::find(mac.rates_kbps.begin(), mac.rates_kbps.end(), r) ==
                              mac.rates_kbps.end())
                throw ScenarioError("data_rate_mbps", "initial rate not in the rate set");
            if (sc.policy.fail_threshold < 1 || sc.policy.success_threshold < 1)
                throw ScenarioError("policy", "thresholds must be >= 1");
        }
    }

    static Scenario from_json(const json& j);
    json to_json() const;
};

namespace detail {

inline void expect_keys(const json& obj, const std::string& where,
                        std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw ScenarioError(where, "unknown key '" + it.key() + "'");
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ScenarioError(where + "." + key, "wrong type");
    }
}

inline RateKbps rate_kbps_from_mbps(double mbps) {
    return static_cast<RateKbps>(std::llround(mbps * 1000.0));
}

inline TrafficConfig parse_traffic(const json& j, const std::string& where) {
    expect_keys(j, where, {"type", "lambda_fps"});
    TrafficConfig t;
    const auto type = get_or<std::string>(j, "type", "saturated", where);
    if (type == "saturated") {
        t.type = TrafficConfig::Type::Saturated;
    } else if (type == "poisson") {
        t.type = TrafficConfig::Type::Poisson;
        t.lambda_fps = get_or<double>(j, "lambda_fps", 0.0, where);
    } else {
        throw ScenarioError(where + ".type", "expected 'saturated' or 'poisson'");
    }
    return t;
}

inline PayloadConfig parse_payload(const json& j, const std::string& where) {
    expect_keys(j, where, {"type", "bits", "min_bits", "max_bits"});
    PayloadConfig p;
    const auto type = get_or<std::string>(j, "type", "fixed", where);
    if (type == "fixed") {
        p.type = PayloadConfig::Type::Fixed;
        p.bits = get_or<std::int64_t>(j, "bits", 8000, where);
    } else if (type == "uniform") {
        p.type = PayloadConfig::Type::Uniform;
        p.min_bits = get_or<std::int64_t>(j, "min_bits", 0, where);
        p.max_bits = get_or<std::int64_t>(j, "max_bits", 0, where);
    } else {
        throw ScenarioError(where + ".type", "expected 'fixed' or 'uniform'");
    }
    return p;
}

inline PolicyConfig parse_policy(const json& j, const std::string& where, PolicyConfig base) {
    expect_keys(j, where, {"backoff", "rate", "arf_fail_threshold", "arf_success_threshold"});
    if (j.contains("backoff")) {
        const auto s = j.at("backoff").get<std::string>();
        if (s == "standard") base.backoff = BackoffMode::Standard;
        else if (s == "differentiated") base.backoff = BackoffMode::Differentiated;
        else throw ScenarioError(where + ".backoff", "expected 'standard' or 'differentiated'");
    }
    if (j.contains("rate")) {
        const auto s = j.at("rate").get<std::string>();
        if (s == "off") base.rate = RateMode::Off;
        else if (s == "standard_arf") base.rate = RateMode::StandardArf;
        else if (s == "differentiated_arf") base.rate = RateMode::DifferentiatedArf;
        else throw ScenarioError(where + ".rate", "expected 'off', 'standard_arf' or 'differentiated_arf'");
    }
    base.fail_threshold = get_or<int>(j, "arf_fail_threshold", base.fail_threshold, where);
    base.success_threshold = get_or<int>(j, "arf_success_threshold", base.success_threshold, where);
    return base;
}

}  // namespace detail

inline Scenario Scenario::from_json(const json& j) {
    using namespace detail;
    if (!j.is_object()) throw ScenarioError("", "scenario must be a JSON object");
    expect_keys(j, "scenario",
                {"stations", "duration_s", "seed", "traffic", "payload", "mac", "channel",
                 "cdet", "policy", "clock_offsets", "per_station"});
    Scenario s;
    s.stations = get_or<int>(j, "stations", 2, "scenario");
    s.duration_s = get_or<double>(j, "duration_s", 1.0, "scenario");
    s.seed = get_or<std::uint64_t>(j, "seed", 1, "scenario");

    if (j.contains("traffic")) s.default_traffic = parse_traffic(j.at("traffic"), "traffic");
    if (j.contains("payload")) s.default_payload = parse_payload(j.at("payload"), "payload");
    if (j.contains("policy"))
        s.default_policy = parse_policy(j.at("policy"), "policy", PolicyConfig{});

    if (j.contains("mac")) {
        const json& m = j.at("mac");
        expect_keys(m, "mac",
                    {"slot_us", "sifs_us", "difs_us", "cw_min", "cw_max", "phy_preamble_us",
                     "mac_header_bits", "ack_bits", "et_frame_bits", "notice_bits", "rates_mbps",
                     "data_rate_mbps", "control_rate_mbps", "retry_limit", "ack_timeout_us",
                     "t_g_us"});
        s.mac.slot_us = get_or<Duration>(m, "slot_us", s.mac.slot_us, "mac");
        s.mac.sifs_us = get_or<Duration>(m, "sifs_us", s.mac.sifs_us, "mac");
        s.mac.difs_us = get_or<Duration>(m, "difs_us", s.mac.sifs_us + 2 * s.mac.slot_us, "mac");
        s.mac.cw_min = get_or<int>(m, "cw_min", s.mac.cw_min, "mac");
        s.mac.cw_max = get_or<int>(m, "cw_max", s.mac.cw_max, "mac");
        s.mac.phy_preamble_us = get_or<Duration>(m, "phy_preamble_us", s.mac.phy_preamble_us, "mac");
        s.mac.mac_header_bits = get_or<std::int64_t>(m, "mac_header_bits", s.mac.mac_header_bits, "mac");
        s.mac.ack_bits = get_or<std::int64_t>(m, "ack_bits", s.mac.ack_bits, "mac");
        s.mac.et_frame_bits = get_or<std::int64_t>(m, "et_frame_bits", s.mac.et_frame_bits, "mac");
        s.mac.notice_bits = get_or<std::int64_t>(m, "notice_bits", s.mac.notice_bits, "mac");
        if (m.contains("rates_mbps")) {
            s.mac.rates_kbps.clear();
            for (const auto& r : m.at("rates_mbps"))
                s.mac.rates_kbps.push_back(rate_kbps_from_mbps(r.get<double>()));
        }
        if (m.contains("data_rate_mbps"))
            s.initial_rate_kbps = rate_kbps_from_mbps(m.at("data_rate_mbps").get<double>());
        if (m.contains("control_rate_mbps"))
            s.mac.control_rate_kbps = rate_kbps_from_mbps(m.at("control_rate_mbps").get<double>());
        s.mac.retry_limit = get_or<int>(m, "retry_limit", s.mac.retry_limit, "mac");
        s.mac.ack_timeout_us = get_or<Duration>(m, "ack_timeout_us", s.mac.ack_timeout_us, "mac");
        s.mac.t_g_us = get_or<Duration>(m, "t_g_us", s.mac.t_g_us, "mac");
    } else {
        s.mac.difs_us = s.mac.sifs_us + 2 * s.mac.slot_us;
    }

    s.rx_power_db.assign(static_cast<std::size_t>(s.stations) + 1, 0.0);
    if (j.contains("channel")) {
        const json& c = j.at("channel");
        expect_keys(c, "channel",
                    {"p_e", "capture", "rx_power_db", "audibility", "robust_control_frames"});
        s.p_e = get_or<double>(c, "p_e", 0.0, "channel");
        if (c.contains("capture")) {
            const json& cap = c.at("capture");
            expect_keys(cap, "channel.capture", {"enabled", "threshold_db"});
            s.capture.enabled = get_or<bool>(cap, "enabled", false, "channel.capture");
            s.capture.threshold_db = get_or<double>(cap, "threshold_db", 6.0, "channel.capture");
        }
        s.robust_control_frames = get_or<bool>(c, "robust_control_frames", false, "channel");
        if (c.contains("rx_power_db")) {
            const json& p = c.at("rx_power_db");
            if (p.is_number()) {
                std::fill(s.rx_power_db.begin(), s.rx_power_db.end(), p.get<double>());
            } else if (p.is_array()) {
                if (p.size() != static_cast<std::size_t>(s.stations))
                    throw ScenarioError("channel.rx_power_db", "expected one value per station");
                for (int i = 0; i < s.stations; ++i)
                    s.rx_power_db[static_cast<std::size_t>(i) + 1] = p.at(i).get<double>();
            } else {
                throw ScenarioError("channel.rx_power_db", "expected number or array");
            }
        }
        if (c.contains("audibility")) {
            const json& a = c.at("audibility");
            if (a.is_string()) {
                if (a.get<std::string>() != "full")
                    throw ScenarioError("channel.audibility", "expected 'full' or a matrix");
            } else if (a.is_array()) {
                for (const auto& row : a) {
                    std::vector<bool> r;
                    for (const auto& v : row)
                        r.push_back(v.is_boolean() ? v.get<bool>() : v.get<int>() != 0);
                    s.audibility.push_back(std::move(r));
                }
            } else {
                throw ScenarioError("channel.audibility", "expected 'full' or a matrix");
            }
        }
    }

    if (j.contains("cdet")) {
        const json& c = j.at("cdet");
        expect_keys(c, "cdet",
                    {"enabled", "rw", "t_g_us", "strict_overlap", "rq_horizon_us"});
        s.cdet.enabled = get_or<bool>(c, "enabled", true, "cdet");
        s.cdet.rw = get_or<int>(c, "rw", 16, "cdet");
        s.mac.t_g_us = get_or<Duration>(c, "t_g_us", s.mac.t_g_us, "cdet");
        s.cdet.overlap_rule = get_or<bool>(c, "strict_overlap", false, "cdet")
                                  ? OverlapRule::StrictStarts
                                  : OverlapRule::Inclusive;
        s.cdet.rq_horizon_us = get_or<Duration>(c, "rq_horizon_us", s.cdet.rq_horizon_us, "cdet");
    }

    if (j.contains("clock_offsets")) {
        const json& c = j.at("clock_offsets");
        expect_keys(c, "clock_offsets", {"type", "offsets_us", "range_us"});
        const auto type = get_or<std::string>(c, "type", "zero", "clock_offsets");
        if (type == "zero") {
            s.offset_mode = OffsetMode::Zero;
        } else if (type == "explicit") {
            s.offset_mode = OffsetMode::Explicit;
            if (!c.contains("offsets_us"))
                throw ScenarioError("clock_offsets.offsets_us", "required for explicit offsets");
            for (const auto& v : c.at("offsets_us")) s.offsets_us.push_back(v.get<SimTime>());
        } else if (type == "random") {
            s.offset_mode = OffsetMode::Random;
            s.offset_range_us = get_or<SimTime>(c, "range_us", 1'000'000, "clock_offsets");
        } else {
            throw ScenarioError("clock_offsets.type", "expected 'zero', 'explicit' or 'random'");
        }
    }

    s.station_cfgs.resize(static_cast<std::size_t>(s.stations));
    for (int i = 0; i < s.stations; ++i) {
        auto& sc = s.station_cfgs[static_cast<std::size_t>(i)];
        sc.id = i + 1;
        sc.traffic = s.default_traffic;
        sc.payload = s.default_payload;
        sc.policy = s.default_policy;
        sc.initial_rate_kbps = s.initial_rate_kbps;
    }
    if (j.contains("per_station")) {
        for (std::size_t k = 0; k < j.at("per_station").size(); ++k) {
            const json& e = j.at("per_station").at(k);
            const std::string where = "per_station[" + std::to_string(k) + "]";
            expect_keys(e, where,
                        {"id", "traffic", "payload", "policy", "rx_power_db", "data_rate_mbps"});
            const int id = get_or<int>(e, "id", 0, where);
            if (id < 1 || id > s.stations)
                throw ScenarioError(where + ".id", "station does not exist");
            auto& sc = s.station_cfgs[static_cast<std::size_t>(id) - 1];
            if (e.contains("traffic")) sc.traffic = parse_traffic(e.at("traffic"), where + ".traffic");
            if (e.contains("payload")) sc.payload = parse_payload(e.at("payload"), where + ".payload");
            if (e.contains("policy")) sc.policy = parse_policy(e.at("policy"), where + ".policy", sc.policy);
            if (e.contains("rx_power_db"))
                s.rx_power_db[static_cast<std::size_t>(id)] = e.at("rx_power_db").get<double>();
            if (e.contains("data_rate_mbps"))
                sc.initial_rate_kbps =
                    rate_kbps_from_mbps(e.at("data_rate_mbps").get<double>());
        }
    }

    s.validate();
    return s;
}

inline json Scenario::to_json() const {
    json j;
    j["stations"] = stations;
    j["duration_s"] = duration_s;
    j["seed"] = seed;
    auto traffic_json = [](const TrafficConfig& t) {
        json out;
        out["type"] = t.type == TrafficConfig::Type::Saturated ? "saturated" : "poisson";
        if (t.type == TrafficConfig::Type::Poisson) out["lambda_fps"] = t.lambda_fps;
        return out;
    };
    auto payload_json = [](const PayloadConfig& p) {
        json out;
        if (p.type == PayloadConfig::Type::Fixed) {
            out["type"] = "fixed";
            out["bits"] = p.bits;
        } else {
            out["type"] = "uniform";
            out["min_bits"] = p.min_bits;
            out["max_bits"] = p.max_bits;
        }
        return out;
    };
    auto policy_json = [](const PolicyConfig& p) {
        json out;
        out["backoff"] = p.backoff == BackoffMode::Standard ? "standard" : "differentiated";
        out["rate"] = p.rate == RateMode::Off
                          ? "off"
                          : (p.rate == RateMode::StandardArf ? "standard_arf" : "differentiated_arf");
        out["arf_fail_threshold"] = p.fail_threshold;
        out["arf_success_threshold"] = p.success_threshold;
        return out;
    };
    j["traffic"] = traffic_json(default_traffic);
    j["payload"] = payload_json(default_payload);
    j["policy"] = policy_json(default_policy);
    json m;
    m["slot_us"] = mac.slot_us;
    m["sifs_us"] = mac.sifs_us;
    m["difs_us"] = mac.difs_us;
    m["cw_min"] = mac.cw_min;
    m["cw_max"] = mac.cw_max;
    m["phy_preamble_us"] = mac.phy_preamble_us;
    m["mac_header_bits"] = mac.mac_header_bits;
    m["ack_bits"] = mac.ack_bits;
    m["et_frame_bits"] = mac.et_frame_bits;
    m["notice_bits"] = mac.notice_bits;
    json rates = json::array();
    for (auto r : mac.rates_kbps) rates.push_back(static_cast<double>(r) / 1000.0);
    m["rates_mbps"] = rates;
    m["data_rate_mbps"] = static_cast<double>(
                              initial_rate_kbps > 0 ? initial_rate_kbps : mac.rates_kbps.back()) /
                          1000.0;
    m["control_rate_mbps"] = static_cast<double>(mac.control_rate_kbps) / 1000.0;
    m["retry_limit"] = mac.retry_limit;
    m["ack_timeout_us"] = mac.ack_timeout_us;
    m["t_g_us"] = mac.t_g_us;
    j["mac"] = m;
    json c;
    c["p_e"] = p_e;
    c["capture"] = {{"enabled", capture.enabled}, {"threshold_db", capture.threshold_db}};
    c["robust_control_frames"] = robust_control_frames;
    json powers = json::array();
    for (std::size_t i = 1; i < rx_power_db.size(); ++i) powers.push_back(rx_power_db[i]);
    c["rx_power_db"] = powers;
    if (audibility.empty()) {
        c["audibility"] = "full";
    } else {
        json a = json::array();
        for (const auto& row : audibility) {
            json r = json::array();
            for (bool b : row) r.push_back(b);
            a.push_back(r);
        }
        c["audibility"] = a;
    }
    j["channel"] = c;
    j["cdet"] = {{"enabled", cdet.enabled},
                 {"rw", cdet.rw},
                 {"t_g_us", mac.t_g_us},
                 {"strict_overlap", cdet.overlap_rule == OverlapRule::StrictStarts},
                 {"rq_horizon_us", cdet.rq_horizon_us}};
    json off;
    switch (offset_mode) {
        case OffsetMode::Zero: off["type"] = "zero"; break;
        case OffsetMode::Explicit:
            off["type"] = "explicit";
            off["offsets_us"] = offsets_us;
            break;
        case OffsetMode::Random:
            off["type"] = "random";
            off["range_us"] = offset_range_us;
            break;
    }
    j["clock_offsets"] = off;
    json per = json::array();
    for (const auto& sc : station_cfgs) {
        json e;
        e["id"] = sc.id;
        e["traffic"] = traffic_json(sc.traffic);
        e["payload"] = payload_json(sc.payload);
        e["policy"] = policy_json(sc.policy);
        e["rx_power_db"] = rx_power_db[static_cast<std::size_t>(sc.id)];
        e["data_rate_mbps"] = static_cast<double>(sc.initial_rate_kbps > 0
                                                      ? sc.initial_rate_kbps
                                                      : mac.rates_kbps.back()) /
                              1000.0;
        per.push_back(e);
    }
    j["per_station"] = per;
    return j;
}

// --- file loading and overrides ---------------------------------------------

inline json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports a byte offset; turn it into line:column.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
        }
        throw ScenarioError(origin + ":" + std::to_string(line) + ":" + std::to_string(col),
                            e.what());
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

// Dotted-path override: "cdet.rw=8", "per_station.0.rx_power_db=10". The
// value is parsed as JSON when possible, else taken as a string.
inline void apply_override(json& root, const std::string& dotted_key, const std::string& value) {
    json* node = &root;
    std::string rest = dotted_key;
    while (true) {
        const auto dot = rest.find('.');
        const std::string head = rest.substr(0, dot);
        const bool leaf = dot == std::string::npos;
        if (node->is_array()) {
            std::size_t idx = 0;
            try {
                idx = std::stoul(head);
            } catch (const std::exception&) {
                throw ScenarioError(dotted_key, "'" + head + "' is not an array index");
            }
            if (idx >= node->size()) throw ScenarioError(dotted_key, "array index out of range");
            node = &(*node)[idx];
        } else {
            if (!leaf && !node->contains(head)) (*node)[head] = json::object();
            node = &(*node)[head];
        }
        if (leaf) break;
        rest = rest.substr(dot + 1);
    }
    try {
        *node = json::parse(value);
    } catch (const json::parse_error&) {
        *node = value;
    }
}

inline void collect_leaf_keys(const json& j, const std::string& prefix,
                              std::vector<std::string>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            collect_leaf_keys(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            collect_leaf_keys(j.at(i), prefix + "." + std::to_string(i), out);
    } else {
        out.push_back(prefix);
    }
}

// All addressable keys of a scenario, for sweep validation and suggestions.
inline std::vector<std::string> known_scenario_keys(const json& config) {
    std::vector<std::string> keys;
    collect_leaf_keys(Scenario::from_json(config).to_json(), "", keys);
    collect_leaf_keys(config, "", keys);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

inline std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t jj = 0; jj <= b.size(); ++jj) prev[jj] = jj;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t jj = 1; jj <= b.size(); ++jj) {
            const std::size_t sub = prev[jj - 1] + (a[i - 1] == b[jj - 1] ? 0 : 1);
            cur[jj] = std::min({prev[jj] + 1, cur[jj - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

inline std::string closest_key(const std::string& wanted, const std::vector<std::string>& keys) {
    std::string best;
    std::size_t best_d = static_cast<std::size_t>(-1);
    for (const auto& k : keys) {
        const auto d = edit_distance(wanted, k);
        if (d < best_d) { best_d = d; best = k; }
    }
    return best;
}

}  // namespace cdet
