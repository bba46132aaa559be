#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cdet/ap.hpp"
#include "cdet/channel.hpp"
#include "cdet/event_queue.hpp"
#include "cdet/metrics.hpp"
#include "cdet/observer.hpp"
#include "cdet/scenario.hpp"
#include "cdet/station.hpp"
#include "cdet/trace.hpp"

namespace cdet {

struct RunResult {
    RunMetrics metrics;
    std::vector<AttemptRow> attempts;
    std::vector<EnergyRow> energies;
    std::vector<std::string> wire_log;
    std::vector<SimTime> offsets_us;  // AP first, then stations
    std::string trace;                // empty unless requested
    std::string transcript;           // offset-free protocol summary
};

namespace detail {

// Offsets come from a stream derived from, but independent of, the main seed:
// drawing them must not perturb the protocol's randomness.
inline std::vector<SimTime> resolve_offsets(const Scenario& sc) {
    std::vector<SimTime> off(static_cast<std::size_t>(sc.stations) + 1, 0);
    switch (sc.offset_mode) {
        case OffsetMode::Zero:
            break;
        case OffsetMode::Explicit:
            off = sc.offsets_us;
            break;
        case OffsetMode::Random: {
            SeededRng rng(sc.seed ^ 0x9E3779B97F4A7C15ULL);
            for (auto& o : off) o = uniform_int(rng, -sc.offset_range_us, sc.offset_range_us);
            break;
        }
    }
    return off;
}

// Everything the clocks cannot influence: wire values, detections,
// classifications, energies. Two runs of one scenario must produce this
// byte-identically no matter how the per-station clocks are skewed.
inline std::string build_transcript(const MetricsCollector& metrics) {
    std::ostringstream out;
    for (const auto& w : metrics.wire_log()) out << "wire " << w << '\n';
    for (const auto& e : metrics.energy_rows()) {
        out << "energy id=" << e.id << " est=" << e.est << " edt=" << e.edt
            << " n=" << e.n_records << " outcome=" << to_string(e.outcome) << '\n';
    }
    for (const auto& a : metrics.attempt_rows()) {
        out << "attempt id=" << a.id << " node=" << a.node << " st=" << a.st_global
            << " dt=" << a.dur << " kind=" << to_string(a.kind) << " result=";
        if (!a.concluded) out << "open";
        else if (a.acked) out << "acked";
        else out << to_string(a.cause);
        out << " first=" << a.det_first << " second=" << a.det_second << " fn=" << a.det_fn
            << '\n';
    }
    return out.str();
}

}  // namespace detail

inline RunResult run_scenario(const Scenario& sc, bool with_trace = false) {
    sc.validate();
    EventQueue queue;
    SeededRng rng(sc.seed);
    IdSource ids;
    const auto offsets = detail::resolve_offsets(sc);

    Channel channel(queue, rng, sc.channel_config(), sc.stations + 1);
    MetricsCollector metrics(sc.mac);
    TraceWriter trace;
    MultiObserver obs;
    obs.add(&metrics);
    if (with_trace) obs.add(&trace);

    Ap ap(queue, channel, sc.mac, sc.cdet, offsets[0], obs);
    channel.set_energy_observer(&ap);

    std::vector<std::unique_ptr<Station>> stations;
    stations.reserve(static_cast<std::size_t>(sc.stations));
    for (int i = 1; i <= sc.stations; ++i) {
        StationConfig cfg = sc.station_cfgs[static_cast<std::size_t>(i) - 1];
        cfg.clock_offset_us = offsets[static_cast<std::size_t>(i)];
        stations.push_back(std::make_unique<Station>(queue, channel, rng, sc.mac, sc.cdet, cfg,
                                                     ids, obs));
        channel.attach(i, stations.back().get());
    }
    for (auto& st : stations) st->start();

    queue.run_until(sc.duration_us());

    RunResult result;
    result.metrics = metrics.finalize(sc.seed, sc.duration_us(), sc.stations);
    result.attempts = metrics.attempt_rows();
    result.energies = metrics.energy_rows();
    result.wire_log = metrics.wire_log();
    result.offsets_us = offsets;
    if (with_trace) result.trace = trace.str();
    result.transcript = detail::build_transcript(metrics);
    return result;
}

}  // namespace cdet
