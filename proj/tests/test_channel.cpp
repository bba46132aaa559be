#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "cdet/channel.hpp"

using namespace cdet;

namespace {

TransmissionRecord rec(NodeId src, SimTime start, Duration dur, double power_db = 0.0) {
    TransmissionRecord r;
    r.source = src;
    r.start = start;
    r.duration = dur;
    r.rx_power_db = power_db;
    return r;
}

// Brute-force oracle: the union of occupied integer ticks. Contiguous iff
// the tick count equals the extent.
struct TickUnion {
    std::set<SimTime> ticks;
    explicit TickUnion(const std::vector<TransmissionRecord>& rs) {
        for (const auto& r : rs)
            for (SimTime t = r.start; t < r.end(); ++t) ticks.insert(t);
    }
    bool contiguous() const {
        return !ticks.empty() &&
               static_cast<SimTime>(ticks.size()) == *ticks.rbegin() - *ticks.begin() + 1;
    }
    SimTime start() const { return *ticks.begin(); }
    Duration extent() const { return *ticks.rbegin() - *ticks.begin() + 1; }
};

}  // namespace

TEST_CASE("merged energy: singleton") {
    const std::vector<TransmissionRecord> rs{rec(1, 1000, 300)};
    const auto e = merged_energy_interval(rs);
    CHECK(e.est_global == 1000);
    CHECK(e.edt == 300);
}

TEST_CASE("merged energy: simultaneous start, longer frame dominates") {
    const std::vector<TransmissionRecord> rs{rec(1, 1000, 300), rec(2, 1000, 340)};
    const auto e = merged_energy_interval(rs);
    CHECK(e.est_global == 1000);
    CHECK(e.edt == 340);
}

TEST_CASE("merged energy: staggered overlap") {
    const std::vector<TransmissionRecord> rs{rec(1, 1000, 300), rec(2, 1100, 300)};
    const auto e = merged_energy_interval(rs);
    CHECK(e.est_global == 1000);
    CHECK(e.edt == 400);
}

TEST_CASE("merged energy rejects empty and disjoint sets") {
    CHECK_THROWS_AS(merged_energy_interval({}), std::invalid_argument);
    const std::vector<TransmissionRecord> gap{rec(1, 0, 10), rec(2, 11, 10)};
    CHECK_THROWS_AS(merged_energy_interval(gap), std::invalid_argument);
    // Touching records are one contiguous energy.
    const std::vector<TransmissionRecord> touch{rec(1, 0, 10), rec(2, 10, 10)};
    CHECK(merged_energy_interval(touch).edt == 20);
}

// Randomized equivalence against the per-tick union oracle, both for
// contiguous sets (value equality) and gapped sets (rejection).
TEST_CASE("merged energy equals the tick-union oracle") {
    SeededRng rng(31);
    int contiguous_cases = 0, gapped_cases = 0;
    for (int it = 0; it < 3000; ++it) {
        const int n = static_cast<int>(uniform_int(rng, 1, 4));
        std::vector<TransmissionRecord> rs;
        for (int i = 0; i < n; ++i)
            rs.push_back(rec(i + 1, uniform_int(rng, 0, 25), uniform_int(rng, 1, 12)));
        const TickUnion oracle(rs);
        if (oracle.contiguous()) {
            ++contiguous_cases;
            const auto e = merged_energy_interval(rs);
            CHECK(e.est_global == oracle.start());
            CHECK(e.edt == oracle.extent());
            // The union extent is never shorter than any member, and matches
            // the longest member exactly when one record spans the union.
            Duration longest = 0;
            bool spanning = false;
            for (const auto& r : rs) {
                CHECK(e.edt >= r.duration);
                longest = std::max(longest, r.duration);
                spanning = spanning || (r.start == e.est_global && r.duration == e.edt);
            }
            CHECK((e.edt == longest) == spanning);
        } else {
            ++gapped_cases;
            CHECK_THROWS_AS(merged_energy_interval(rs), std::invalid_argument);
        }
    }
    CHECK(contiguous_cases > 500);
    CHECK(gapped_cases > 100);
}

TEST_CASE("classification: lone noiseless frame succeeds") {
    SeededRng rng(5);
    const std::vector<TransmissionRecord> rs{rec(1, 0, 100)};
    const auto o = classify_reception(rs, {}, 0.0, rng);
    CHECK(o.kind == ReceptionOutcome::Kind::Success);
    CHECK(o.winner == 0);
}

TEST_CASE("classification: lone frame with p_e=1 always errors") {
    SeededRng rng(5);
    const std::vector<TransmissionRecord> rs{rec(1, 0, 100)};
    CHECK(classify_reception(rs, {}, 1.0, rng).kind == ReceptionOutcome::Kind::ChannelError);
}

TEST_CASE("classification: two frames without capture collide") {
    SeededRng rng(5);
    const std::vector<TransmissionRecord> rs{rec(1, 0, 100), rec(2, 0, 120)};
    CHECK(classify_reception(rs, {}, 0.0, rng).kind ==
          ReceptionOutcome::Kind::CollisionNoCapture);
}

TEST_CASE("classification: capture by power margin") {
    SeededRng rng(5);
    const CaptureConfig cap{true, 6.0};
    const std::vector<TransmissionRecord> rs{rec(1, 0, 100, 10.0), rec(2, 0, 120, 0.0)};
    const auto o = classify_reception(rs, cap, 0.0, rng);  // margin 10 dB >= 6 dB
    CHECK(o.kind == ReceptionOutcome::Kind::Captured);
    CHECK(rs[o.winner].source == 1);

    // 4 dB margin misses the threshold.
    const std::vector<TransmissionRecord> weak{rec(1, 0, 100, 4.0), rec(2, 0, 120, 0.0)};
    CHECK(classify_reception(weak, cap, 0.0, rng).kind ==
          ReceptionOutcome::Kind::CollisionNoCapture);

    // Equal powers can never clear a positive threshold.
    const std::vector<TransmissionRecord> tie{rec(1, 0, 100, 5.0), rec(2, 0, 120, 5.0)};
    CHECK(classify_reception(tie, cap, 0.0, rng).kind ==
          ReceptionOutcome::Kind::CollisionNoCapture);
}

TEST_CASE("classification: aggregate interference blocks capture") {
    SeededRng rng(5);
    const CaptureConfig cap{true, 6.0};
    // 10 dB over each of two 0 dB interferers is only ~7 dB over their sum.
    const std::vector<TransmissionRecord> rs{rec(1, 0, 100, 10.0), rec(2, 0, 120, 0.0),
                                             rec(3, 10, 50, 0.0)};
    CHECK(classify_reception(rs, cap, 0.0, rng).kind == ReceptionOutcome::Kind::Captured);
    const std::vector<TransmissionRecord> rs2{rec(1, 0, 100, 10.0), rec(2, 0, 120, 5.0),
                                              rec(3, 10, 50, 5.0)};
    CHECK(classify_reception(rs2, cap, 0.0, rng).kind ==
          ReceptionOutcome::Kind::CollisionNoCapture);
}

// --- runtime channel ---------------------------------------------------------

namespace {

struct Probe : MediumListener {
    std::vector<std::pair<SimTime, bool>> edges;  // (time, busy?)
    std::vector<std::pair<SimTime, NodeId>> frames;
    void medium_busy(SimTime t) override { edges.emplace_back(t, true); }
    void medium_idle(SimTime t) override { edges.emplace_back(t, false); }
    void frame_received(const TransmissionRecord& r) override {
        frames.emplace_back(r.end(), r.source);
    }
};

struct EnergyProbe : EnergyObserver {
    std::vector<std::tuple<SimTime, Duration, std::size_t>> energies;
    void energy_end(const EnergyInterval& e, const std::vector<TransmissionRecord>& rs,
                    const ReceptionOutcome&) override {
        energies.emplace_back(e.est_global, e.edt, rs.size());
    }
};

ChannelConfig full_audibility(int nodes) {
    ChannelConfig cfg;
    cfg.hears.assign(nodes, std::vector<bool>(nodes, true));
    cfg.rx_power_db.assign(nodes, 0.0);
    return cfg;
}

Frame data_from(NodeId src) {
    Frame f;
    f.kind = FrameKind::Data;
    f.src = src;
    f.dst = kApId;
    return f;
}

}  // namespace

TEST_CASE("busy edges and frame delivery on an idle medium") {
    EventQueue q;
    SeededRng rng(1);
    Channel ch(q, rng, full_audibility(3), 3);
    Probe p1, p2;
    ch.attach(1, &p1);
    ch.attach(2, &p2);
    q.schedule(100, 1, [&] { ch.begin_transmission(1, data_from(1), 50, 1); });
    q.run_until(1000);
    // The sender gets no edge from its own frame; the other station does.
    CHECK(p1.edges.empty());
    REQUIRE(p2.edges.size() == 2);
    CHECK(p2.edges[0] == std::pair<SimTime, bool>{100, true});
    CHECK(p2.edges[1] == std::pair<SimTime, bool>{150, false});
    REQUIRE(p2.frames.size() == 1);
    CHECK(p2.frames[0].second == 1);
}

TEST_CASE("audibility filters carrier sense") {
    EventQueue q;
    SeededRng rng(1);
    auto cfg = full_audibility(3);
    cfg.hears[2][1] = false;  // station 2 cannot hear station 1
    Channel ch(q, rng, cfg, 3);
    Probe p2;
    ch.attach(2, &p2);
    q.schedule(100, 1, [&] { ch.begin_transmission(1, data_from(1), 50, 1); });
    q.run_until(1000);
    CHECK(p2.edges.empty());
    CHECK(p2.frames.empty());
}

TEST_CASE("overlapping frames corrupt station reception and merge at the AP") {
    EventQueue q;
    SeededRng rng(1);
    Channel ch(q, rng, full_audibility(4), 4);
    Probe p3;
    EnergyProbe ap;
    ch.attach(3, &p3);
    ch.set_energy_observer(&ap);
    q.schedule(100, 1, [&] { ch.begin_transmission(1, data_from(1), 50, 1); });
    q.schedule(120, 2, [&] { ch.begin_transmission(2, data_from(2), 60, 2); });
    q.run_until(1000);
    CHECK(p3.frames.empty());  // both frames overlapped at the listener
    REQUIRE(ap.energies.size() == 1);
    CHECK(std::get<0>(ap.energies[0]) == 100);
    CHECK(std::get<1>(ap.energies[0]) == 80);
    CHECK(std::get<2>(ap.energies[0]) == 2);
    // Busy from 100 to 180 with a single edge pair.
    REQUIRE(p3.edges.size() == 2);
    CHECK(p3.edges[0] == std::pair<SimTime, bool>{100, true});
    CHECK(p3.edges[1] == std::pair<SimTime, bool>{180, false});
}

TEST_CASE("double-start by one source is fatal") {
    EventQueue q;
    SeededRng rng(1);
    Channel ch(q, rng, full_audibility(2), 2);
    bool threw = false;
    q.schedule(100, 1, [&] {
        ch.begin_transmission(1, data_from(1), 50, 1);
        try {
            ch.begin_transmission(1, data_from(1), 50, 2);
        } catch (const std::logic_error&) {
            threw = true;
        }
    });
    q.run_until(1000);
    CHECK(threw);
}

TEST_CASE("separate busy periods produce separate energies") {
    EventQueue q;
    SeededRng rng(1);
    Channel ch(q, rng, full_audibility(3), 3);
    EnergyProbe ap;
    ch.set_energy_observer(&ap);
    q.schedule(100, 1, [&] { ch.begin_transmission(1, data_from(1), 50, 1); });
    q.schedule(151, 2, [&] { ch.begin_transmission(2, data_from(2), 30, 2); });
    q.run_until(1000);
    REQUIRE(ap.energies.size() == 2);
    CHECK(std::get<0>(ap.energies[0]) == 100);
    CHECK(std::get<1>(ap.energies[0]) == 50);
    CHECK(std::get<0>(ap.energies[1]) == 151);
    CHECK(std::get<1>(ap.energies[1]) == 30);
}
