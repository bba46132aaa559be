#pragma once

#include <sstream>
#include <string>

#include "cdet/observer.hpp"

namespace cdet {

// Tab-separated event log: global_time_us <TAB> node <TAB> event_kind <TAB>
// detail. Every number is global-clock or wire-relative, so the trace is
// byte-identical for any choice of station clock offsets.
class TraceWriter : public SimObserver {
public:
    std::string str() const { return out_.str(); }

    void tx_start(SimTime t, NodeId n, std::uint64_t id, const Frame& f, Duration dur,
                  int retries, RateKbps rate) override {
        line(t, n, "tx_start") << "attempt=" << id << " kind=" << to_string(f.kind)
                               << " payload=" << f.payload_bits << " pad=" << f.pad_bits
                               << " dur=" << dur << " retries=" << retries
                               << " rate_kbps=" << rate << '\n';
    }
    void backoff_drawn(SimTime t, NodeId n, int cw, int slots) override {
        line(t, n, "backoff") << "cw=" << cw << " slots=" << slots << '\n';
    }
    void energy_end(SimTime t, std::uint64_t id, const EnergyInterval& e,
                    const std::vector<TransmissionRecord>& recs,
                    const ReceptionOutcome& o) override {
        auto& s = line(t, kApId, "energy_end");
        s << "id=" << id << " est=" << e.est_global << " edt=" << e.edt << " n=" << recs.size()
          << " outcome=" << to_string(o.kind);
        if (o.decoded_any()) s << " winner=" << recs[o.winner].source;
        s << '\n';
    }
    void et_sent(SimTime t, const EtWire& w) override {
        line(t, kApId, "et_tx") << "est_prime=" << w.est_prime << " edt=" << w.edt << '\n';
    }
    void ack_sent(SimTime t, NodeId dst, FrameKind k, const std::optional<NoticeWire>& cn) override {
        auto& s = line(t, kApId, "ack_tx");
        s << "dst=" << dst << " kind=" << to_string(k);
        if (cn) s << " cn_st_prime=" << cn->st_prime << " cn_dt=" << cn->dt;
        s << '\n';
    }
    void control_rx(SimTime t, NodeId n, FrameKind k, NodeId src) override {
        line(t, n, "rx") << "kind=" << to_string(k) << " src=" << src << '\n';
    }
    void detection(SimTime t, NodeId n, std::uint64_t id, DetectPath p) override {
        line(t, n, "detect") << "attempt=" << id << " path=" << to_string(p) << '\n';
    }
    void outcome(SimTime t, NodeId n, std::uint64_t id, bool acked, FailureCause c) override {
        auto& s = line(t, n, "outcome");
        s << "attempt=" << id << " result=" << (acked ? "acked" : "timeout");
        if (!acked) s << " cause=" << to_string(c);
        s << '\n';
    }
    void cause_revised(SimTime t, NodeId n, std::uint64_t id, DetectPath p) override {
        line(t, n, "revise") << "attempt=" << id << " cause=collision via=" << to_string(p) << '\n';
    }
    void cn_enqueued(SimTime t, NodeId n, const Interval& tt) override {
        line(t, n, "cn_enq") << "st=" << tt.start << " dt=" << tt.dur << '\n';
    }
    void cn_sent(SimTime t, NodeId n, const NoticeWire& w) override {
        line(t, n, "cn_tx") << "st_prime=" << w.st_prime << " dt=" << w.dt << '\n';
    }
    void fn_sent(SimTime t, NodeId n, const NoticeWire& w) override {
        line(t, n, "fn_tx") << "st_prime=" << w.st_prime << " dt=" << w.dt << '\n';
    }
    void cn_purged(SimTime t, NodeId n, const Interval& tt) override {
        line(t, n, "cn_purge") << "st=" << tt.start << " dt=" << tt.dur << '\n';
    }
    void fn_enqueued(SimTime t, NodeId n, std::uint64_t a) override {
        line(t, n, "fn_enq") << "attempt=" << a << '\n';
    }
    void fn_cancelled(SimTime t, NodeId n, std::uint64_t a) override {
        line(t, n, "fn_cancel") << "attempt=" << a << '\n';
    }
    void frame_dropped(SimTime t, NodeId n, std::uint64_t m, int retries) override {
        line(t, n, "drop") << "msdu=" << m << " retries=" << retries << '\n';
    }
    void delivered(SimTime t, NodeId n, std::uint64_t m, std::int64_t bits,
                   Duration delay) override {
        line(t, n, "deliver") << "msdu=" << m << " bits=" << bits << " delay=" << delay << '\n';
    }
    void cw_changed(SimTime t, NodeId n, int cw) override {
        line(t, n, "cw") << "cw=" << cw << '\n';
    }
    void rate_changed(SimTime t, NodeId n, RateKbps r) override {
        line(t, n, "rate") << "rate_kbps=" << r << '\n';
    }

private:
    std::ostringstream& line(SimTime t, NodeId n, const char* kind) {
        out_ << t << '\t' << n << '\t' << kind << '\t';
        return out_;
    }

    std::ostringstream out_;
};

}  // namespace cdet
