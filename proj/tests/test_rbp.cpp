#include <doctest.h>

#include "cdet/rbp.hpp"

using namespace cdet;

TEST_CASE("rw=1 disables padding for normal frames") {
    SeededRng rng(1);
    for (int i = 0; i < 50; ++i) CHECK(rbp_pad_units(rng, 1, false) == 0);
    // A CN frame at rw=1 always pads exactly one unit.
    for (int i = 0; i < 50; ++i) CHECK(rbp_pad_units(rng, 1, true) == 1);
}

TEST_CASE("draw ranges for normal and CN-carrying frames") {
    SeededRng rng(2);
    bool lo = false, hi = false;
    for (int i = 0; i < 2000; ++i) {
        const auto u = rbp_pad_units(rng, 16, false);
        CHECK(u >= 0);
        CHECK(u <= 15);
        lo = lo || u == 0;
        hi = hi || u == 15;
    }
    CHECK(lo);
    CHECK(hi);
    for (int i = 0; i < 2000; ++i) {
        const auto u = rbp_pad_units(rng, 16, true);
        CHECK(u >= 16);
        CHECK(u <= 31);
    }
}

// The two ranges are disjoint, so a CN-carrying frame always pads more than
// any normal frame under the same window.
TEST_CASE("CN pad range strictly dominates the normal range") {
    for (int rw = 1; rw <= 32; ++rw) {
        const std::int64_t max_normal = rw - 1;
        const std::int64_t min_cn = rw;
        CHECK(min_cn > max_normal);
    }
}

// Exact enumeration over all 256 equal-base pairs at rw=16: equal padded
// lengths occur in exactly 16 of them.
TEST_CASE("equal-length probability is 1/RW by enumeration") {
    const int rw = 16;
    int equal = 0, total = 0;
    for (int u1 = 0; u1 < rw; ++u1)
        for (int u2 = 0; u2 < rw; ++u2) {
            ++total;
            if (u1 == u2) ++equal;
        }
    CHECK(total == 256);
    CHECK(equal == 16);
    CHECK(equal * rw == total);
}

// Same enumeration for every window up to 8, covering both the normal and
// the CN draw ranges: undetectable (equal-length) pairs are exactly 1/RW of
// all pad pairs.
TEST_CASE("equal-length fraction is exactly 1/RW for all RW <= 8") {
    for (int rw = 1; rw <= 8; ++rw) {
        for (int base : {0, rw}) {  // [0, rw-1] and [rw, 2rw-1]
            int equal = 0;
            for (int u1 = base; u1 < base + rw; ++u1)
                for (int u2 = base; u2 < base + rw; ++u2)
                    if (u1 == u2) ++equal;
            CHECK(equal * rw == rw * rw);
            CHECK(equal == rw);
        }
    }
}

TEST_CASE("pad unit bits scale with the rate") {
    CHECK(pad_unit_bits(1, 1000) == 1);
    CHECK(pad_unit_bits(1, 11000) == 11);
    CHECK(pad_unit_bits(1, 5500) == 6);  // ceil(5.5)
    CHECK(pad_unit_bits(3, 1000) == 3);
}

// One pad unit must lengthen the airtime by at least t_g for any rate.
TEST_CASE("one unit buys at least t_g of airtime") {
    for (Duration t_g : {1, 2, 5}) {
        for (RateKbps rate : {RateKbps{1000}, RateKbps{2000}, RateKbps{5500}, RateKbps{11000},
                              RateKbps{54000}}) {
            const auto bits = pad_unit_bits(t_g, rate);
            CHECK(ceil_div(bits * 1000, rate) >= t_g);
        }
    }
}

TEST_CASE("invalid windows are rejected") {
    SeededRng rng(3);
    CHECK_THROWS_AS(rbp_pad_units(rng, 0, false), std::logic_error);
    CHECK_THROWS_AS(pad_unit_bits(0, 1000), std::logic_error);
}
