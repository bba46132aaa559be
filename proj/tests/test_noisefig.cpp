#include <doctest.h>

#include <cmath>

#include "cdet/noisefig.hpp"
#include "cdet/rng.hpp"

using namespace cdet::noisefig;
using cdet::SeededRng;
using cdet::uniform_int;

namespace {

NoiseFigureParams random_params(SeededRng& rng) {
    NoiseFigureParams p;
    p.f_ambient = 1.0 + 1e-3 + rng.next_unit() * 999.0;
    p.f_antenna = 1.0 + 1e-6 + rng.next_unit() * 99.0;
    p.f_receiver = 1.0 + 1e-6 + rng.next_unit() * 49.0;
    p.g_antenna = 1e-2 + rng.next_unit() * 99.0;
    return p;
}

}  // namespace

TEST_CASE("output SNR: direct sum form") {
    CHECK(output_snr(1.0, {1.0, 0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(output_snr(10.0, {2.0, 1.0, 1.0}) == doctest::Approx(2.5));
}

TEST_CASE("both algebraic forms of the output SNR agree") {
    SeededRng rng(101);
    for (int i = 0; i < 2000; ++i) {
        const double s = 1e-12 + rng.next_unit();
        const NoisePowers n{1e-12 + rng.next_unit(), rng.next_unit(), rng.next_unit()};
        const double direct = s / (n.n_ambient + n.n_antenna + n.n_receiver);
        const double factored =
            (s / n.n_ambient) / (1.0 + n.n_antenna / n.n_ambient + n.n_receiver / n.n_ambient);
        CHECK(output_snr(s, n) == doctest::Approx(direct).epsilon(1e-12));
        CHECK(std::abs(direct - factored) <= 1e-12 * std::max(direct, factored));
    }
}

TEST_CASE("system noise factor from powers") {
    CHECK(system_nf_from_powers({5.0, 0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(system_nf_from_powers({2.0, 1.0, 1.0}) == doctest::Approx(2.0));
}

TEST_CASE("noise factor equals input-to-output SNR degradation") {
    SeededRng rng(103);
    for (int i = 0; i < 2000; ++i) {
        const NoisePowers n{1e-9 + rng.next_unit(), rng.next_unit(), rng.next_unit()};
        const double s = 1e-6 + rng.next_unit();
        const double snr_in = s / n.n_ambient;
        const double snr_out = output_snr(s, n);
        CHECK(system_nf_from_powers(n) == doctest::Approx(snr_in / snr_out).epsilon(1e-12));
    }
}

TEST_CASE("factor-form system noise figure: worked points") {
    CHECK(system_nf({101.0, 2.0, 10.0, 1.0}) == doctest::Approx(1.10).epsilon(1e-12));
    CHECK(system_nf({101.0, 100.0, 10.0, 9.0}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(system_nf({50.0, 1.0, 1.0, 3.0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("factor form rejects the F_A <= 1 singularity") {
    CHECK_THROWS_AS(system_nf({1.0, 2.0, 10.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(system_nf({0.5, 2.0, 10.0, 1.0}), std::invalid_argument);
}

// Power route and factor route describe the same receiver chain.
TEST_CASE("power form and factor form agree on randomized parameters") {
    SeededRng rng(105);
    for (int i = 0; i < 10000; ++i) {
        const auto p = random_params(rng);
        const double bw = 1e3 + rng.next_unit() * 1e7;
        const double via_powers = system_nf_from_powers(powers_from_factors(p, bw));
        const double via_factors = system_nf(p);
        CHECK(std::abs(via_powers - via_factors) <=
              1e-12 * std::max(std::abs(via_powers), std::abs(via_factors)));
    }
}

TEST_CASE("antenna noise-figure bound") {
    CHECK(max_antenna_nf(101.0, 10.0, 9.0) == doctest::Approx(100.0));
    CHECK(max_antenna_nf(101.0, 1.0, 0.5) == doctest::Approx(101.0));
    const double infeasible = max_antenna_nf(1.5, 10.0, 1.0);
    CHECK(infeasible == doctest::Approx(-7.5));
    CHECK_FALSE(antenna_nf_feasible(infeasible));
    CHECK(antenna_nf_feasible(1.0));
}

// The bound is exactly the F_a root of F_S = 2.
TEST_CASE("system noise figure at the bound equals 2") {
    SeededRng rng(107);
    for (int i = 0; i < 5000; ++i) {
        auto p = random_params(rng);
        const double bound = max_antenna_nf(p.f_ambient, p.f_receiver, p.g_antenna);
        if (!antenna_nf_feasible(bound)) continue;
        p.f_antenna = bound;
        CHECK(std::abs(system_nf(p) - 2.0) <= 1e-12 * 2.0);
    }
}

TEST_CASE("approximation is a lower bound and converges as G_a grows") {
    SeededRng rng(109);
    for (int i = 0; i < 5000; ++i) {
        const auto p = random_params(rng);
        const double exact = system_nf(p);
        const double approx = approx_system_nf(p.f_ambient, p.f_antenna);
        CHECK(approx <= exact + 1e-15);
        // The gap is exactly the receiver term.
        const double gap = (p.f_receiver - 1.0) / ((p.f_ambient - 1.0) * p.g_antenna);
        CHECK(exact - approx == doctest::Approx(gap).epsilon(1e-9));
    }
    // Monotone convergence in G_a.
    NoiseFigureParams p{30.0, 8.0, 12.0, 1.0};
    double prev = system_nf(p);
    for (double g = 2.0; g < 1e6; g *= 4.0) {
        p.g_antenna = g;
        const double cur = system_nf(p);
        CHECK(cur <= prev);
        prev = cur;
    }
    CHECK(prev == doctest::Approx(approx_system_nf(p.f_ambient, p.f_antenna)).epsilon(1e-6));
}

TEST_CASE("approximation error is under 1% in the high-ambient regime") {
    SeededRng rng(111);
    int hits = 0;
    for (int i = 0; i < 20000; ++i) {
        const auto p = random_params(rng);
        if ((p.f_receiver - 1.0) / p.g_antenna > 0.01 * (p.f_ambient - 1.0)) continue;
        ++hits;
        const double exact = system_nf(p);
        const double approx = approx_system_nf(p.f_ambient, p.f_antenna);
        CHECK((exact - approx) / exact <= 0.01 + 1e-12);
    }
    CHECK(hits > 100);
}

TEST_CASE("monotonicity in each parameter") {
    SeededRng rng(113);
    for (int i = 0; i < 2000; ++i) {
        const auto p = random_params(rng);
        const double base = system_nf(p);
        auto bump = p;
        bump.f_ambient += 1.0;
        CHECK(system_nf(bump) < base);  // more ambient noise masks the hardware
        bump = p;
        bump.g_antenna *= 2.0;
        CHECK(system_nf(bump) <= base);
        bump = p;
        bump.f_antenna += 1.0;
        CHECK(system_nf(bump) > base);
        bump = p;
        bump.f_receiver += 1.0;
        CHECK(system_nf(bump) > base);
    }
}

TEST_CASE("dB conversions round-trip") {
    CHECK(linear_from_db(10.0) == doctest::Approx(10.0));
    CHECK(db_from_linear(1.0) == doctest::Approx(0.0));
    CHECK(linear_from_db(9.0) == doctest::Approx(7.943).epsilon(1e-3));
    CHECK(linear_from_db(16.0) == doctest::Approx(39.81).epsilon(1e-3));
    SeededRng rng(115);
    for (int i = 0; i < 1000; ++i) {
        const double x = 1e-6 + rng.next_unit() * 1e6;
        CHECK(std::abs(linear_from_db(db_from_linear(x)) - x) <= 1e-12 * x);
    }
    CHECK_THROWS_AS(db_from_linear(0.0), std::invalid_argument);
    CHECK_THROWS_AS(db_from_linear(-1.0), std::invalid_argument);
}

TEST_CASE("ambient noise table interpolates in dB over frequency") {
    const auto table = AmbientNoiseTable::from_csv(
        "freq_mhz, f_ambient_db\n"
        "1.0, 40\n"
        "10.0, 30\n"
        "30.0, 20\n");
    CHECK(table.f_ambient_db_at(1.0) == doctest::Approx(40.0));
    CHECK(table.f_ambient_db_at(5.5) == doctest::Approx(35.0));
    CHECK(table.f_ambient_db_at(20.0) == doctest::Approx(25.0));
    CHECK(table.f_ambient_db_at(30.0) == doctest::Approx(20.0));
    // Clamped outside the measured span.
    CHECK(table.f_ambient_db_at(0.1) == doctest::Approx(40.0));
    CHECK(table.f_ambient_db_at(99.0) == doctest::Approx(20.0));
    CHECK(table.f_ambient_at(30.0) == doctest::Approx(100.0));
}

TEST_CASE("ambient noise table rejects malformed input") {
    CHECK_THROWS_AS(AmbientNoiseTable::from_csv("wrong,header\n1,2\n"), std::runtime_error);
    CHECK_THROWS_AS(AmbientNoiseTable::from_csv("freq_mhz,f_ambient_db\n"), std::runtime_error);
    CHECK_THROWS_AS(AmbientNoiseTable::from_csv("freq_mhz,f_ambient_db\n1\n"), std::runtime_error);
    CHECK_THROWS_AS(AmbientNoiseTable::from_csv("freq_mhz,f_ambient_db\n1,x\n"), std::runtime_error);
    CHECK_THROWS_AS(AmbientNoiseTable::from_csv("freq_mhz,f_ambient_db\n1,5\n1,6\n"),
                    std::runtime_error);
}
