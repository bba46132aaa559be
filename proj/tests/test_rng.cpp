#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "cdet/rng.hpp"

using cdet::SeededRng;
using cdet::uniform_int;

TEST_CASE("same seed reproduces the draw sequence") {
    SeededRng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u32() == b.next_u32());
}

TEST_CASE("different seeds diverge") {
    SeededRng a(1), b(2);
    int differing = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u32() != b.next_u32()) ++differing;
    CHECK(differing > 32);
}

TEST_CASE("uniform_int degenerate range") {
    SeededRng rng(7);
    for (int i = 0; i < 10; ++i) CHECK(uniform_int(rng, 5, 5) == 5);
}

TEST_CASE("uniform_int rejects inverted range") {
    SeededRng rng(7);
    CHECK_THROWS_AS(uniform_int(rng, 3, 2), std::logic_error);
}

TEST_CASE("uniform_int covers bounds inclusively") {
    SeededRng rng(11);
    bool saw_lo = false, saw_hi = false;
    for (int i = 0; i < 1000; ++i) {
        const auto v = uniform_int(rng, 0, 3);
        CHECK(v >= 0);
        CHECK(v <= 3);
        saw_lo = saw_lo || v == 0;
        saw_hi = saw_hi || v == 3;
    }
    CHECK(saw_lo);
    CHECK(saw_hi);
}

// 1e5 draws over [0,15]: each bucket within 3 sigma of the expected 6250.
// Fixed seed, so this is a deterministic regression check against the
// uniform law, not a flaky statistical test.
TEST_CASE("uniform_int frequencies match the uniform law") {
    SeededRng rng(2024);
    std::vector<int> counts(16, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(uniform_int(rng, 0, 15))];
    const double expected = n / 16.0;
    const double sigma = std::sqrt(n * (1.0 / 16.0) * (15.0 / 16.0));
    for (int c : counts) {
        CHECK(std::abs(c - expected) <= 3.0 * sigma);
    }
}

TEST_CASE("next_unit stays in [0,1)") {
    SeededRng rng(3);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("bernoulli edge probabilities") {
    SeededRng rng(5);
    for (int i = 0; i < 100; ++i) CHECK_FALSE(cdet::bernoulli(rng, 0.0));
    for (int i = 0; i < 100; ++i) CHECK(cdet::bernoulli(rng, 1.0));
}
