#pragma once

#include <stdexcept>

#include "cdet/mac_params.hpp"
#include "cdet/rng.hpp"
#include "cdet/sim_time.hpp"

namespace cdet {

// Random Bit Padding. Normal frames pad a unit count drawn from [0, RW-1];
// CN-carrying frames draw from [RW, 2RW-1] so they outlast same-base normal
// frames and keep their queued notice out of fresh collisions. RW = 1
// disables padding for normal frames.
inline std::int64_t rbp_pad_units(SeededRng& rng, int rw, bool carries_cn) {
    if (rw < 1) throw std::logic_error("rbp_pad_units: rw must be >= 1");
    return carries_cn ? uniform_int(rng, rw, 2 * static_cast<std::int64_t>(rw) - 1)
                      : uniform_int(rng, 0, rw - 1);
}

// Bits per pad unit: ceil(t_g * r), so one unit lengthens airtime by at
// least the measurable granularity t_g.
inline std::int64_t pad_unit_bits(Duration t_g_us, RateKbps rate_kbps) {
    if (t_g_us < 1 || rate_kbps <= 0) throw std::logic_error("pad_unit_bits: invalid arguments");
    return ceil_div(t_g_us * rate_kbps, 1000);
}

}  // namespace cdet
