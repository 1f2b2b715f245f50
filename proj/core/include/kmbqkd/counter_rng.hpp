#pragma once

// Counter-based random stream: every uniform is a pure function of
// (seed, photon index, draw slot), so a session gives the same draws no
// matter how its photons are split across workers.
//
// Backed by Philox4x32-10 (Salmon et al., SC'11).

#include <array>
#include <cstdint>

namespace kmbqkd {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Per-photon draw slots. The numeric values are part of the reproducibility
/// contract; append new slots, never renumber.
enum class DrawSlot : std::uint32_t {
    AliceBasis = 0,
    AliceIndex = 1,
    EveMeasure = 2,
    NoiseTrigger = 3,
    NoiseIndex = 4,
    BobBasis = 5,
    BobMeasure = 6,
    SetChoice = 7,
    TestSelect = 8,
};

class CounterStream {
public:
    explicit CounterStream(std::uint64_t seed) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform(std::uint64_t photon, DrawSlot slot) const noexcept;

private:
    PhiloxKey key_;
};

}  // namespace kmbqkd
