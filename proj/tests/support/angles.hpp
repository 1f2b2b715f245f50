#pragma once

#include <cstdint>
#include <random>

#include "kmbqkd/qstate.hpp"

namespace testing_support {

/// Deterministic generator of angles in [0, 2pi) for property tests.
class AngleSource {
public:
    explicit AngleSource(std::uint64_t seed) : rng_(seed) {}
    double operator()() { return dist_(rng_); }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> dist_{0.0, kmbqkd::kTwoPi};
};

constexpr double deg(double d) { return kmbqkd::deg_to_rad(d); }

}  // namespace testing_support
