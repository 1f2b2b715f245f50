#pragma once

// Qubit states and measurement bases parametrized by two Bloch-sphere angles.
//
// Every basis used by the protocols (Alice/Bob's e, f, h and the
// eavesdropper's g) has the form
//
//   |b1> = ( cos(theta/2),  e^{i phi} sin(theta/2) )
//   |b2> = ( sin(theta/2), -e^{i phi} cos(theta/2) )
//
// with the phase convention kept exactly as written; no global phase is
// normalized away.

#include <complex>
#include <cstdint>
#include <numbers>

namespace kmbqkd {

enum class BasisLabel : std::uint8_t { E, F, H, G };

/// Which of the two orthogonal states of a basis (i in {1, 2}).
enum class StateIndex : std::uint8_t { First = 1, Second = 2 };

constexpr StateIndex other(StateIndex i) noexcept {
    return i == StateIndex::First ? StateIndex::Second : StateIndex::First;
}

constexpr int to_int(StateIndex i) noexcept { return static_cast<int>(i); }

constexpr char to_char(BasisLabel label) noexcept {
    switch (label) {
        case BasisLabel::E: return 'E';
        case BasisLabel::F: return 'F';
        case BasisLabel::H: return 'H';
        case BasisLabel::G: return 'G';
    }
    return '?';
}

struct PureState {
    std::complex<double> amp0;
    std::complex<double> amp1;

    double norm_squared() const noexcept { return std::norm(amp0) + std::norm(amp1); }
};

/// <a|b>
std::complex<double> inner_product(const PureState& a, const PureState& b) noexcept;

struct MeasurementBasis {
    PureState state1;
    PureState state2;
    double theta = 0.0;  // radians, in [0, 2pi)
    double phi = 0.0;    // radians, in [0, 2pi)
    BasisLabel label = BasisLabel::E;

    const PureState& state(StateIndex i) const noexcept {
        return i == StateIndex::First ? state1 : state2;
    }
};

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double degrees) noexcept { return degrees * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double radians) noexcept { return radians * 180.0 / std::numbers::pi; }

/// Reduces a finite angle into [0, 2pi). Throws InvalidAngleError otherwise.
double reduce_angle(double radians);

/// Builds the basis generated by (theta, phi). Angles are reduced mod 2pi
/// first, so the stored angles and states always agree.
MeasurementBasis basis_from_angles(double theta, double phi, BasisLabel label);

/// |<a|b>|^2, clamped to [0, 1].
double overlap_prob(const PureState& a, const PureState& b) noexcept;

/// Projective measurement of `state` in `basis` driven by one uniform draw:
/// First iff rand < |<basis.state1|state>|^2. Throws std::out_of_range when
/// rand is outside [0, 1).
StateIndex born_sample(const PureState& state, const MeasurementBasis& basis, double rand);

}  // namespace kmbqkd
