#include "kmbqkd/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kmbqkd/errors.hpp"

namespace kmbqkd {

std::complex<double> inner_product(const PureState& a, const PureState& b) noexcept {
    return std::conj(a.amp0) * b.amp0 + std::conj(a.amp1) * b.amp1;
}

double reduce_angle(double radians) {
    if (!std::isfinite(radians)) {
        throw InvalidAngleError("angle must be finite, got " + std::to_string(radians));
    }
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod of a tiny negative value plus 2pi can round up to exactly 2pi.
    if (r >= kTwoPi) r = 0.0;
    return r;
}

MeasurementBasis basis_from_angles(double theta, double phi, BasisLabel label) {
    const double t = reduce_angle(theta);
    const double p = reduce_angle(phi);
    const double c = std::cos(0.5 * t);
    const double s = std::sin(0.5 * t);
    const std::complex<double> phase = std::polar(1.0, p);

    MeasurementBasis basis;
    basis.state1 = PureState{{c, 0.0}, phase * s};
    basis.state2 = PureState{{s, 0.0}, -phase * c};
    basis.theta = t;
    basis.phi = p;
    basis.label = label;
    return basis;
}

double overlap_prob(const PureState& a, const PureState& b) noexcept {
    return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

StateIndex born_sample(const PureState& state, const MeasurementBasis& basis, double rand) {
    if (!(rand >= 0.0 && rand < 1.0)) {
        throw std::out_of_range("born_sample: uniform draw outside [0, 1)");
    }
    return rand < overlap_prob(basis.state1, state) ? StateIndex::First : StateIndex::Second;
}

}  // namespace kmbqkd
