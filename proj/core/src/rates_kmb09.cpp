#include "kmbqkd/rates_kmb09.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kmbqkd/errors.hpp"
#include "kmbqkd/qstate.hpp"

namespace kmbqkd {
namespace {

constexpr double kDenominatorFloor = 1e-12;

double unit_clamp(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

Kmb09Overlaps kmb09_overlaps(const Kmb09Params& p) {
    const auto e = basis_from_angles(0.0, 0.0, BasisLabel::E);
    const auto f = basis_from_angles(p.theta1, 0.0, BasisLabel::F);
    const auto g = basis_from_angles(p.theta3, p.phi3, BasisLabel::G);
    return {overlap_prob(g.state1, e.state1), overlap_prob(g.state1, f.state1)};
}

double kmb09_iter(const Kmb09Params& p) {
    const auto [x, y] = kmb09_overlaps(p);
    return unit_clamp(x + y - x * x - y * y);
}

std::optional<double> try_kmb09_qber(const Kmb09Params& p) {
    const auto [x, y] = kmb09_overlaps(p);
    const double s = x + y;
    const double denominator = 2.0 * s - s * s;
    if (denominator <= kDenominatorFloor) return std::nullopt;
    return unit_clamp((x + y - x * x - y * y) / denominator);
}

double kmb09_qber(const Kmb09Params& p) {
    if (auto q = try_kmb09_qber(p)) return *q;
    throw UndefinedRateError("KMB09 QBER undefined: eavesdropper basis coincides with both e and f");
}

double kmb09_eta(double theta1) {
    // (1 - cos)/4 with cos written as a shifted sine: exact at 0 and 90 degrees.
    return 0.25 * (1.0 - std::sin(std::numbers::pi / 2 - reduce_angle(theta1)));
}

double kmb09_eta_evan(const Kmb09Params& p) {
    const auto [x, y] = kmb09_overlaps(p);
    const double s = x + y;
    return unit_clamp(s - 0.5 * s * s);
}

RateQuartet kmb09_rates(const Kmb09Params& p) {
    return {kmb09_iter(p), kmb09_qber(p), kmb09_eta(p.theta1), kmb09_eta_evan(p)};
}

}  // namespace kmbqkd
