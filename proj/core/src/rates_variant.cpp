#include "kmbqkd/rates_variant.hpp"

#include <algorithm>
#include <cmath>

#include "kmbqkd/errors.hpp"
#include "kmbqkd/qstate.hpp"

namespace kmbqkd {
namespace {

double unit_clamp(double v) { return std::clamp(v, 0.0, 1.0); }

double iter_from(const VariantOverlaps& o) {
    const auto [x, y, z] = o;
    return unit_clamp(2.0 / 3.0 * (x + y + z - x * x - y * y - z * z));
}

double qb_from(const VariantOverlaps& o) {
    const auto [x, y, z] = o;
    return unit_clamp(4.0 / 9.0 * (x + y + z) -
                      2.0 / 9.0 * (x * x + y * y + z * z + x * y + x * z + y * z));
}

}  // namespace

VariantOverlaps variant_overlaps(const VariantParams& p) {
    const auto e = basis_from_angles(0.0, 0.0, BasisLabel::E);
    const auto f = basis_from_angles(p.theta1, 0.0, BasisLabel::F);
    const auto h = basis_from_angles(p.theta2, p.phi2, BasisLabel::H);
    const auto g = basis_from_angles(p.theta3, p.phi3, BasisLabel::G);
    return {overlap_prob(g.state1, e.state1), overlap_prob(g.state1, f.state1),
            overlap_prob(g.state1, h.state1)};
}

double variant_iter(const VariantParams& p) { return iter_from(variant_overlaps(p)); }

double variant_qb(const VariantParams& p) { return qb_from(variant_overlaps(p)); }

std::optional<double> try_variant_qber(const VariantParams& p) {
    const auto o = variant_overlaps(p);
    const double qb = qb_from(o);
    if (qb <= kNoDetectedBitsFloor) return std::nullopt;
    return unit_clamp(iter_from(o) / (3.0 * qb));
}

double variant_qber(const VariantParams& p) {
    if (auto q = try_variant_qber(p)) return *q;
    throw UndefinedRateError("variant QBER undefined: no key bits are detected for these bases");
}

double variant_eta(double theta1, double theta2, double phi2) {
    const double t1 = reduce_angle(theta1);
    const double t2 = reduce_angle(theta2);
    const double p2 = reduce_angle(phi2);
    const double bracket = std::cos(t1) + std::cos(t2) + std::cos(t1) * std::cos(t2) +
                           std::cos(p2) * std::sin(t1) * std::sin(t2);
    return unit_clamp(1.0 / 6.0 - bracket / 18.0);
}

double variant_eta_evan(const VariantParams& p) { return variant_qb(p); }

VariantRates variant_rates(const VariantParams& p) {
    const auto o = variant_overlaps(p);
    const double qb = qb_from(o);
    if (qb <= kNoDetectedBitsFloor) {
        throw UndefinedRateError("variant QBER undefined: no key bits are detected for these bases");
    }
    const double iter = iter_from(o);
    return {iter, qb, unit_clamp(iter / (3.0 * qb)), variant_eta(p.theta1, p.theta2, p.phi2)};
}

}  // namespace kmbqkd
