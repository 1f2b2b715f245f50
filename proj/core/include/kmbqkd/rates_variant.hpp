#pragma once

// Closed-form rates for the three-basis variant (bases e, f, h) under
// intercept-resend eavesdropping. With x, y, z the overlaps of g1 with
// e1, f1, h1:
//
//   ITER = 2/3 [x + y + z - x^2 - y^2 - z^2]
//   P_QB = 4/9 (x + y + z) - 2/9 (x^2 + y^2 + z^2 + xy + xz + yz)
//   QBER = ITER / (3 P_QB)
//   eta_Evan = P_QB

#include <optional>

namespace kmbqkd {

struct VariantParams {
    double theta1 = 0.0;  // f polar angle
    double theta2 = 0.0;  // h polar angle
    double phi2 = 0.0;    // h azimuthal angle
    double theta3 = 0.0;  // eavesdropper polar angle
    double phi3 = 0.0;    // eavesdropper azimuthal angle
};

struct VariantRates {
    double iter = 0.0;
    double qb = 0.0;  // key bit per photon under eavesdropping (= eta_Evan)
    double qber = 0.0;
    double eta = 0.0;  // key bit per photon, no eavesdropper
};

struct VariantOverlaps {
    double with_e = 0.0;
    double with_f = 0.0;
    double with_h = 0.0;
};

/// Below this key-bit probability there are no detected bits to be wrong.
inline constexpr double kNoDetectedBitsFloor = 1e-12;

VariantOverlaps variant_overlaps(const VariantParams& p);

double variant_iter(const VariantParams& p);
double variant_qb(const VariantParams& p);

/// Throws UndefinedRateError when P_QB <= 1e-12.
double variant_qber(const VariantParams& p);
std::optional<double> try_variant_qber(const VariantParams& p);

double variant_eta(double theta1, double theta2, double phi2);
double variant_eta_evan(const VariantParams& p);

VariantRates variant_rates(const VariantParams& p);

}  // namespace kmbqkd
