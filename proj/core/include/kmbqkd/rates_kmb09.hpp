#pragma once

// Closed-form error rates and efficiencies of the two-basis KMB09 protocol
// under intercept-resend eavesdropping in basis g(theta3, phi3).
//
// Alice and Bob use e = basis(0, 0) and f = basis(theta1, 0). All quantities
// reduce to the two overlaps x = |<g1|e1>|^2 and y = |<g1|f1>|^2.

#include <optional>

namespace kmbqkd {

struct Kmb09Params {
    double theta1 = 0.0;  // Alice/Bob basis separation (radians)
    double theta3 = 0.0;  // eavesdropper polar angle (radians)
    double phi3 = 0.0;    // eavesdropper azimuthal angle (radians)
};

struct RateQuartet {
    double iter = 0.0;
    double qber = 0.0;
    double eta = 0.0;       // key bits per photon, no eavesdropper
    double eta_evan = 0.0;  // key bits per photon, intercept-resend
};

struct Kmb09Overlaps {
    double with_e = 0.0;  // x
    double with_f = 0.0;  // y
};

Kmb09Overlaps kmb09_overlaps(const Kmb09Params& p);

/// x + y - x^2 - y^2, in [0, 1/2].
double kmb09_iter(const Kmb09Params& p);

/// (x + y - x^2 - y^2) / (2s - s^2) with s = x + y.
/// Throws UndefinedRateError when 2s - s^2 <= 1e-12.
double kmb09_qber(const Kmb09Params& p);

/// Non-throwing form of kmb09_qber; nullopt for a degenerate denominator.
std::optional<double> try_kmb09_qber(const Kmb09Params& p);

/// sin^2(theta1/2) / 2.
double kmb09_eta(double theta1);

/// s - s^2/2 with s = x + y.
double kmb09_eta_evan(const Kmb09Params& p);

/// All four quantities at once. Propagates UndefinedRateError from qber.
RateQuartet kmb09_rates(const Kmb09Params& p);

}  // namespace kmbqkd
