#pragma once

// The long-hand sums over all basis states that the closed-form rates
// simplify. Kept only as test oracles.

#include <array>

#include "kmbqkd/qstate.hpp"

namespace unsimplified {

using kmbqkd::MeasurementBasis;

inline double p2(const kmbqkd::PureState& a, const kmbqkd::PureState& b) { return kmbqkd::overlap_prob(a, b); }

struct Bases {
    MeasurementBasis e, f, h, g;
};

inline Bases make(double theta1, double theta2, double phi2, double theta3, double phi3) {
    using kmbqkd::BasisLabel;
    return {kmbqkd::basis_from_angles(0, 0, BasisLabel::E), kmbqkd::basis_from_angles(theta1, 0, BasisLabel::F),
            kmbqkd::basis_from_angles(theta2, phi2, BasisLabel::H),
            kmbqkd::basis_from_angles(theta3, phi3, BasisLabel::G)};
}

inline const kmbqkd::PureState& st(const MeasurementBasis& b, int i) { return i == 0 ? b.state1 : b.state2; }

// KMB09 ITER: 1 - 1/4 sum_{i,k} (|<g_k|e_i>|^4 + |<g_k|f_i>|^4)
inline double kmb09_iter(const Bases& b) {
    double s = 0;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            const double a = p2(st(b.g, k), st(b.e, i)), c = p2(st(b.g, k), st(b.f, i));
            s += a * a + c * c;
        }
    return 1 - s / 4;
}

// KMB09 QBER: (4 - sum |.|^4) / (8 - sum (|<e_i|g_k>|^2 + |<f_i|g_k>|^2)^2)
inline double kmb09_qber(const Bases& b) {
    double num = 4, den = 8;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            const double a = p2(st(b.e, i), st(b.g, k)), c = p2(st(b.f, i), st(b.g, k));
            num -= a * a + c * c;
            den -= (a + c) * (a + c);
        }
    return num / den;
}

// KMB09 eta: 1/2 * 1/4 sum_i sum_{j != i} (|<e_i|f_j>|^2 + |<f_i|e_j>|^2)
inline double kmb09_eta(const Bases& b) {
    double s = 0;
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        s += p2(st(b.e, i), st(b.f, j)) + p2(st(b.f, i), st(b.e, j));
    }
    return s / 8;
}

// KMB09 eta_Evan, full triple sum.
inline double kmb09_eta_evan(const Bases& b) {
    double s = 0;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            const int j = 1 - i;
            const auto& gk = st(b.g, k);
            s += p2(st(b.e, i), gk) * p2(gk, st(b.e, j)) + p2(st(b.f, i), gk) * p2(gk, st(b.f, j)) +
                 p2(st(b.f, i), gk) * p2(gk, st(b.e, j)) + p2(st(b.e, i), gk) * p2(gk, st(b.f, j));
        }
    return s / 8;
}

// KMB09 eta_Evan, intermediate squared form.
inline double kmb09_eta_evan_squares(const Bases& b) {
    double s = 0;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            const double t = p2(st(b.e, i), st(b.g, k)) + p2(st(b.f, i), st(b.g, k));
            s += t * t;
        }
    return 1 - s / 8;
}

inline std::array<const MeasurementBasis*, 3> efh(const Bases& b) { return {&b.e, &b.f, &b.h}; }

// Variant ITER: 1/6 sum_{i,k,j!=i} sum_{X in e,f,h} |<X_i|g_k>|^2 |<g_k|X_j>|^2
inline double variant_iter(const Bases& b) {
    double s = 0;
    for (const auto* X : efh(b))
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                const auto& gk = st(b.g, k);
                s += p2(st(*X, i), gk) * p2(gk, st(*X, 1 - i));
            }
    return s / 6;
}

// Variant ITER, fourth-power form.
inline double variant_iter_quartic(const Bases& b) {
    double s = 0;
    for (const auto* X : efh(b))
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                const double a = p2(st(b.g, k), st(*X, i));
                s += a * a;
            }
    return 1 - s / 6;
}

inline double cross(const Bases& b, const MeasurementBasis& X, const MeasurementBasis& Y) {
    double s = 0;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            const auto& gk = st(b.g, k);
            s += p2(st(X, i), gk) * p2(gk, st(Y, 1 - i));
        }
    return s;
}

// Variant P_QB with all six ordered basis pairs.
inline double variant_qb(const Bases& b) {
    const double six = cross(b, b.e, b.f) + cross(b, b.e, b.h) + cross(b, b.f, b.e) + cross(b, b.f, b.h) +
                       cross(b, b.h, b.e) + cross(b, b.h, b.f);
    return variant_iter(b) / 3 + six / 36;
}

// Variant P_QB after pairing equal terms.
inline double variant_qb_paired(const Bases& b) {
    return variant_iter(b) / 3 + (cross(b, b.e, b.f) + cross(b, b.e, b.h) + cross(b, b.h, b.f)) / 18;
}

// Variant eta: 1/2 * 1/3 * 1/6 sum over ordered pairs of distinct bases.
inline double variant_eta(const Bases& b) {
    double s = 0;
    const auto all = efh(b);
    for (const auto* X : all)
        for (const auto* Y : all) {
            if (X == Y) continue;
            for (int i = 0; i < 2; ++i) s += p2(st(*X, i), st(*Y, 1 - i));
        }
    return s / 36;
}

// Variant eta in terms of the first-state overlaps.
inline double variant_eta_overlaps(const Bases& b) {
    return 1.0 / 3 - (p2(b.e.state1, b.f.state1) + p2(b.e.state1, b.h.state1) + p2(b.f.state1, b.h.state1)) / 9;
}

}  // namespace unsimplified
