#pragma once

// Sweeps over every eavesdropper basis g(theta3, phi3), location of the QBER
// minimum, and the least-squares ITER-vs-QBER line that serves as the
// eavesdropping signature.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "kmbqkd/protocol_sim.hpp"

namespace kmbqkd {

struct SweepRecord {
    double theta3 = 0.0;  // radians
    double phi3 = 0.0;    // radians
    double iter = 0.0;
    double qber = 0.0;  // meaningless when !qber_defined
    double eta_evan = 0.0;
    double eta = 0.0;
    bool qber_defined = true;
};

/// Analytic rates on the grid theta3, phi3 in {2 pi k / grid_n}, theta3-major.
/// Always returns grid_n^2 records; points with an undefined QBER are flagged,
/// not dropped. Throws std::invalid_argument for grid_n < 2.
std::vector<SweepRecord> sweep_eve(const ProtocolSpec& spec, std::size_t grid_n, unsigned workers = 1);

/// Analytic rates at a single eavesdropper basis.
SweepRecord evaluate_point(const ProtocolSpec& spec, double theta3, double phi3);

struct SignatureFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double residual_rms = 0.0;  // scatter of the sweep around the line
    std::size_t n_points = 0;
    double qber_min = 0.0;
    double argmin_theta3 = 0.0;
    double argmin_phi3 = 0.0;
    double iter_at_min = 0.0;
    double eta_evan_at_min = 0.0;
};

/// OLS fit of iter against qber over records with a defined QBER. Equal
/// weights for all grid points. When iter is constant over the sweep (its
/// spread is below 1e-9 per point) R^2 is 1 for an equally tight fit.
/// Minimum ties go to the first record, i.e. the lexicographically smallest
/// (theta3, phi3) in sweep order.
/// Throws DegenerateFitError with < 2 usable records or no spread in qber.
SignatureFit fit_signature(std::span<const SweepRecord> records);

/// Distance of an observed (ITER, QBER) pair from the fitted line, in units of
/// sqrt(se_iter^2 + slope^2 se_qber^2 + residual_rms^2). Binomial standard
/// errors use p = (k + 1/2) / (n + 1) so that error-free sessions still have
/// finite uncertainty. Throws NoDataError if either estimate has no trials.
double signature_deviation(const SessionStats& observed, const SignatureFit& fit);

/// Score above which a session is called OFF-LINE.
inline constexpr double kSignatureThreshold = 3.0;

enum class Verdict { OnLine, OffLine };

const char* to_string(Verdict v) noexcept;

inline Verdict classify(double score, double threshold = kSignatureThreshold) noexcept {
    return score <= threshold ? Verdict::OnLine : Verdict::OffLine;
}

/// Empirical `coverage` quantile of calibration scores (nearest-rank).
double calibrate_threshold(std::vector<double> scores, double coverage = 0.99);

// -- sweep CSV --------------------------------------------------------------

inline constexpr const char* kSweepHeader = "theta3_deg,phi3_deg,iter,qber,eta_evan,eta";

/// Writes kSweepHeader then one row per record, rates with 9 significant
/// digits. Undefined QBER values are written as "nan".
void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records);

/// Parses a file written by write_sweep_csv. Throws ParseError on a missing or
/// different header, malformed rows or an empty body.
std::vector<SweepRecord> read_sweep_csv(std::istream& in);

}  // namespace kmbqkd
