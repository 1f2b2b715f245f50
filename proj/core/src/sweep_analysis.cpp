#include "kmbqkd/sweep_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "kmbqkd/errors.hpp"
#include "kmbqkd/rates_kmb09.hpp"
#include "kmbqkd/rates_variant.hpp"

namespace kmbqkd {

SweepRecord evaluate_point(const ProtocolSpec& spec, double theta3, double phi3) {
    SweepRecord r;
    r.theta3 = theta3;
    r.phi3 = phi3;
    r.eta = spec.eta();
    if (spec.kind == ProtocolKind::Kmb09) {
        const Kmb09Params p{spec.theta1, theta3, phi3};
        r.iter = kmb09_iter(p);
        r.eta_evan = kmb09_eta_evan(p);
        const auto q = try_kmb09_qber(p);
        r.qber_defined = q.has_value();
        r.qber = q.value_or(0.0);
    } else {
        const VariantParams p{spec.theta1, spec.theta2, spec.phi2, theta3, phi3};
        r.iter = variant_iter(p);
        r.eta_evan = variant_eta_evan(p);
        const auto q = try_variant_qber(p);
        r.qber_defined = q.has_value();
        r.qber = q.value_or(0.0);
    }
    return r;
}

std::vector<SweepRecord> sweep_eve(const ProtocolSpec& spec, std::size_t grid_n, unsigned workers) {
    if (grid_n < 2) throw std::invalid_argument("sweep_eve: grid_n must be >= 2");
    workers = std::max(1u, workers);
    spec.bases();  // validates angles before any thread starts

    std::vector<SweepRecord> out(grid_n * grid_n);
    const double step = kTwoPi / static_cast<double>(grid_n);
    const auto run_rows = [&](std::size_t w) {
        for (std::size_t i = w; i < grid_n; i += workers) {
            for (std::size_t j = 0; j < grid_n; ++j) {
                out[i * grid_n + j] =
                    evaluate_point(spec, step * static_cast<double>(i), step * static_cast<double>(j));
            }
        }
    };
    if (workers == 1) {
        run_rows(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_rows, w);
    }
    return out;
}

SignatureFit fit_signature(std::span<const SweepRecord> records) {
    SignatureFit fit;
    const SweepRecord* best = nullptr;
    long double sum_x = 0, sum_y = 0;
    std::size_t n = 0;
    for (const auto& r : records) {
        if (!r.qber_defined) continue;
        ++n;
        sum_x += r.qber;
        sum_y += r.iter;
        if (best == nullptr || r.qber < best->qber) best = &r;
    }
    if (n < 2) throw DegenerateFitError("fit_signature: need at least two records with a defined QBER");

    const long double mean_x = sum_x / n;
    const long double mean_y = sum_y / n;
    long double sxx = 0, sxy = 0, syy = 0;
    for (const auto& r : records) {
        if (!r.qber_defined) continue;
        const long double dx = r.qber - mean_x;
        const long double dy = r.iter - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    constexpr long double kSpreadFloor = 1e-9L * 1e-9L;
    if (sxx <= kSpreadFloor * n) throw DegenerateFitError("fit_signature: QBER has no spread over the sweep");

    const long double slope = sxy / sxx;
    const long double intercept = mean_y - slope * mean_x;
    long double ss_res = 0;
    for (const auto& r : records) {
        if (!r.qber_defined) continue;
        const long double e = r.iter - (slope * r.qber + intercept);
        ss_res += e * e;
    }

    fit.slope = static_cast<double>(slope);
    fit.intercept = static_cast<double>(intercept);
    if (syy <= kSpreadFloor * n) {
        fit.r_squared = ss_res <= kSpreadFloor * n ? 1.0 : 0.0;
    } else {
        fit.r_squared = std::clamp(static_cast<double>(1.0L - ss_res / syy), 0.0, 1.0);
    }
    fit.residual_rms = static_cast<double>(std::sqrt(ss_res / n));
    fit.n_points = n;
    fit.qber_min = best->qber;
    fit.argmin_theta3 = best->theta3;
    fit.argmin_phi3 = best->phi3;
    fit.iter_at_min = best->iter;
    fit.eta_evan_at_min = best->eta_evan;
    return fit;
}

namespace {

double floored_variance(const RateEstimate& e) {
    const double n = static_cast<double>(e.trials);
    const double p = (static_cast<double>(e.successes) + 0.5) / (n + 1.0);
    return p * (1.0 - p) / n;
}

}  // namespace

double signature_deviation(const SessionStats& observed, const SignatureFit& fit) {
    if (!observed.est_iter.has_data() || !observed.est_qber.has_data()) {
        throw NoDataError("signature_deviation: session has no ITER or QBER estimate");
    }
    const double predicted = fit.slope * observed.est_qber.value + fit.intercept;
    const double variance = floored_variance(observed.est_iter) +
                            fit.slope * fit.slope * floored_variance(observed.est_qber) +
                            fit.residual_rms * fit.residual_rms;
    return std::abs(observed.est_iter.value - predicted) / std::sqrt(variance);
}

const char* to_string(Verdict v) noexcept { return v == Verdict::OnLine ? "ON-LINE" : "OFF-LINE"; }

double calibrate_threshold(std::vector<double> scores, double coverage) {
    if (scores.empty()) throw std::invalid_argument("calibrate_threshold: no scores");
    if (!(coverage > 0.0 && coverage <= 1.0)) throw std::invalid_argument("calibrate_threshold: coverage in (0, 1]");
    std::sort(scores.begin(), scores.end());
    const auto rank = static_cast<std::size_t>(std::ceil(coverage * static_cast<double>(scores.size())));
    return scores[std::max<std::size_t>(rank, 1) - 1];
}

}  // namespace kmbqkd
