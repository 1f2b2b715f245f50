#include "kmbqkd/protocol_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "kmbqkd/counter_rng.hpp"
#include "kmbqkd/rates_kmb09.hpp"
#include "kmbqkd/rates_variant.hpp"

namespace kmbqkd {

const char* to_string(ProtocolKind kind) noexcept {
    return kind == ProtocolKind::Kmb09 ? "kmb09" : "variant";
}

std::vector<MeasurementBasis> ProtocolSpec::bases() const {
    std::vector<MeasurementBasis> out;
    out.push_back(basis_from_angles(0.0, 0.0, BasisLabel::E));
    out.push_back(basis_from_angles(theta1, 0.0, BasisLabel::F));
    if (kind == ProtocolKind::Variant) out.push_back(basis_from_angles(theta2, phi2, BasisLabel::H));
    return out;
}

double ProtocolSpec::eta() const {
    return kind == ProtocolKind::Kmb09 ? kmb09_eta(theta1) : variant_eta(theta1, theta2, phi2);
}

RateEstimate RateEstimate::from_counts(std::uint64_t successes, std::uint64_t trials) noexcept {
    RateEstimate r;
    r.successes = successes;
    r.trials = trials;
    if (trials > 0) {
        const double n = static_cast<double>(trials);
        r.value = static_cast<double>(successes) / n;
        r.std_error = std::sqrt(r.value * (1.0 - r.value) / n);
    }
    return r;
}

SessionStats SessionStats::from_counts(std::uint64_t photons_sent, std::uint64_t key_bits,
                                       std::uint64_t tested_bits, std::uint64_t wrong_test_bits,
                                       std::uint64_t same_basis_tested,
                                       std::uint64_t index_errors_same_basis, std::uint64_t seed) noexcept {
    SessionStats s;
    s.photons_sent = photons_sent;
    s.key_bits = key_bits;
    s.tested_bits = tested_bits;
    s.wrong_test_bits = wrong_test_bits;
    s.same_basis_tested = same_basis_tested;
    s.index_errors_same_basis = index_errors_same_basis;
    s.retained_key_bits = key_bits - tested_bits;
    s.est_qber = RateEstimate::from_counts(wrong_test_bits, tested_bits);
    s.est_iter = RateEstimate::from_counts(index_errors_same_basis, same_basis_tested);
    s.est_efficiency = RateEstimate::from_counts(key_bits, photons_sent);
    s.seed = seed;
    return s;
}

SessionKernel::SessionKernel(const ProtocolSpec& spec, const EveStrategy& eve, const NoiseSpec& noise,
                             double test_fraction, std::uint64_t seed)
    : kind_(spec.kind),
      bases_(spec.bases()),
      flip_prob_(noise.flip_prob),
      test_fraction_(test_fraction),
      seed_(seed) {
    if (eve.present) eve_basis_ = basis_from_angles(eve.theta3, eve.phi3, BasisLabel::G);
}

PhotonRecord SessionKernel::simulate(std::uint64_t photon_index) const {
    const CounterStream rng(seed_);
    const auto draw = [&](DrawSlot slot) { return rng.uniform(photon_index, slot); };
    const auto pick_basis = [&](DrawSlot slot) -> const MeasurementBasis& {
        const auto n = bases_.size();
        const auto k = std::min(static_cast<std::size_t>(draw(slot) * static_cast<double>(n)), n - 1);
        return bases_[k];
    };

    PhotonRecord rec;
    rec.photon_index = photon_index;

    const MeasurementBasis& alice = pick_basis(DrawSlot::AliceBasis);
    rec.alice_basis = alice.label;
    rec.alice_index = draw(DrawSlot::AliceIndex) < 0.5 ? StateIndex::First : StateIndex::Second;
    PureState in_flight = alice.state(rec.alice_index);

    if (eve_basis_) {
        const StateIndex k = born_sample(in_flight, *eve_basis_, draw(DrawSlot::EveMeasure));
        rec.eve_index = k;
        in_flight = eve_basis_->state(k);
    }

    const MeasurementBasis& bob = pick_basis(DrawSlot::BobBasis);
    rec.bob_basis = bob.label;
    rec.bob_index = born_sample(in_flight, bob, draw(DrawSlot::BobMeasure));
    if (flip_prob_ > 0.0 && draw(DrawSlot::NoiseTrigger) < flip_prob_) {
        rec.noise_applied = true;
        rec.bob_index = draw(DrawSlot::NoiseIndex) < 0.5 ? StateIndex::First : StateIndex::Second;
    }

    const SiftResult sift =
        kind_ == ProtocolKind::Kmb09
            ? sift_kmb09(rec.alice_basis, rec.alice_index, rec.bob_basis, rec.bob_index)
            : sift_variant(rec.alice_basis, rec.alice_index, rec.bob_basis, rec.bob_index,
                           draw(DrawSlot::SetChoice) >= 0.5);
    rec.outcome = sift.outcome;
    rec.announced_set = sift.announced_set;
    rec.decoded = sift.decoded;
    rec.intended = sift.intended;
    rec.tested = draw(DrawSlot::TestSelect) < test_fraction_;
    return rec;
}

namespace {

struct Tally {
    std::uint64_t key_bits = 0;
    std::uint64_t tested_bits = 0;
    std::uint64_t wrong_test_bits = 0;
    std::uint64_t same_basis_tested = 0;
    std::uint64_t index_errors_same_basis = 0;

    void add(const PhotonRecord& r) noexcept {
        const bool key = r.outcome == Outcome::KeyBit;
        key_bits += key;
        if (!r.tested) return;
        if (key) {
            ++tested_bits;
            wrong_test_bits += r.decoded != r.intended;
        }
        if (r.alice_basis == r.bob_basis) {
            ++same_basis_tested;
            index_errors_same_basis += r.alice_index != r.bob_index;
        }
    }

    Tally& operator+=(const Tally& o) noexcept {
        key_bits += o.key_bits;
        tested_bits += o.tested_bits;
        wrong_test_bits += o.wrong_test_bits;
        same_basis_tested += o.same_basis_tested;
        index_errors_same_basis += o.index_errors_same_basis;
        return *this;
    }
};

void validate(const EveStrategy& eve, const NoiseSpec& noise, const SessionOptions& options) {
    if (options.n_photons == 0) throw std::invalid_argument("run_session: n_photons must be >= 1");
    if (!(options.test_fraction > 0.0 && options.test_fraction <= 1.0)) {
        throw std::invalid_argument("run_session: test_fraction must lie in (0, 1]");
    }
    if (!(noise.flip_prob >= 0.0 && noise.flip_prob <= 1.0)) {
        throw std::invalid_argument("run_session: noise probability must lie in [0, 1]");
    }
    if (options.workers == 0) throw std::invalid_argument("run_session: workers must be >= 1");
    if (eve.present) {
        reduce_angle(eve.theta3);
        reduce_angle(eve.phi3);
    }
}

}  // namespace

SessionResult run_session(const ProtocolSpec& spec, const EveStrategy& eve, const NoiseSpec& noise,
                          const SessionOptions& options) {
    validate(eve, noise, options);
    const SessionKernel kernel(spec, eve, noise, options.test_fraction, options.seed);

    SessionResult result;
    if (options.keep_trace) result.trace.resize(options.n_photons);

    const std::uint64_t n = options.n_photons;
    const std::uint64_t workers = std::min<std::uint64_t>(options.workers, n);
    std::vector<Tally> tallies(workers);

    const auto run_chunk = [&](std::uint64_t w) {
        const std::uint64_t begin = n * w / workers;
        const std::uint64_t end = n * (w + 1) / workers;
        Tally local;
        for (std::uint64_t i = begin; i < end; ++i) {
            const PhotonRecord rec = kernel.simulate(i);
            local.add(rec);
            if (options.keep_trace) result.trace[i] = rec;
        }
        tallies[w] = local;
    };

    if (workers == 1) {
        run_chunk(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(run_chunk, w);
    }

    Tally total;
    for (const auto& t : tallies) total += t;
    result.stats = SessionStats::from_counts(n, total.key_bits, total.tested_bits, total.wrong_test_bits,
                                             total.same_basis_tested, total.index_errors_same_basis,
                                             options.seed);
    return result;
}

}  // namespace kmbqkd
