#pragma once

// Event-level Monte Carlo of complete protocol sessions: preparation,
// optional intercept-resend eavesdropping, optional depolarizing noise,
// Bob's measurement, the public announcements and sifting, and rate
// estimation from a revealed test sample.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "kmbqkd/qstate.hpp"
#include "kmbqkd/sifting.hpp"

namespace kmbqkd {

enum class ProtocolKind : std::uint8_t { Kmb09, Variant };

const char* to_string(ProtocolKind kind) noexcept;

struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::Kmb09;
    double theta1 = 0.0;
    double theta2 = 0.0;  // variant only
    double phi2 = 0.0;    // variant only

    static ProtocolSpec kmb09(double theta1) { return {ProtocolKind::Kmb09, theta1, 0.0, 0.0}; }
    static ProtocolSpec variant(double theta1, double theta2, double phi2) {
        return {ProtocolKind::Variant, theta1, theta2, phi2};
    }

    int basis_count() const noexcept { return kind == ProtocolKind::Kmb09 ? 2 : 3; }
    /// Alice/Bob bases in label order (e, f[, h]).
    std::vector<MeasurementBasis> bases() const;
    /// Key bits per photon with no eavesdropper and no noise.
    double eta() const;
};

struct EveStrategy {
    bool present = false;
    double theta3 = 0.0;
    double phi3 = 0.0;

    static EveStrategy none() { return {}; }
    static EveStrategy intercept_resend(double theta3, double phi3) { return {true, theta3, phi3}; }
};

struct NoiseSpec {
    /// Per-photon probability that Bob's outcome is replaced by a fair coin.
    double flip_prob = 0.0;
};

struct PhotonRecord {
    std::uint64_t photon_index = 0;
    BasisLabel alice_basis = BasisLabel::E;
    StateIndex alice_index = StateIndex::First;
    std::optional<StateIndex> eve_index;
    bool noise_applied = false;
    BasisLabel bob_basis = BasisLabel::E;
    StateIndex bob_index = StateIndex::First;
    std::optional<BasisSetId> announced_set;
    Outcome outcome = Outcome::NoBit;
    std::optional<int> decoded;
    std::optional<int> intended;
    bool tested = false;  // selected for the public comparison

    friend bool operator==(const PhotonRecord&, const PhotonRecord&) = default;
};

/// A binomial proportion with its standard error sqrt(p(1-p)/n).
struct RateEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;

    bool has_data() const noexcept { return trials > 0; }
    static RateEstimate from_counts(std::uint64_t successes, std::uint64_t trials) noexcept;
};

struct SessionStats {
    std::uint64_t photons_sent = 0;
    std::uint64_t key_bits = 0;
    std::uint64_t tested_bits = 0;       // key bits in the revealed sample
    std::uint64_t wrong_test_bits = 0;
    std::uint64_t same_basis_tested = 0;  // revealed photons where both used the same basis
    std::uint64_t index_errors_same_basis = 0;
    std::uint64_t retained_key_bits = 0;  // key_bits - tested_bits
    RateEstimate est_qber;
    RateEstimate est_iter;
    RateEstimate est_efficiency;
    std::uint64_t seed = 0;

    bool no_key_bits() const noexcept { return key_bits == 0; }

    /// Rebuilds all derived fields from the raw counts.
    static SessionStats from_counts(std::uint64_t photons_sent, std::uint64_t key_bits,
                                    std::uint64_t tested_bits, std::uint64_t wrong_test_bits,
                                    std::uint64_t same_basis_tested,
                                    std::uint64_t index_errors_same_basis, std::uint64_t seed) noexcept;
};

struct SessionOptions {
    std::uint64_t n_photons = 100000;
    double test_fraction = 0.2;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    bool keep_trace = false;
};

struct SessionResult {
    SessionStats stats;
    std::vector<PhotonRecord> trace;  // empty unless keep_trace
};

/// Runs one session. Output is a pure function of the arguments; the worker
/// count only changes how photons are partitioned.
///
/// Throws std::invalid_argument for n_photons == 0, test_fraction outside
/// (0, 1], flip_prob outside [0, 1], or workers == 0; InvalidAngleError for
/// non-finite angles.
SessionResult run_session(const ProtocolSpec& spec, const EveStrategy& eve, const NoiseSpec& noise,
                          const SessionOptions& options);

/// Simulates a single photon of a session. Exposed for tests; run_session
/// produces exactly these records.
class SessionKernel {
public:
    SessionKernel(const ProtocolSpec& spec, const EveStrategy& eve, const NoiseSpec& noise,
                  double test_fraction, std::uint64_t seed);

    PhotonRecord simulate(std::uint64_t photon_index) const;

private:
    ProtocolKind kind_;
    std::vector<MeasurementBasis> bases_;
    std::optional<MeasurementBasis> eve_basis_;
    double flip_prob_;
    double test_fraction_;
    std::uint64_t seed_;
};

// -- public transcript ------------------------------------------------------

enum class AnnouncementKind : std::uint8_t {
    AliceIndex,          // step 4: Alice publishes the index of every photon
    BobDifferentIndex,   // step 5: Bob flags differing indices (+ set for the variant)
    AliceSetContains,    // step 6: Alice says whether the set holds her basis
    TestReveal,          // step 7: bases (and bits, for key bits) of sampled photons
};

struct Announcement {
    int step = 0;
    AnnouncementKind kind = AnnouncementKind::AliceIndex;
    std::uint64_t photon = 0;
    std::optional<StateIndex> alice_index;
    std::optional<BasisSetId> set;
    std::optional<bool> set_contains_alice_basis;
    std::optional<BasisLabel> alice_basis;
    std::optional<BasisLabel> bob_basis;
    std::optional<int> alice_bit;
    std::optional<int> bob_bit;
};

/// Everything Alice and Bob say over the public channel, in protocol order.
std::vector<Announcement> public_transcript(ProtocolKind kind, std::span<const PhotonRecord> trace);

/// The estimates Alice and Bob can compute from the transcript alone.
SessionStats stats_from_transcript(std::span<const Announcement> transcript, std::uint64_t seed);

// -- trace dump -------------------------------------------------------------

inline constexpr const char* kTraceHeader =
    "photon_index,alice_basis,alice_index,eve_index,noise_applied,bob_basis,bob_index,set,outcome,"
    "decoded,intended";

/// One CSV row per photon under kTraceHeader; absent values are written as '-'.
void write_trace(std::ostream& out, std::span<const PhotonRecord> trace);

}  // namespace kmbqkd
