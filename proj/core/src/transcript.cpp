#include "kmbqkd/protocol_sim.hpp"

namespace kmbqkd {

std::vector<Announcement> public_transcript(ProtocolKind kind, std::span<const PhotonRecord> trace) {
    std::vector<Announcement> out;
    out.reserve(trace.size() * 2);

    // Step 4: indices of all prepared states.
    for (const auto& r : trace) {
        Announcement a;
        a.step = 4;
        a.kind = AnnouncementKind::AliceIndex;
        a.photon = r.photon_index;
        a.alice_index = r.alice_index;
        out.push_back(a);
    }

    // Step 5: Bob flags photons whose index differs, naming a set in the variant.
    for (const auto& r : trace) {
        if (r.alice_index == r.bob_index) continue;
        Announcement a;
        a.step = 5;
        a.kind = AnnouncementKind::BobDifferentIndex;
        a.photon = r.photon_index;
        a.set = r.announced_set;
        out.push_back(a);
    }

    // Step 6: Alice confirms or rejects each announced set.
    if (kind == ProtocolKind::Variant) {
        for (const auto& r : trace) {
            if (!r.announced_set) continue;
            Announcement a;
            a.step = 6;
            a.kind = AnnouncementKind::AliceSetContains;
            a.photon = r.photon_index;
            a.set = r.announced_set;
            a.set_contains_alice_basis = r.outcome == Outcome::KeyBit;
            out.push_back(a);
        }
    }

    // Step 7: public comparison of the sampled photons.
    for (const auto& r : trace) {
        if (!r.tested) continue;
        Announcement a;
        a.step = 7;
        a.kind = AnnouncementKind::TestReveal;
        a.photon = r.photon_index;
        a.alice_basis = r.alice_basis;
        a.bob_basis = r.bob_basis;
        if (r.outcome == Outcome::KeyBit) {
            a.alice_bit = r.intended;
            a.bob_bit = r.decoded;
        }
        out.push_back(a);
    }
    return out;
}

SessionStats stats_from_transcript(std::span<const Announcement> transcript, std::uint64_t seed) {
    std::uint64_t photons = 0;
    std::uint64_t flagged = 0;
    std::uint64_t confirmed = 0;
    bool has_set_step = false;
    std::vector<bool> index_differs;

    for (const auto& a : transcript) {
        switch (a.kind) {
            case AnnouncementKind::AliceIndex:
                ++photons;
                break;
            case AnnouncementKind::BobDifferentIndex:
                ++flagged;
                if (index_differs.size() <= a.photon) index_differs.resize(a.photon + 1, false);
                index_differs[a.photon] = true;
                break;
            case AnnouncementKind::AliceSetContains:
                has_set_step = true;
                confirmed += a.set_contains_alice_basis.value_or(false);
                break;
            case AnnouncementKind::TestReveal:
                break;
        }
    }

    std::uint64_t tested = 0, wrong = 0, same_basis = 0, index_errors = 0;
    for (const auto& a : transcript) {
        if (a.kind != AnnouncementKind::TestReveal) continue;
        if (a.alice_bit && a.bob_bit) {
            ++tested;
            wrong += *a.alice_bit != *a.bob_bit;
        }
        if (a.alice_basis == a.bob_basis) {
            ++same_basis;
            index_errors += a.photon < index_differs.size() && index_differs[a.photon];
        }
    }

    const std::uint64_t key_bits = has_set_step ? confirmed : flagged;
    return SessionStats::from_counts(photons, key_bits, tested, wrong, same_basis, index_errors, seed);
}

}  // namespace kmbqkd
