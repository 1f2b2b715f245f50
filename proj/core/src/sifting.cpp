#include "kmbqkd/sifting.hpp"

#include <stdexcept>

namespace kmbqkd {

BasisPairSet basis_pair_set(BasisSetId id) noexcept {
    switch (id) {
        case BasisSetId::S1: return {id, {BasisLabel::E, BasisLabel::F}};
        case BasisSetId::S2: return {id, {BasisLabel::E, BasisLabel::H}};
        case BasisSetId::S3: return {id, {BasisLabel::F, BasisLabel::H}};
    }
    return {id, {BasisLabel::E, BasisLabel::F}};
}

std::array<BasisSetId, 2> sets_containing(BasisLabel b) {
    switch (b) {
        case BasisLabel::E: return {BasisSetId::S1, BasisSetId::S2};
        case BasisLabel::F: return {BasisSetId::S1, BasisSetId::S3};
        case BasisLabel::H: return {BasisSetId::S2, BasisSetId::S3};
        case BasisLabel::G: break;
    }
    throw std::invalid_argument("sets_containing: G is not an Alice/Bob basis");
}

const char* to_string(BasisSetId id) noexcept {
    switch (id) {
        case BasisSetId::S1: return "S1";
        case BasisSetId::S2: return "S2";
        case BasisSetId::S3: return "S3";
    }
    return "?";
}

const char* to_string(Outcome o) noexcept {
    switch (o) {
        case Outcome::NoBit: return "NO_BIT";
        case Outcome::KeyBit: return "KEY_BIT";
        case Outcome::DiscardedSetMiss: return "DISCARDED_SET_MISS";
    }
    return "?";
}

SiftResult sift_kmb09(BasisLabel alice_basis, StateIndex alice_index, BasisLabel bob_basis,
                      StateIndex bob_index) {
    if (alice_index == bob_index) return {};
    SiftResult r;
    r.outcome = Outcome::KeyBit;
    r.decoded = bob_basis == BasisLabel::E ? 1 : 0;
    r.intended = alice_basis == BasisLabel::E ? 0 : 1;
    return r;
}

SiftResult sift_variant(BasisLabel alice_basis, StateIndex alice_index, BasisLabel bob_basis,
                        StateIndex bob_index, bool set_draw) {
    if (alice_index == bob_index) return {};
    const auto candidates = sets_containing(bob_basis);
    const BasisPairSet set = basis_pair_set(candidates[set_draw ? 1 : 0]);

    SiftResult r;
    r.announced_set = set.id;
    if (!set.contains(alice_basis)) {
        r.outcome = Outcome::DiscardedSetMiss;
        return r;
    }
    r.outcome = Outcome::KeyBit;
    r.decoded = set.encode(set.partner(bob_basis));
    r.intended = set.encode(alice_basis);
    return r;
}

}  // namespace kmbqkd
