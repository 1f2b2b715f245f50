#pragma once

// Classical post-processing rules that turn one measurement event into a key
// bit (or not).
//
// KMB09: every basis encodes a fixed letter (e -> 0, f -> 1). A key bit is
// produced whenever Alice's and Bob's indices differ; Bob reads 1 when he
// measured e and 0 when he measured f.
//
// Variant: three bases paired into S1 = {e,f}, S2 = {e,h}, S3 = {f,h}.
// Within a set the first member encodes 0 and the second 1. On a differing
// index Bob announces one of the two sets holding his basis; if Alice's basis
// is in it, Bob decodes the letter of the set member that is not his own.

#include <array>
#include <cstdint>
#include <optional>

#include "kmbqkd/qstate.hpp"

namespace kmbqkd {

enum class BasisSetId : std::uint8_t { S1, S2, S3 };

struct BasisPairSet {
    BasisSetId id;
    std::array<BasisLabel, 2> members;  // members[0] encodes 0, members[1] encodes 1

    bool contains(BasisLabel b) const noexcept { return members[0] == b || members[1] == b; }
    /// Letter of `b` in this set. `b` must be a member.
    int encode(BasisLabel b) const noexcept { return members[0] == b ? 0 : 1; }
    /// The member that is not `b`. `b` must be a member.
    BasisLabel partner(BasisLabel b) const noexcept { return members[0] == b ? members[1] : members[0]; }
};

BasisPairSet basis_pair_set(BasisSetId id) noexcept;

/// The two sets holding `b`, ordered by id. `b` must be E, F or H.
std::array<BasisSetId, 2> sets_containing(BasisLabel b);

const char* to_string(BasisSetId id) noexcept;

enum class Outcome : std::uint8_t { NoBit, KeyBit, DiscardedSetMiss };

const char* to_string(Outcome o) noexcept;

struct SiftResult {
    Outcome outcome = Outcome::NoBit;
    std::optional<int> decoded;   // Bob's bit
    std::optional<int> intended;  // Alice's bit
    std::optional<BasisSetId> announced_set;

    bool is_key_bit() const noexcept { return outcome == Outcome::KeyBit; }
    bool is_error() const noexcept { return is_key_bit() && decoded != intended; }
};

/// KMB09 decoding. Labels must be E or F.
SiftResult sift_kmb09(BasisLabel alice_basis, StateIndex alice_index, BasisLabel bob_basis,
                      StateIndex bob_index);

/// Variant decoding. `set_draw` picks the second of the two candidate sets.
SiftResult sift_variant(BasisLabel alice_basis, StateIndex alice_index, BasisLabel bob_basis,
                        StateIndex bob_index, bool set_draw);

}  // namespace kmbqkd
