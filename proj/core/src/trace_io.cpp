#include <fmt/format.h>
#include <fmt/ostream.h>

#include <ostream>

#include "kmbqkd/protocol_sim.hpp"

namespace kmbqkd {
namespace {

template <typename T, typename F>
std::string or_dash(const std::optional<T>& v, F&& render) {
    return v ? render(*v) : std::string("-");
}

}  // namespace

void write_trace(std::ostream& out, std::span<const PhotonRecord> trace) {
    out << kTraceHeader << '\n';
    fmt::memory_buffer buf;
    for (const auto& r : trace) {
        buf.clear();
        fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{},{},{},{},{}\n", r.photon_index,
                       to_char(r.alice_basis), to_int(r.alice_index),
                       or_dash(r.eve_index, [](StateIndex i) { return std::to_string(to_int(i)); }),
                       r.noise_applied ? 1 : 0, to_char(r.bob_basis), to_int(r.bob_index),
                       or_dash(r.announced_set, [](BasisSetId s) { return std::string(to_string(s)); }),
                       to_string(r.outcome), or_dash(r.decoded, [](int b) { return std::to_string(b); }),
                       or_dash(r.intended, [](int b) { return std::to_string(b); }));
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
}

}  // namespace kmbqkd
