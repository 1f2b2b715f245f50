#pragma once

// Command-line front end. `run` is the whole program minus process plumbing,
// so tests can drive it in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kmbqkd/protocol_sim.hpp"

namespace kmbqkd::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,  // I/O, parse, undefined rate, no data
    kUsage = 2,
};

/// Flags as given on the command line. Angles are degrees.
struct RunConfig {
    std::string command;
    std::string protocol;
    std::optional<double> theta1, theta2, phi2, theta3, phi3;
    std::uint64_t photons = 100000;
    double noise = 0.0;
    bool eve = false;
    std::optional<std::uint64_t> seed;
    double test_fraction = 0.2;
    std::size_t grid = 360;
    std::optional<std::string> out_path;
    bool trace = false;
    unsigned workers = 1;
    std::optional<std::string> sweep_path;
    std::optional<std::string> report_path;
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The simulate report; parse_session_report reads it back.
void write_session_report(std::ostream& out, const RunConfig& config, const SessionStats& stats);
SessionStats parse_session_report(std::istream& in);

/// Fixed 9-significant-digit rendering used for every rate.
std::string format_rate(double value);

}  // namespace kmbqkd::cli
