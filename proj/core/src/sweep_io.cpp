#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

#include "kmbqkd/errors.hpp"
#include "kmbqkd/sweep_analysis.hpp"

namespace kmbqkd {

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records) {
    out << kSweepHeader << '\n';
    fmt::memory_buffer buf;
    for (const auto& r : records) {
        buf.clear();
        auto it = std::back_inserter(buf);
        fmt::format_to(it, "{:.9g},{:.9g},{:#.9g},", rad_to_deg(r.theta3), rad_to_deg(r.phi3), r.iter);
        if (r.qber_defined) {
            fmt::format_to(it, "{:#.9g}", r.qber);
        } else {
            fmt::format_to(it, "nan");
        }
        fmt::format_to(it, ",{:#.9g},{:#.9g}\n", r.eta_evan, r.eta);
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
}

namespace {

double parse_field(std::string_view field, std::size_t line_no) {
    if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || end != field.data() + field.size()) {
        throw ParseError(fmt::format("sweep file line {}: '{}' is not a number", line_no, field));
    }
    return v;
}

}  // namespace

std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("sweep file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSweepHeader) throw ParseError("sweep file header mismatch: '" + line + "'");

    std::vector<SweepRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        double values[6];
        std::size_t field = 0;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            if (field == 6) throw ParseError(fmt::format("sweep file line {}: too many columns", line_no));
            values[field++] = parse_field(rest.substr(0, comma), line_no);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (field != 6) throw ParseError(fmt::format("sweep file line {}: expected 6 columns", line_no));

        SweepRecord r;
        r.theta3 = deg_to_rad(values[0]);
        r.phi3 = deg_to_rad(values[1]);
        r.iter = values[2];
        r.qber_defined = !std::isnan(values[3]);
        r.qber = r.qber_defined ? values[3] : 0.0;
        r.eta_evan = values[4];
        r.eta = values[5];
        if (std::isnan(r.theta3) || std::isnan(r.phi3) || std::isnan(r.iter) || std::isnan(r.eta_evan) ||
            std::isnan(r.eta)) {
            throw ParseError(fmt::format("sweep file line {}: only the qber column may be nan", line_no));
        }
        out.push_back(r);
    }
    if (out.empty()) throw ParseError("sweep file has a header but no records");
    return out;
}

}  // namespace kmbqkd
