#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

namespace fracdisp {

using Json = nlohmann::ordered_json;

inline constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct Metrics {
    double slope = kUnset;
    double expected = kUnset;
    double tolerance = kUnset;
    double r_squared = kUnset;
    double ratio_spread = kUnset;
};

/// Outcome of one verification.  Unset metrics serialize as null.
struct CheckReport {
    std::string check;
    Json params = Json::object();
    bool pass = false;
    Metrics metrics;
    std::size_t cells_excluded = 0;
    Json details = Json::object();
};

Json to_json(const Metrics& m);
Json to_json(const CheckReport& r);

/// Pretty-printed document followed by a newline.
void write_report(std::ostream& os, const CheckReport& r);
void write_reports(std::ostream& os, const std::vector<CheckReport>& rs);

/// Shortest round-trip decimal of x; "nan", "inf" and "-inf" otherwise.
std::string format_double(double x);

}  // namespace fracdisp
