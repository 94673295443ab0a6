#include "fracdisp/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace fracdisp {

namespace {

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const Metrics& m) {
    Json j = Json::object();
    j["slope"] = number(m.slope);
    j["expected"] = number(m.expected);
    j["tolerance"] = number(m.tolerance);
    j["r_squared"] = number(m.r_squared);
    j["ratio_spread"] = number(m.ratio_spread);
    return j;
}

Json to_json(const CheckReport& r) {
    Json j = Json::object();
    j["check"] = r.check;
    j["params"] = r.params;
    j["pass"] = r.pass;
    j["metrics"] = to_json(r.metrics);
    j["cells_excluded"] = r.cells_excluded;
    if (!r.details.empty()) j["details"] = r.details;
    return j;
}

void write_report(std::ostream& os, const CheckReport& r) { os << to_json(r).dump(2) << '\n'; }

void write_reports(std::ostream& os, const std::vector<CheckReport>& rs) {
    Json a = Json::array();
    for (const CheckReport& r : rs) a.push_back(to_json(r));
    os << a.dump(2) << '\n';
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace fracdisp
