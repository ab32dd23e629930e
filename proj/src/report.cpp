#include "dabounds/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace dabounds {

namespace {
constexpr double kVerdictTolerance = 1e-9;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}
}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::violated: return "violated";
        case Verdict::vacuous_precondition: return "vacuous_precondition";
    }
    return "unknown";
}

BoundReport BoundReport::make(std::string name, double left,
                              std::vector<std::pair<std::string, double>> terms) {
    BoundReport r;
    r.bound_name = std::move(name);
    r.left_side = left;
    r.terms = std::move(terms);
    r.right_side = 0.0;
    for (const auto& [tname, value] : r.terms) {
        (void)tname;
        r.right_side += value;
    }
    r.verdict = (r.left_side > r.right_side + kVerdictTolerance) ? Verdict::violated
                                                                 : Verdict::holds;
    return r;
}

std::string BoundReport::to_table() const {
    std::size_t width = 10;
    for (const auto& [tname, v] : terms) {
        (void)v;
        width = std::max(width, tname.size());
    }
    std::ostringstream os;
    os << bound_name << "\n";
    os << "  " << std::string(width, '-') << "\n";
    auto row = [&](const std::string& label, double v) {
        os << "  " << label << std::string(width - label.size(), ' ') << "  " << fmt(v)
           << "\n";
    };
    row("left_side", left_side);
    for (const auto& [tname, v] : terms) row(tname, v);
    row("right_side", right_side);
    os << "  verdict: " << to_string(verdict) << "\n";
    return os.str();
}

std::string BoundReport::csv_header() {
    return "bound_name,left_side,right_side,slack,verdict,terms";
}

std::string BoundReport::to_csv_row() const {
    std::ostringstream os;
    os << bound_name << ',' << fmt(left_side) << ',' << fmt(right_side) << ','
       << fmt(slack()) << ',' << to_string(verdict) << ',';
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) os << ';';
        os << terms[i].first << '=' << fmt(terms[i].second);
    }
    return os.str();
}

}  // namespace dabounds
