#include "dabounds/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dabounds/errors.hpp"

namespace dabounds {

namespace {

void require_ascending(const std::vector<double>& xs, const char* what) {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (!(xs[i] < xs[i + 1])) {
            throw Error(std::string(what) + ": breakpoints must be strictly ascending");
        }
    }
    for (double x : xs) {
        if (!std::isfinite(x)) {
            throw Error(std::string(what) + ": breakpoints must be finite");
        }
    }
}

// Index of the segment containing x among k+1 segments split by `breaks`,
// honouring per-breakpoint ownership.
std::size_t locate(const std::vector<double>& breaks,
                   const std::vector<BreakpointSide>& sides, double x) {
    auto it = std::lower_bound(breaks.begin(), breaks.end(), x);
    std::size_t i = static_cast<std::size_t>(it - breaks.begin());
    if (it != breaks.end() && *it == x) {
        // exactly on breakpoint i: left side keeps segment i, right side moves on
        return sides[i] == BreakpointSide::left ? i : i + 1;
    }
    return i;
}

}  // namespace

PiecewiseFunction::PiecewiseFunction(std::vector<double> breakpoints,
                                     std::vector<double> values,
                                     std::vector<BreakpointSide> sides)
    : breakpoints_(std::move(breakpoints)),
      values_(std::move(values)),
      sides_(std::move(sides)) {
    require_ascending(breakpoints_, "PiecewiseFunction");
    if (values_.size() != breakpoints_.size() + 1) {
        throw Error("PiecewiseFunction: need one value per segment incl. both tails");
    }
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw Error("PiecewiseFunction: values must lie in [0,1]");
        }
    }
    if (sides_.empty()) {
        sides_.assign(breakpoints_.size(), BreakpointSide::right);
    } else if (sides_.size() != breakpoints_.size()) {
        throw Error("PiecewiseFunction: one side flag per breakpoint");
    }
}

PiecewiseFunction PiecewiseFunction::constant(double v) {
    return PiecewiseFunction({}, {v});
}

PiecewiseFunction PiecewiseFunction::threshold(double t) {
    return PiecewiseFunction({t}, {0.0, 1.0}, {BreakpointSide::left});
}

PiecewiseFunction PiecewiseFunction::interval(double a, double b) {
    if (!(a < b)) throw Error("interval: requires a < b");
    return PiecewiseFunction({a, b}, {0.0, 1.0, 0.0},
                             {BreakpointSide::left, BreakpointSide::right});
}

PiecewiseFunction PiecewiseFunction::interval_complement(double a, double b) {
    if (!(a < b)) throw Error("interval_complement: requires a < b");
    return PiecewiseFunction({a, b}, {1.0, 0.0, 1.0},
                             {BreakpointSide::right, BreakpointSide::left});
}

PiecewiseFunction PiecewiseFunction::step_leq(double t, double lo, double hi) {
    return PiecewiseFunction({t}, {lo, hi}, {BreakpointSide::left});
}

PiecewiseFunction PiecewiseFunction::step_geq(double t, double lo, double hi) {
    return PiecewiseFunction({t}, {lo, hi}, {BreakpointSide::right});
}

double PiecewiseFunction::value_at(double x) const {
    return values_[locate(breakpoints_, sides_, x)];
}

bool PiecewiseFunction::is_binary() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return v == 0.0 || v == 1.0; });
}

PiecewiseFunction combine(const PiecewiseFunction& f, const PiecewiseFunction& g,
                          const std::function<double(double, double)>& op) {
    std::vector<double> merged;
    merged.reserve(f.breakpoints().size() + g.breakpoints().size());
    std::merge(f.breakpoints().begin(), f.breakpoints().end(),
               g.breakpoints().begin(), g.breakpoints().end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    std::vector<double> values(merged.size() + 1);
    std::vector<BreakpointSide> sides(merged.size(), BreakpointSide::right);

    auto rep = [&](std::size_t seg) {
        // representative interior point of segment seg
        if (merged.empty()) return 0.0;
        if (seg == 0) return merged.front() - 1.0;
        if (seg == merged.size()) return merged.back() + 1.0;
        return 0.5 * (merged[seg - 1] + merged[seg]);
    };
    for (std::size_t seg = 0; seg <= merged.size(); ++seg) {
        const double x = rep(seg);
        values[seg] = op(f.value_at(x), g.value_at(x));
    }
    for (std::size_t i = 0; i < merged.size(); ++i) {
        const double at = op(f.value_at(merged[i]), g.value_at(merged[i]));
        if (at == values[i]) {
            sides[i] = BreakpointSide::left;
        }
        // else: right (matches values[i+1], or is an unrepresentable isolated
        // point value, which is measure zero and snaps to the default)
    }
    return PiecewiseFunction(std::move(merged), std::move(values), std::move(sides));
}

PiecewiseFunction abs_diff(const PiecewiseFunction& f, const PiecewiseFunction& g) {
    return combine(f, g, [](double a, double b) { return std::fabs(a - b); });
}

PiecewiseFunction threshold_above(const PiecewiseFunction& f, double t) {
    std::vector<double> values(f.segment_count());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = f.segment_value(i) > t ? 1.0 : 0.0;
    }
    std::vector<BreakpointSide> sides(f.breakpoints().size());
    for (std::size_t i = 0; i < sides.size(); ++i) {
        const double at = f.value_at(f.breakpoints()[i]) > t ? 1.0 : 0.0;
        sides[i] = (at == values[i]) ? BreakpointSide::left : BreakpointSide::right;
    }
    return PiecewiseFunction(f.breakpoints(), std::move(values), std::move(sides));
}

PiecewiseLinearMap::PiecewiseLinearMap(std::vector<double> breakpoints,
                                       std::vector<double> slopes,
                                       std::vector<double> intercepts,
                                       std::vector<BreakpointSide> sides)
    : breakpoints_(std::move(breakpoints)),
      slopes_(std::move(slopes)),
      intercepts_(std::move(intercepts)),
      sides_(std::move(sides)) {
    require_ascending(breakpoints_, "PiecewiseLinearMap");
    if (slopes_.size() != breakpoints_.size() + 1 || intercepts_.size() != slopes_.size()) {
        throw Error("PiecewiseLinearMap: need one (slope, intercept) per piece incl. tails");
    }
    for (std::size_t i = 0; i < slopes_.size(); ++i) {
        if (!std::isfinite(slopes_[i]) || !std::isfinite(intercepts_[i])) {
            throw Error("PiecewiseLinearMap: slopes and intercepts must be finite");
        }
    }
    if (sides_.empty()) {
        sides_.assign(breakpoints_.size(), BreakpointSide::right);
    } else if (sides_.size() != breakpoints_.size()) {
        throw Error("PiecewiseLinearMap: one side flag per breakpoint");
    }
}

PiecewiseLinearMap PiecewiseLinearMap::identity() {
    return PiecewiseLinearMap({}, {1.0}, {0.0});
}

PiecewiseLinearMap PiecewiseLinearMap::constant(double c) {
    return PiecewiseLinearMap({}, {0.0}, {c});
}

std::size_t PiecewiseLinearMap::piece_index(double x) const {
    return locate(breakpoints_, sides_, x);
}

double PiecewiseLinearMap::apply(double x) const {
    const std::size_t i = piece_index(x);
    return slopes_[i] * x + intercepts_[i];
}

PiecewiseFunction compose(const PiecewiseFunction& h, const PiecewiseLinearMap& g) {
    // candidate x-breakpoints: g's own breaks plus every solution of
    // slope*x + intercept == h-break within the governing piece
    std::vector<double> cand = g.breakpoints();
    const auto& gb = g.breakpoints();
    for (std::size_t piece = 0; piece < g.piece_count(); ++piece) {
        const double s = g.slopes()[piece];
        if (s == 0.0) continue;
        const double lo = piece == 0 ? -std::numeric_limits<double>::infinity() : gb[piece - 1];
        const double hi = piece == g.piece_count() - 1
                              ? std::numeric_limits<double>::infinity()
                              : gb[piece];
        for (double hb : h.breakpoints()) {
            const double x = (hb - g.intercepts()[piece]) / s;
            if (x >= lo && x <= hi) cand.push_back(x);
        }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::vector<double> values(cand.size() + 1);
    auto rep = [&](std::size_t seg) {
        if (cand.empty()) return 0.0;
        if (seg == 0) return cand.front() - 1.0;
        if (seg == cand.size()) return cand.back() + 1.0;
        return 0.5 * (cand[seg - 1] + cand[seg]);
    };
    for (std::size_t seg = 0; seg <= cand.size(); ++seg) {
        values[seg] = h.value_at(g.apply(rep(seg)));
    }
    std::vector<BreakpointSide> sides(cand.size(), BreakpointSide::right);
    for (std::size_t i = 0; i < cand.size(); ++i) {
        if (h.value_at(g.apply(cand[i])) == values[i]) sides[i] = BreakpointSide::left;
    }
    return PiecewiseFunction(std::move(cand), std::move(values), std::move(sides));
}

}  // namespace dabounds
