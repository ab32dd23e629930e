#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace dabounds {

// Which neighbouring segment owns the point x == breakpoint. The default is
// `right` (left-closed segments [b, next)); constructors that model "<=" style
// definitions override it. Only point evaluation cares; segment masses do not.
enum class BreakpointSide { left, right };

class PiecewiseLinearMap;

// Piecewise-constant function on the whole real line. With k breakpoints there
// are k+1 segment values including both infinite tails.
class PiecewiseFunction {
public:
    PiecewiseFunction(std::vector<double> breakpoints, std::vector<double> values,
                      std::vector<BreakpointSide> sides = {});

    static PiecewiseFunction constant(double v);
    // 1 for x > t, 0 otherwise
    static PiecewiseFunction threshold(double t);
    // 1 on the open interval (a, b), 0 outside
    static PiecewiseFunction interval(double a, double b);
    // 0 on the closed interval [a, b], 1 outside
    static PiecewiseFunction interval_complement(double a, double b);
    // lo for x <= t, hi for x > t
    static PiecewiseFunction step_leq(double t, double lo, double hi);
    // lo for x < t, hi for x >= t
    static PiecewiseFunction step_geq(double t, double lo, double hi);

    double value_at(double x) const;
    bool is_binary() const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<BreakpointSide>& sides() const { return sides_; }

    // value on the open segment i, where segment 0 is the left tail
    double segment_value(std::size_t i) const { return values_[i]; }
    std::size_t segment_count() const { return values_.size(); }

    bool operator==(const PiecewiseFunction&) const = default;

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
    std::vector<BreakpointSide> sides_;
};

// Pointwise combination on the merged breakpoint grid. Interior values come
// from exact evaluation inside each open segment; the value at a shared
// breakpoint is combined exactly and snapped to whichever side it matches
// (isolated point values that match neither side are measure zero and resolve
// to the left-closed default).
PiecewiseFunction combine(const PiecewiseFunction& f, const PiecewiseFunction& g,
                          const std::function<double(double, double)>& op);

PiecewiseFunction abs_diff(const PiecewiseFunction& f, const PiecewiseFunction& g);

// 1 where f(x) > t, else 0
PiecewiseFunction threshold_above(const PiecewiseFunction& f, double t);

// Piecewise-linear map on the real line: k breakpoints, k+1 (slope, intercept)
// pieces including both tails.
class PiecewiseLinearMap {
public:
    PiecewiseLinearMap(std::vector<double> breakpoints, std::vector<double> slopes,
                       std::vector<double> intercepts,
                       std::vector<BreakpointSide> sides = {});

    static PiecewiseLinearMap identity();
    static PiecewiseLinearMap constant(double c);

    double apply(double x) const;
    std::size_t piece_index(double x) const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& slopes() const { return slopes_; }
    const std::vector<double>& intercepts() const { return intercepts_; }
    std::size_t piece_count() const { return slopes_.size(); }

private:
    std::vector<double> breakpoints_;
    std::vector<double> slopes_;
    std::vector<double> intercepts_;
    std::vector<BreakpointSide> sides_;
};

// h(g(x)) as a piecewise-constant function: piecewise-constant h composed with
// piecewise-linear g stays piecewise constant.
PiecewiseFunction compose(const PiecewiseFunction& h, const PiecewiseLinearMap& g);

}  // namespace dabounds
