#include "dabounds/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dabounds/divergences.hpp"
#include "dabounds/errors.hpp"

namespace dabounds::counterexample {

Scenario build() {
    Domain source(PiecewiseUniform::uniform(-1.0, 0.0),
                  PiecewiseFunction::step_leq(-0.5, 0.0, 1.0));
    Domain target(PiecewiseUniform::uniform(1.0, 2.0),
                  PiecewiseFunction::step_geq(1.5, 1.0, 0.0));
    // x+1 on x <= 0, x-1 on x > 0
    PiecewiseLinearMap transform({0.0}, {1.0, 1.0}, {1.0, -1.0}, {BreakpointSide::left});
    return Scenario{std::move(source), std::move(target), std::move(transform),
                    PiecewiseFunction::interval(-0.5, 1.5)};
}

namespace {

const PiecewiseUniform& continuous_dist(const Domain& d) {
    return std::get<PiecewiseUniform>(d.distribution);
}

}  // namespace

PiecewiseUniform pushforward_source(const Scenario& s) {
    return pushforward(continuous_dist(s.source), s.transform).as_piecewise_uniform();
}

PiecewiseUniform pushforward_target(const Scenario& s) {
    return pushforward(continuous_dist(s.target), s.transform).as_piecewise_uniform();
}

std::vector<NamedClass> built_in_classes() {
    std::vector<NamedClass> out;

    std::vector<double> thresholds(1001);
    for (int k = 0; k <= 1000; ++k) thresholds[k] = static_cast<double>(k) / 1000.0;
    out.push_back({"thresholds", HypothesisClass::threshold_grid(thresholds)});

    // 91 positions x 11 widths = 1001 intervals sweeping [0, 1]
    std::vector<PiecewiseFunction> intervals;
    std::vector<PiecewiseFunction> complements;
    intervals.reserve(1001);
    complements.reserve(1001);
    for (int j = 0; j < 11; ++j) {
        const double width = static_cast<double>(j + 1) / 12.0;
        for (int i = 0; i < 91; ++i) {
            const double a = (static_cast<double>(i) / 90.0) * (1.0 - width);
            intervals.push_back(PiecewiseFunction::interval(a, a + width));
            complements.push_back(PiecewiseFunction::interval_complement(a, a + width));
        }
    }
    out.push_back({"intervals", HypothesisClass::explicit_list(std::move(intervals))});
    out.push_back(
        {"interval_complements", HypothesisClass::explicit_list(std::move(complements))});
    out.push_back({"constants", HypothesisClass::constants()});
    return out;
}

BoundReport verify_invariance(const Scenario& s) {
    const PiecewiseUniform zs = pushforward_source(s);
    const PiecewiseUniform zt = pushforward_target(s);
    const Distribution dzs = zs;
    const Distribution dzt = zt;

    std::vector<std::pair<std::string, double>> terms;

    // exact suprema over all thresholds/intervals: the divergence is piecewise
    // constant in the parameters, so the breakpoint/midpoint grid attains it
    const std::vector<double> grid = exact_parameter_grid({&dzs, &dzt});
    terms.emplace_back(
        "d_thresholds", h_divergence(HypothesisClass::threshold_grid(grid), dzs, dzt).value);
    terms.emplace_back(
        "d_intervals", h_divergence(HypothesisClass::interval_grid(grid), dzs, dzt).value);

    // all binary functions on a 64-bin discretization; the supremum over that
    // class is half the L1 distance between the bin mass vectors
    const double lo = std::min(zs.breakpoints().front(), zt.breakpoints().front());
    const double hi = std::max(zs.breakpoints().back(), zt.breakpoints().back());
    double l1_bins = 0.0;
    for (int b = 0; b < 64; ++b) {
        const double a = lo + (hi - lo) * static_cast<double>(b) / 64.0;
        const double c = lo + (hi - lo) * static_cast<double>(b + 1) / 64.0;
        l1_bins += std::fabs(zs.mass_between(a, c) - zt.mass_between(a, c));
    }
    terms.emplace_back("d_all_binary_64bins", 0.5 * l1_bins);
    terms.emplace_back("js_distance", js_distance(zs, zt));

    double worst = 0.0;
    for (const auto& [name, v] : terms) {
        (void)name;
        worst = std::max(worst, v);
    }
    return BoundReport::make("representation_invariance", worst, std::move(terms));
}

JointErrorReport verify_joint_error(const Scenario& s, const HypothesisClass& cls) {
    if (!cls.is_binary()) {
        throw NonBinaryClass("verify_joint_error: requires a binary class");
    }
    double min_joint = std::numeric_limits<double>::infinity();
    double max_joint = -min_joint;
    for (std::size_t i = 0; i < cls.size(); ++i) {
        const PiecewiseFunction hg = compose(cls.member(i), s.transform);
        const double joint = error(s.source, LabelFunction(hg)) +
                             error(s.target, LabelFunction(hg));
        min_joint = std::min(min_joint, joint);
        max_joint = std::max(max_joint, joint);
    }
    const double deviation =
        std::max(std::fabs(min_joint - 1.0), std::fabs(max_joint - 1.0));

    JointErrorReport out{BoundReport::make("joint_error_identity", deviation,
                                           {{"identity_tolerance", 1e-12}}),
                         min_joint, max_joint, cls.size()};
    out.report.verdict = deviation <= 1e-12 ? Verdict::holds : Verdict::violated;
    return out;
}

BoundComparison compare_bounds(const Scenario& s) {
    std::vector<double> grid(1001);
    for (int k = 0; k <= 1000; ++k) grid[k] = static_cast<double>(k) / 1000.0;

    // every complement of a [0,1]-interval is right on exactly one original
    // domain and wrong on half of each, so each member's joint risk is 1
    std::vector<PiecewiseFunction> complements;
    for (int j = 0; j < 11; ++j) {
        const double width = static_cast<double>(j + 1) / 12.0;
        for (int i = 0; i < 91; ++i) {
            const double a = (static_cast<double>(i) / 90.0) * (1.0 - width);
            complements.push_back(PiecewiseFunction::interval_complement(a, a + width));
        }
    }
    const auto best = best_joint_hypothesis(
        HypothesisClass::explicit_list(std::move(complements)), s.source, s.target);

    const auto [cross_s, cross_t] = cross_domain_errors(s.source, s.target);
    const double min_cross = std::min(cross_s, cross_t);

    const PiecewiseFunction f_s_induced = induced_labeling(s.source, s.transform);
    const PiecewiseFunction f_t_induced = induced_labeling(s.target, s.transform);
    const double l1 = expectation(pushforward_source(s), abs_diff(f_s_induced, f_t_induced));

    return BoundComparison{best.lambda_star, min_cross, l1, min_cross < best.lambda_star};
}

}  // namespace dabounds::counterexample
