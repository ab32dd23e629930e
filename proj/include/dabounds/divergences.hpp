#pragma once

#include <utility>

#include "dabounds/distribution.hpp"
#include "dabounds/domain.hpp"
#include "dabounds/report.hpp"

namespace dabounds {

// All divergences use logarithms base 2, so the Jensen-Shannon divergence is
// bounded by 1 and its square root is a metric bounded by 1.

enum class DivergenceKind { l1, kl, js_divergence, js_distance };

struct DivergenceReport {
    DivergenceKind name;
    double value;
    static constexpr int log_base = 2;
};

double l1_distance(const DiscreteDistribution& p, const DiscreteDistribution& q);
// requires p absolutely continuous w.r.t. q; 0*log(0) == 0
double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q);
double js_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q);
double js_distance(const DiscreteDistribution& p, const DiscreteDistribution& q);

// Piecewise-uniform inputs are first discretized onto the common breakpoint
// refinement, one atom per refined segment. Exact: both densities are constant
// on every refined segment.
std::pair<DiscreteDistribution, DiscreteDistribution> discretize_pair(
    const PiecewiseUniform& p, const PiecewiseUniform& q);

double l1_distance(const PiecewiseUniform& p, const PiecewiseUniform& q);
double js_divergence(const PiecewiseUniform& p, const PiecewiseUniform& q);
double js_distance(const PiecewiseUniform& p, const PiecewiseUniform& q);

double js_distance(const Distribution& p, const Distribution& q);

// Lin's inequality: D_JS(p||q) <= ||p - q||_1 / 2
BoundReport check_lin(const DiscreteDistribution& p, const DiscreteDistribution& q);

// data processing inequality for the JS distance through a channel:
// d_JS(channel(p), channel(q)) <= d_JS(p, q)
BoundReport check_dpi(const DiscreteDistribution& p, const DiscreteDistribution& q,
                      const Channel& channel);

}  // namespace dabounds
