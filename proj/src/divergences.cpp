#include "dabounds/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dabounds/errors.hpp"

namespace dabounds {

namespace {

constexpr double kLog2 = 0.69314718055994530941723212145818;

double log2_ratio(double a, double b) { return std::log(a / b) / kLog2; }

// union-support view of two discrete distributions as (p_i, q_i) pairs
std::vector<std::pair<double, double>> paired_masses(const DiscreteDistribution& p,
                                                     const DiscreteDistribution& q) {
    std::map<std::int64_t, std::pair<double, double>> u;
    for (const auto& a : p.atoms()) u[a.id].first = a.mass;
    for (const auto& a : q.atoms()) u[a.id].second = a.mass;
    std::vector<std::pair<double, double>> out;
    out.reserve(u.size());
    for (const auto& [id, pq] : u) {
        (void)id;
        out.push_back(pq);
    }
    return out;
}

double kl_on_pairs(const std::vector<std::pair<double, double>>& pairs) {
    double acc = 0.0;
    for (const auto& [pi, qi] : pairs) {
        if (pi == 0.0) continue;  // 0 * log 0 := 0
        if (qi == 0.0) {
            throw AbsoluteContinuityViolation(
                "kl_divergence: p has mass where q has none");
        }
        acc += pi * log2_ratio(pi, qi);
    }
    return acc;
}

double js_on_pairs(const std::vector<std::pair<double, double>>& pairs) {
    // the mixture dominates both components, so no continuity check is needed;
    // per-atom terms are added smallest-first so the result is bit-identical
    // under argument swap
    double acc = 0.0;
    for (const auto& [pi, qi] : pairs) {
        const double mi = 0.5 * (pi + qi);
        const double tp = pi > 0.0 ? pi * log2_ratio(pi, mi) : 0.0;
        const double tq = qi > 0.0 ? qi * log2_ratio(qi, mi) : 0.0;
        acc += 0.5 * (std::min(tp, tq) + std::max(tp, tq));
    }
    return std::min(1.0, std::max(0.0, acc));
}

}  // namespace

double l1_distance(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    double acc = 0.0;
    for (const auto& [pi, qi] : paired_masses(p, q)) acc += std::fabs(pi - qi);
    return acc;
}

double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    return kl_on_pairs(paired_masses(p, q));
}

double js_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    return js_on_pairs(paired_masses(p, q));
}

double js_distance(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    return std::sqrt(js_divergence(p, q));
}

std::pair<DiscreteDistribution, DiscreteDistribution> discretize_pair(
    const PiecewiseUniform& p, const PiecewiseUniform& q) {
    std::vector<double> grid;
    grid.reserve(p.breakpoints().size() + q.breakpoints().size());
    std::merge(p.breakpoints().begin(), p.breakpoints().end(), q.breakpoints().begin(),
               q.breakpoints().end(), std::back_inserter(grid));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    auto mass_on = [&](const PiecewiseUniform& d, double lo, double hi) {
        // refined cell (lo, hi) lies inside exactly one segment of d or outside
        auto it = std::upper_bound(d.breakpoints().begin(), d.breakpoints().end(), lo);
        if (it == d.breakpoints().begin() || it == d.breakpoints().end()) return 0.0;
        const std::size_t seg = static_cast<std::size_t>(it - d.breakpoints().begin()) - 1;
        const double w = d.breakpoints()[seg + 1] - d.breakpoints()[seg];
        return d.segment_masses()[seg] * (hi - lo) / w;
    };

    std::vector<DiscreteDistribution::Atom> pa, qa;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const std::int64_t id = static_cast<std::int64_t>(i);
        pa.push_back({id, mass_on(p, grid[i], grid[i + 1])});
        qa.push_back({id, mass_on(q, grid[i], grid[i + 1])});
    }
    return {DiscreteDistribution(std::move(pa)), DiscreteDistribution(std::move(qa))};
}

double l1_distance(const PiecewiseUniform& p, const PiecewiseUniform& q) {
    auto [dp, dq] = discretize_pair(p, q);
    return l1_distance(dp, dq);
}

double js_divergence(const PiecewiseUniform& p, const PiecewiseUniform& q) {
    auto [dp, dq] = discretize_pair(p, q);
    return js_divergence(dp, dq);
}

double js_distance(const PiecewiseUniform& p, const PiecewiseUniform& q) {
    return std::sqrt(js_divergence(p, q));
}

double js_distance(const Distribution& p, const Distribution& q) {
    if (const auto* dp = std::get_if<DiscreteDistribution>(&p)) {
        const auto* dq = std::get_if<DiscreteDistribution>(&q);
        if (dq == nullptr) throw Error("js_distance: mixed discrete/continuous pair");
        return js_distance(*dp, *dq);
    }
    const auto* cq = std::get_if<PiecewiseUniform>(&q);
    if (cq == nullptr) throw Error("js_distance: mixed discrete/continuous pair");
    return js_distance(std::get<PiecewiseUniform>(p), *cq);
}

BoundReport check_lin(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    return BoundReport::make("lin_js_vs_l1", js_divergence(p, q),
                             {{"half_l1_distance", 0.5 * l1_distance(p, q)}});
}

BoundReport check_dpi(const DiscreteDistribution& p, const DiscreteDistribution& q,
                      const Channel& channel) {
    const double after = js_distance(pushforward(p, channel), pushforward(q, channel));
    const double before = js_distance(p, q);
    return BoundReport::make("js_data_processing", after, {{"djs_before_channel", before}});
}

}  // namespace dabounds
