#include "dabounds/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dabounds/errors.hpp"

namespace dabounds {

namespace {

// pair index for grid kinds: members are all (i, j) with i < j
std::pair<std::size_t, std::size_t> unrank_pair(std::size_t idx, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t row = n - 1 - i;
        if (idx < row) return {i, i + 1 + idx};
        idx -= row;
    }
    throw Error("HypothesisClass: member index out of range");
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

HypothesisClass::HypothesisClass(Kind kind, std::vector<double> params,
                                 std::vector<PiecewiseFunction> members)
    : kind_(kind), params_(std::move(params)), members_(std::move(members)) {
    if (size() < 1) throw Error("HypothesisClass: must have at least one member");
}

HypothesisClass HypothesisClass::constants() {
    return HypothesisClass(Kind::constants, {}, {});
}

HypothesisClass HypothesisClass::threshold_grid(std::vector<double> thresholds) {
    return HypothesisClass(Kind::threshold_grid, sorted_unique(std::move(thresholds)), {});
}

HypothesisClass HypothesisClass::interval_grid(std::vector<double> grid) {
    auto g = sorted_unique(std::move(grid));
    if (g.size() < 2) throw Error("interval_grid: need at least two grid points");
    return HypothesisClass(Kind::interval_grid, std::move(g), {});
}

HypothesisClass HypothesisClass::interval_complement_grid(std::vector<double> grid) {
    auto g = sorted_unique(std::move(grid));
    if (g.size() < 2) throw Error("interval_complement_grid: need at least two grid points");
    return HypothesisClass(Kind::interval_complement_grid, std::move(g), {});
}

HypothesisClass HypothesisClass::explicit_list(std::vector<PiecewiseFunction> members) {
    return HypothesisClass(Kind::explicit_list, {}, std::move(members));
}

HypothesisClass HypothesisClass::all_binary_on_finite(std::vector<double> support) {
    auto s = sorted_unique(std::move(support));
    if (s.empty()) throw Error("all_binary_on_finite: empty support");
    if (s.size() > 20) {
        throw SupportTooLarge("all_binary_on_finite: refuses supports larger than 20 atoms");
    }
    return HypothesisClass(Kind::all_binary_on_finite, std::move(s), {});
}

std::size_t HypothesisClass::size() const {
    switch (kind_) {
        case Kind::constants: return 2;
        case Kind::threshold_grid: return params_.size();
        case Kind::interval_grid:
        case Kind::interval_complement_grid:
            return params_.size() * (params_.size() - 1) / 2;
        case Kind::explicit_list: return members_.size();
        case Kind::all_binary_on_finite: return std::size_t{1} << params_.size();
    }
    return 0;
}

PiecewiseFunction HypothesisClass::member(std::size_t i) const {
    if (i >= size()) throw Error("HypothesisClass: member index out of range");
    switch (kind_) {
        case Kind::constants:
            return PiecewiseFunction::constant(i == 0 ? 0.0 : 1.0);
        case Kind::threshold_grid:
            return PiecewiseFunction::threshold(params_[i]);
        case Kind::interval_grid: {
            auto [a, b] = unrank_pair(i, params_.size());
            return PiecewiseFunction::interval(params_[a], params_[b]);
        }
        case Kind::interval_complement_grid: {
            auto [a, b] = unrank_pair(i, params_.size());
            return PiecewiseFunction::interval_complement(params_[a], params_[b]);
        }
        case Kind::explicit_list:
            return members_[i];
        case Kind::all_binary_on_finite: {
            // bitmask i over the sorted support; breakpoints at midpoints
            std::vector<double> breaks;
            std::vector<double> values;
            values.push_back((i & 1u) ? 1.0 : 0.0);
            for (std::size_t k = 0; k + 1 < params_.size(); ++k) {
                breaks.push_back(0.5 * (params_[k] + params_[k + 1]));
                values.push_back(((i >> (k + 1)) & 1u) ? 1.0 : 0.0);
            }
            // collapse equal neighbours to keep members small
            std::vector<double> cb;
            std::vector<double> cv{values.front()};
            for (std::size_t k = 0; k < breaks.size(); ++k) {
                if (values[k + 1] != cv.back()) {
                    cb.push_back(breaks[k]);
                    cv.push_back(values[k + 1]);
                }
            }
            return PiecewiseFunction(std::move(cb), std::move(cv));
        }
    }
    throw Error("HypothesisClass: unreachable");
}

bool HypothesisClass::is_binary() const {
    if (kind_ != Kind::explicit_list) return true;  // built-in kinds are binary
    return std::all_of(members_.begin(), members_.end(),
                       [](const PiecewiseFunction& f) { return f.is_binary(); });
}

std::string HypothesisClass::kind_name() const {
    switch (kind_) {
        case Kind::constants: return "constants";
        case Kind::threshold_grid: return "threshold_grid";
        case Kind::interval_grid: return "interval_grid";
        case Kind::interval_complement_grid: return "interval_complement_grid";
        case Kind::explicit_list: return "explicit_list";
        case Kind::all_binary_on_finite: return "all_binary_on_finite";
    }
    return "unknown";
}

std::vector<double> exact_parameter_grid(const std::vector<const Distribution*>& dists) {
    std::vector<double> pts;
    for (const Distribution* d : dists) {
        if (const auto* dd = std::get_if<DiscreteDistribution>(d)) {
            for (const auto& a : dd->atoms()) pts.push_back(static_cast<double>(a.id));
        } else {
            const auto& pu = std::get<PiecewiseUniform>(*d);
            pts.insert(pts.end(), pu.breakpoints().begin(), pu.breakpoints().end());
        }
    }
    pts = sorted_unique(std::move(pts));
    if (pts.empty()) return {0.0};
    std::vector<double> grid;
    grid.push_back(pts.front() - 1.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        grid.push_back(pts[i]);
        if (i + 1 < pts.size()) grid.push_back(0.5 * (pts[i] + pts[i + 1]));
    }
    grid.push_back(pts.back() + 1.0);
    return grid;
}

HDivergenceResult h_divergence(const HypothesisClass& cls, const Distribution& p,
                               const Distribution& q) {
    if (!cls.is_binary()) {
        throw NonBinaryClass("h_divergence: defined for binary hypothesis classes only");
    }
    double best = -1.0;
    std::size_t best_i = 0;
    const std::size_t n = cls.size();
    for (std::size_t i = 0; i < n; ++i) {
        const PiecewiseFunction h = cls.member(i);
        const double v = std::fabs(expectation(p, h) - expectation(q, h));
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    return {best, best_i, cls.member(best_i)};
}

HypothesisClass xor_class(const HypothesisClass& cls) {
    if (!cls.is_binary()) {
        throw NonBinaryClass("xor_class: requires binary members");
    }
    const std::size_t n = cls.size();
    std::vector<PiecewiseFunction> members;
    members.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        const PiecewiseFunction hi = cls.member(i);
        for (std::size_t j = i; j < n; ++j) {
            members.push_back(abs_diff(hi, cls.member(j)));
        }
    }
    return HypothesisClass::explicit_list(std::move(members));
}

HypothesisClass disagreement_class(const HypothesisClass& cls, std::vector<double> t_grid) {
    if (t_grid.empty()) {
        if (cls.is_binary()) {
            t_grid = {0.5};
        } else {
            for (int k = 0; k <= 32; ++k) t_grid.push_back(static_cast<double>(k) / 32.0);
        }
    }
    const std::size_t n = cls.size();
    std::vector<PiecewiseFunction> members;
    members.reserve(n * (n + 1) / 2 * t_grid.size());
    for (std::size_t i = 0; i < n; ++i) {
        const PiecewiseFunction hi = cls.member(i);
        for (std::size_t j = i; j < n; ++j) {
            const PiecewiseFunction gap = abs_diff(hi, cls.member(j));
            for (double t : t_grid) {
                members.push_back(threshold_above(gap, t));
            }
        }
    }
    return HypothesisClass::explicit_list(std::move(members));
}

HDivergenceResult empirical_h_divergence(const HypothesisClass& cls,
                                         const std::vector<double>& sample_p,
                                         const std::vector<double>& sample_q) {
    if (sample_p.empty() || sample_q.empty()) {
        throw Error("empirical_h_divergence: samples must be nonempty");
    }
    if (!cls.is_binary()) {
        throw NonBinaryClass("empirical_h_divergence: defined for binary classes only");
    }
    const WeightedSample wp = empirical_distribution(sample_p);
    const WeightedSample wq = empirical_distribution(sample_q);
    auto prob_one = [](const WeightedSample& w, const PiecewiseFunction& h) {
        double acc = 0.0;
        for (std::size_t k = 0; k < w.points.size(); ++k) {
            acc += w.weights[k] * h.value_at(w.points[k]);
        }
        return acc;
    };
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < cls.size(); ++i) {
        const PiecewiseFunction h = cls.member(i);
        const double v = std::fabs(prob_one(wp, h) - prob_one(wq, h));
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    return {best, best_i, cls.member(best_i)};
}

BestJointHypothesis best_joint_hypothesis(const HypothesisClass& cls, const Domain& source,
                                          const Domain& target) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < cls.size(); ++i) {
        const LabelFunction h = cls.member(i);
        const double joint = error(source, h) + error(target, h);
        if (joint < best) {
            best = joint;
            best_i = i;
        }
    }
    return {cls.member(best_i), best_i, best};
}

std::pair<double, double> cross_domain_errors(const Domain& source, const Domain& target) {
    const double eps_s_of_ft = disagreement(source.distribution, source.labeling,
                                            target.labeling);
    const double eps_t_of_fs = disagreement(target.distribution, source.labeling,
                                            target.labeling);
    return {eps_s_of_ft, eps_t_of_fs};
}

}  // namespace dabounds
