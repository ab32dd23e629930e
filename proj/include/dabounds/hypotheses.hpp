#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dabounds/domain.hpp"

namespace dabounds {

// Finite, enumerable family of [0,1]-valued functions on the real line.
// Members are materialized on demand through member(i); grid kinds never store
// their members. Discrete supports are covered by placing breakpoints at the
// midpoints between consecutive atoms, so every binary function on a finite
// support is representable.
class HypothesisClass {
public:
    enum class Kind {
        constants,
        threshold_grid,
        interval_grid,
        interval_complement_grid,
        explicit_list,
        all_binary_on_finite,
    };

    static HypothesisClass constants();
    // members 1[x > t] for each grid value t
    static HypothesisClass threshold_grid(std::vector<double> thresholds);
    // members 1[a < x < b] over all grid pairs a < b
    static HypothesisClass interval_grid(std::vector<double> grid);
    // members 0 on [a, b], 1 outside, over all grid pairs a < b
    static HypothesisClass interval_complement_grid(std::vector<double> grid);
    static HypothesisClass explicit_list(std::vector<PiecewiseFunction> members);
    // every binary function on the given support points (at most 20)
    static HypothesisClass all_binary_on_finite(std::vector<double> support);

    Kind kind() const { return kind_; }
    std::size_t size() const;
    PiecewiseFunction member(std::size_t i) const;
    bool is_binary() const;

    const std::vector<double>& parameters() const { return params_; }
    const std::vector<PiecewiseFunction>& members() const { return members_; }

    std::string kind_name() const;

private:
    HypothesisClass(Kind kind, std::vector<double> params,
                    std::vector<PiecewiseFunction> members);

    Kind kind_;
    std::vector<double> params_;
    std::vector<PiecewiseFunction> members_;
};

// Candidate parameter grid attaining the exact supremum for threshold and
// interval families against the given piecewise objects: all breakpoints plus
// the midpoints between consecutive ones, plus one point beyond each end.
// The H-divergence objective is piecewise constant in the parameter, so this
// finite set contains a maximizer.
std::vector<double> exact_parameter_grid(const std::vector<const Distribution*>& dists);

struct HDivergenceResult {
    double value;
    std::size_t witness_index;
    PiecewiseFunction witness;
};

// d_H(p, q) = max over members h of |Pr_p(h = 1) - Pr_q(h = 1)|.
// Members must be binary; ties break to the first maximizer.
HDivergenceResult h_divergence(const HypothesisClass& cls, const Distribution& p,
                               const Distribution& q);

// all pairwise XORs (explicit class); requires binary members
HypothesisClass xor_class(const HypothesisClass& cls);

// H-tilde = { 1[|h(x) - h'(x)| > t] } over member pairs and t in the grid.
// Empty grid selects the default: {0.5} for binary classes (inert), otherwise
// 33 evenly spaced values, a documented lower bound for real-valued classes.
HypothesisClass disagreement_class(const HypothesisClass& cls,
                                   std::vector<double> t_grid = {});

// d_H over the empirical distributions of two samples
HDivergenceResult empirical_h_divergence(const HypothesisClass& cls,
                                         const std::vector<double>& sample_p,
                                         const std::vector<double>& sample_q);

struct BestJointHypothesis {
    PiecewiseFunction hypothesis;
    std::size_t index;
    double lambda_star;  // min over the class of eps_S + eps_T
};

BestJointHypothesis best_joint_hypothesis(const HypothesisClass& cls, const Domain& source,
                                          const Domain& target);

// (eps_S(f_T), eps_T(f_S)): each domain's error of the other's labeling
std::pair<double, double> cross_domain_errors(const Domain& source, const Domain& target);

}  // namespace dabounds
