#pragma once

#include <string>
#include <vector>

#include "dabounds/bounds.hpp"
#include "dabounds/domain.hpp"
#include "dabounds/hypotheses.hpp"
#include "dabounds/report.hpp"

namespace dabounds::counterexample {

// The one-dimensional construction where a piecewise-linear transform aligns
// the source and target distributions perfectly while every hypothesis on the
// representation space has joint error exactly one.
struct Scenario {
    Domain source;  // U(-1, 0), label 0 for x <= -1/2 and 1 above
    Domain target;  // U(1, 2),  label 1 for x < 3/2 and 0 from 3/2 on
    PiecewiseLinearMap transform;          // x+1 for x <= 0, x-1 for x > 0
    PiecewiseFunction reference_hypothesis;  // 1 iff x in (-1/2, 3/2)
};

Scenario build();

// both pushforwards; each is U(0, 1)
PiecewiseUniform pushforward_source(const Scenario& s);
PiecewiseUniform pushforward_target(const Scenario& s);

// 1001-member parameter sweeps on [0, 1] plus the two constants
struct NamedClass {
    std::string name;
    HypothesisClass cls;
};
std::vector<NamedClass> built_in_classes();

// Every built-in divergence between the two pushforwards must vanish:
// thresholds, intervals (exact suprema via the breakpoint/midpoint grid),
// all binary functions on a 64-bin discretization (computed as half the L1
// distance), and the JS distance. left_side is the largest observed value.
BoundReport verify_invariance(const Scenario& s);

struct JointErrorReport {
    BoundReport report;      // left = max |eps_S + eps_T - 1| over the class
    double min_joint_error;
    double max_joint_error;
    std::size_t member_count;
};

// eps_S(h o g) + eps_T(h o g) == 1 for every member, within 1e-12
JointErrorReport verify_joint_error(const Scenario& s, const HypothesisClass& cls);

struct BoundComparison {
    double lambda_star;         // interval-complement sweep on [0,1]: exactly 1
    double min_cross_domain;    // min cross-domain error of the original domains: 1/2
    double induced_label_l1;    // E over U(0,1) of |f'_S - f'_T|: exactly 1
    bool cross_term_tighter;    // min_cross_domain < lambda_star
};

BoundComparison compare_bounds(const Scenario& s);

}  // namespace dabounds::counterexample
