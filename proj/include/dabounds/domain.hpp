#pragma once

#include <cstdint>
#include <map>
#include <variant>

#include "dabounds/distribution.hpp"
#include "dabounds/piecewise.hpp"

namespace dabounds {

// Labeling (or hypothesis) over a discrete support: atom id -> value in [0,1].
// Evaluation at a missing atom is an UndefinedOnSupport error.
using AtomMap = std::map<std::int64_t, double>;

using LabelFunction = std::variant<PiecewiseFunction, AtomMap>;

double eval_label(const LabelFunction& f, double x);

// A domain is a distribution over inputs plus a labeling function into [0,1].
struct Domain {
    Distribution distribution;
    LabelFunction labeling;

    Domain(Distribution dist, LabelFunction label);
};

// Stochastic map between discrete supports: one output distribution per atom.
class Channel {
public:
    explicit Channel(std::map<std::int64_t, DiscreteDistribution> rows);

    static Channel deterministic(const std::map<std::int64_t, std::int64_t>& atom_map);
    // z -> Bernoulli(f(z)) over output atoms {0,1}
    static Channel from_label_function(const DiscreteDistribution& support,
                                       const LabelFunction& f);

    const DiscreteDistribution& row(std::int64_t id) const;
    const std::map<std::int64_t, DiscreteDistribution>& rows() const { return rows_; }

private:
    std::map<std::int64_t, DiscreteDistribution> rows_;
};

// ---- exact expectations --------------------------------------------------

double expectation(const DiscreteDistribution& dist, const LabelFunction& fn);
double expectation(const PiecewiseUniform& dist, const PiecewiseFunction& fn);
double expectation(const Distribution& dist, const LabelFunction& fn);
double expectation(const ContinuousPushforward& dist, const PiecewiseFunction& fn);
double expectation(const Domain& domain, const LabelFunction& fn);

// epsilon_D(h, f) = E_D |h - f|
double error(const Domain& domain, const LabelFunction& h);
// disagreement between two functions under a distribution
double disagreement(const Distribution& dist, const LabelFunction& a, const LabelFunction& b);

// ---- pushforwards --------------------------------------------------------

DiscreteDistribution pushforward(const DiscreteDistribution& dist, const Channel& channel);
DiscreteDistribution pushforward(const DiscreteDistribution& dist,
                                 const std::map<std::int64_t, std::int64_t>& atom_map);
ContinuousPushforward pushforward(const PiecewiseUniform& dist, const PiecewiseLinearMap& map);

// labeling in representation space: f composed with the per-piece inverse of
// the map, stitched across the image; conflicting overlaps raise
// NonInvertibleSegment
PiecewiseFunction induced_labeling(const Domain& domain, const PiecewiseLinearMap& map);

// Bernoulli(E_D[f]) as a two-atom distribution over {0, 1}
DiscreteDistribution label_marginal(const Domain& domain);

}  // namespace dabounds
