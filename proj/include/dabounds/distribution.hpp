#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "dabounds/piecewise.hpp"

namespace dabounds {

inline constexpr double kMassTolerance = 1e-9;

// Finitely supported distribution over integer atom ids. Construction
// canonicalizes: atoms sorted by id, duplicates merged, total mass within
// 1e-9 of one.
class DiscreteDistribution {
public:
    struct Atom {
        std::int64_t id;
        double mass;
        bool operator==(const Atom&) const = default;
    };

    explicit DiscreteDistribution(std::vector<Atom> atoms);

    static DiscreteDistribution point_mass(std::int64_t id);
    static DiscreteDistribution bernoulli(double p);  // atoms {0, 1}

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double mass_of(std::int64_t id) const;  // 0 when absent
    double total_mass() const;

    bool operator==(const DiscreteDistribution&) const = default;

private:
    std::vector<Atom> atoms_;
};

// Probability distribution with piecewise-constant density on the real line:
// strictly ascending breakpoints, one mass per segment, masses sum to one.
class PiecewiseUniform {
public:
    PiecewiseUniform(std::vector<double> breakpoints, std::vector<double> segment_masses);

    static PiecewiseUniform uniform(double a, double b);

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& segment_masses() const { return segment_masses_; }
    std::size_t segment_count() const { return segment_masses_.size(); }
    double density(std::size_t segment) const;
    double total_mass() const;
    // integral of the density over [a, b]
    double mass_between(double a, double b) const;

    // same support geometry and per-segment masses up to `tol`, after dropping
    // zero-mass outer segments and merging equal-density neighbours
    bool same_distribution(const PiecewiseUniform& other, double tol = kMassTolerance) const;

    bool operator==(const PiecewiseUniform&) const = default;

private:
    std::vector<double> breakpoints_;
    std::vector<double> segment_masses_;
};

using Distribution = std::variant<DiscreteDistribution, PiecewiseUniform>;

struct RealAtom {
    double location;
    double mass;
};

// Result of pushing a distribution through a piecewise-linear map. Pieces with
// nonzero slope keep the output piecewise uniform; zero-slope pieces collapse
// their mass onto point atoms, which the caller must handle explicitly.
struct ContinuousPushforward {
    std::vector<double> breakpoints;      // empty when everything collapsed
    std::vector<double> segment_masses;   // sums to 1 minus the atom mass
    std::vector<RealAtom> atoms;          // sorted by location, merged

    bool has_atoms() const { return !atoms.empty(); }
    double continuous_mass() const;
    PiecewiseUniform as_piecewise_uniform() const;  // throws when has_atoms()
};

// Deterministic i.i.d. draws; discrete atoms are reported by their id value.
std::vector<double> sample(const Distribution& dist, std::size_t n, std::uint64_t seed);
std::vector<double> sample(const DiscreteDistribution& dist, std::size_t n, std::uint64_t seed);
std::vector<double> sample(const PiecewiseUniform& dist, std::size_t n, std::uint64_t seed);

// Empirical distribution of a sample: mass 1/n per draw, duplicates merged.
struct WeightedSample {
    std::vector<double> points;   // sorted, unique
    std::vector<double> weights;  // same length, sums to one
};
WeightedSample empirical_distribution(const std::vector<double>& draws);

}  // namespace dabounds
