#pragma once

#include <cstdint>
#include <map>

#include "dabounds/domain.hpp"
#include "dabounds/hypotheses.hpp"
#include "dabounds/rng.hpp"

namespace dabounds {

// Generators for the randomized theorem suites: small discrete worlds with
// supports of at most `max_atoms` atoms. Everything is driven by the caller's
// Rng so suites are reproducible from one seed.
class InstanceGenerator {
public:
    InstanceGenerator(std::uint64_t seed, std::size_t max_atoms = 8)
        : rng_(seed), max_atoms_(max_atoms) {}

    // support {0, ..., k-1} with k in [1, max_atoms]
    std::vector<std::int64_t> support(std::size_t min_atoms = 1);

    // random masses over the given support; occasionally zeroes some atoms
    DiscreteDistribution distribution(const std::vector<std::int64_t>& support);

    // binary labeling over the support
    AtomMap binary_map(const std::vector<std::int64_t>& support);
    // [0,1]-valued labeling over the support
    AtomMap soft_map(const std::vector<std::int64_t>& support);

    Domain domain(const std::vector<std::int64_t>& support, bool binary_labels = true);

    // deterministic transform into a support of the given size
    std::map<std::int64_t, std::int64_t> atom_transform(
        const std::vector<std::int64_t>& from, std::size_t image_size);

    // stochastic channel into a support of the given size
    Channel channel(const std::vector<std::int64_t>& from, std::size_t image_size);

    // explicit class of random binary functions on the support
    HypothesisClass binary_class(const std::vector<std::int64_t>& support,
                                 std::size_t max_members = 8);

    Rng& rng() { return rng_; }

private:
    Rng rng_;
    std::size_t max_atoms_;
};

}  // namespace dabounds
