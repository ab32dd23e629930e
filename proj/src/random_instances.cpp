#include "dabounds/random_instances.hpp"

#include <cmath>

#include "dabounds/rng.hpp"

namespace dabounds {

std::vector<std::int64_t> InstanceGenerator::support(std::size_t min_atoms) {
    const std::size_t k = min_atoms + rng_.index(max_atoms_ - min_atoms + 1);
    std::vector<std::int64_t> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = static_cast<std::int64_t>(i);
    return s;
}

DiscreteDistribution InstanceGenerator::distribution(
    const std::vector<std::int64_t>& support) {
    std::vector<DiscreteDistribution::Atom> atoms;
    atoms.reserve(support.size());
    double total = 0.0;
    for (std::int64_t id : support) {
        // exponential weights give dirichlet-style masses; ~1 in 5 atoms empty
        double w = rng_.uniform() < 0.2 ? 0.0 : -std::log(1.0 - rng_.uniform());
        atoms.push_back({id, w});
        total += w;
    }
    if (total == 0.0) {
        atoms[rng_.index(atoms.size())].mass = 1.0;
        total = 1.0;
    }
    for (auto& a : atoms) a.mass /= total;
    return DiscreteDistribution(std::move(atoms));
}

AtomMap InstanceGenerator::binary_map(const std::vector<std::int64_t>& support) {
    AtomMap m;
    for (std::int64_t id : support) m[id] = rng_.bernoulli(0.5) ? 1.0 : 0.0;
    return m;
}

AtomMap InstanceGenerator::soft_map(const std::vector<std::int64_t>& support) {
    AtomMap m;
    for (std::int64_t id : support) m[id] = rng_.uniform();
    return m;
}

Domain InstanceGenerator::domain(const std::vector<std::int64_t>& support,
                                 bool binary_labels) {
    return Domain(distribution(support),
                  binary_labels ? binary_map(support) : soft_map(support));
}

std::map<std::int64_t, std::int64_t> InstanceGenerator::atom_transform(
    const std::vector<std::int64_t>& from, std::size_t image_size) {
    std::map<std::int64_t, std::int64_t> g;
    for (std::int64_t id : from) {
        g[id] = static_cast<std::int64_t>(rng_.index(image_size));
    }
    return g;
}

Channel InstanceGenerator::channel(const std::vector<std::int64_t>& from,
                                   std::size_t image_size) {
    std::map<std::int64_t, DiscreteDistribution> rows;
    std::vector<std::int64_t> image(image_size);
    for (std::size_t i = 0; i < image_size; ++i) image[i] = static_cast<std::int64_t>(i);
    for (std::int64_t id : from) rows.emplace(id, distribution(image));
    return Channel(std::move(rows));
}

HypothesisClass InstanceGenerator::binary_class(const std::vector<std::int64_t>& support,
                                                std::size_t max_members) {
    const std::size_t count = 1 + rng_.index(max_members);
    std::vector<PiecewiseFunction> members;
    members.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        // random binary values on the support, breakpoints at midpoints
        std::vector<double> breaks;
        std::vector<double> values;
        values.push_back(rng_.bernoulli(0.5) ? 1.0 : 0.0);
        for (std::size_t k = 0; k + 1 < support.size(); ++k) {
            breaks.push_back(0.5 * static_cast<double>(support[k] + support[k + 1]));
            values.push_back(rng_.bernoulli(0.5) ? 1.0 : 0.0);
        }
        std::vector<double> cb;
        std::vector<double> cv{values.front()};
        for (std::size_t k = 0; k < breaks.size(); ++k) {
            if (values[k + 1] != cv.back()) {
                cb.push_back(breaks[k]);
                cv.push_back(values[k + 1]);
            }
        }
        members.emplace_back(std::move(cb), std::move(cv));
    }
    return HypothesisClass::explicit_list(std::move(members));
}

}  // namespace dabounds
