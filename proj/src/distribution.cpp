#include "dabounds/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "dabounds/errors.hpp"
#include "dabounds/rng.hpp"

namespace dabounds {

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) {
    std::map<std::int64_t, double> merged;
    for (const Atom& a : atoms) {
        if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) {
            throw InvalidDistribution("DiscreteDistribution: masses must be >= 0");
        }
        merged[a.id] += a.mass;
    }
    if (merged.empty()) {
        throw InvalidDistribution("DiscreteDistribution: needs at least one atom");
    }
    double total = 0.0;
    atoms_.reserve(merged.size());
    for (const auto& [id, mass] : merged) {
        atoms_.push_back({id, mass});
        total += mass;
    }
    if (std::fabs(total - 1.0) > kMassTolerance) {
        throw InvalidDistribution("DiscreteDistribution: masses must sum to 1");
    }
}

DiscreteDistribution DiscreteDistribution::point_mass(std::int64_t id) {
    return DiscreteDistribution({{id, 1.0}});
}

DiscreteDistribution DiscreteDistribution::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidDistribution("bernoulli: p must lie in [0,1]");
    }
    return DiscreteDistribution({{0, 1.0 - p}, {1, p}});
}

double DiscreteDistribution::mass_of(std::int64_t id) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), id,
                               [](const Atom& a, std::int64_t v) { return a.id < v; });
    return (it != atoms_.end() && it->id == id) ? it->mass : 0.0;
}

double DiscreteDistribution::total_mass() const {
    return std::accumulate(atoms_.begin(), atoms_.end(), 0.0,
                           [](double s, const Atom& a) { return s + a.mass; });
}

PiecewiseUniform::PiecewiseUniform(std::vector<double> breakpoints,
                                   std::vector<double> segment_masses)
    : breakpoints_(std::move(breakpoints)), segment_masses_(std::move(segment_masses)) {
    if (breakpoints_.size() < 2 || segment_masses_.size() + 1 != breakpoints_.size()) {
        throw InvalidDistribution("PiecewiseUniform: need k>=2 breakpoints, k-1 masses");
    }
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] < breakpoints_[i + 1])) {
            throw InvalidDistribution("PiecewiseUniform: breakpoints must be strictly ascending");
        }
    }
    double total = 0.0;
    for (double m : segment_masses_) {
        if (!(m >= 0.0) || !std::isfinite(m)) {
            throw InvalidDistribution("PiecewiseUniform: masses must be >= 0");
        }
        total += m;
    }
    if (std::fabs(total - 1.0) > kMassTolerance) {
        throw InvalidDistribution("PiecewiseUniform: masses must sum to 1");
    }
}

PiecewiseUniform PiecewiseUniform::uniform(double a, double b) {
    if (!(a < b)) throw InvalidDistribution("uniform: requires a < b");
    return PiecewiseUniform({a, b}, {1.0});
}

double PiecewiseUniform::density(std::size_t segment) const {
    return segment_masses_[segment] / (breakpoints_[segment + 1] - breakpoints_[segment]);
}

double PiecewiseUniform::total_mass() const {
    return std::accumulate(segment_masses_.begin(), segment_masses_.end(), 0.0);
}

double PiecewiseUniform::mass_between(double a, double b) const {
    if (!(a <= b)) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < segment_count(); ++i) {
        const double lo = std::max(a, breakpoints_[i]);
        const double hi = std::min(b, breakpoints_[i + 1]);
        if (hi > lo) {
            acc += segment_masses_[i] * (hi - lo) / (breakpoints_[i + 1] - breakpoints_[i]);
        }
    }
    return acc;
}

namespace {

// canonical form: drop zero-mass outer segments, merge equal-density neighbours
std::pair<std::vector<double>, std::vector<double>> canonical_segments(
    const PiecewiseUniform& d, double tol) {
    std::size_t lo = 0, hi = d.segment_count();
    while (lo < hi && d.segment_masses()[lo] <= tol) ++lo;
    while (hi > lo && d.segment_masses()[hi - 1] <= tol) --hi;
    std::vector<double> breaks;
    std::vector<double> masses;
    for (std::size_t i = lo; i < hi; ++i) {
        const double dens = d.density(i);
        if (!masses.empty()) {
            const double prev_dens = masses.back() / (breaks.back() - *(breaks.end() - 2));
            if (breaks.back() == d.breakpoints()[i] && std::fabs(prev_dens - dens) <= tol) {
                masses.back() += d.segment_masses()[i];
                breaks.back() = d.breakpoints()[i + 1];
                continue;
            }
        }
        if (breaks.empty() || breaks.back() != d.breakpoints()[i]) {
            breaks.push_back(d.breakpoints()[i]);
        }
        breaks.push_back(d.breakpoints()[i + 1]);
        masses.push_back(d.segment_masses()[i]);
    }
    return {breaks, masses};
}

}  // namespace

bool PiecewiseUniform::same_distribution(const PiecewiseUniform& other, double tol) const {
    auto [ba, ma] = canonical_segments(*this, tol);
    auto [bb, mb] = canonical_segments(other, tol);
    if (ba.size() != bb.size() || ma.size() != mb.size()) return false;
    for (std::size_t i = 0; i < ba.size(); ++i) {
        if (std::fabs(ba[i] - bb[i]) > tol) return false;
    }
    for (std::size_t i = 0; i < ma.size(); ++i) {
        if (std::fabs(ma[i] - mb[i]) > tol) return false;
    }
    return true;
}

double ContinuousPushforward::continuous_mass() const {
    return std::accumulate(segment_masses.begin(), segment_masses.end(), 0.0);
}

PiecewiseUniform ContinuousPushforward::as_piecewise_uniform() const {
    if (has_atoms()) {
        throw NonInvertibleSegment(
            "pushforward has point atoms from zero-slope pieces; not piecewise uniform");
    }
    return PiecewiseUniform(breakpoints, segment_masses);
}

std::vector<double> sample(const DiscreteDistribution& dist, std::size_t n,
                           std::uint64_t seed) {
    if (n < 1) throw Error("sample: n must be >= 1");
    // cumulative inverse transform
    std::vector<double> cum(dist.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist.atoms()[i].mass;
        cum[i] = acc;
    }
    Rng rng(seed);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = rng.uniform() * acc;
        auto it = std::lower_bound(cum.begin(), cum.end(), u);
        std::size_t i = static_cast<std::size_t>(it - cum.begin());
        if (i >= dist.size()) i = dist.size() - 1;
        out[k] = static_cast<double>(dist.atoms()[i].id);
    }
    return out;
}

std::vector<double> sample(const PiecewiseUniform& dist, std::size_t n,
                           std::uint64_t seed) {
    if (n < 1) throw Error("sample: n must be >= 1");
    std::vector<double> cum(dist.segment_count());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.segment_count(); ++i) {
        acc += dist.segment_masses()[i];
        cum[i] = acc;
    }
    Rng rng(seed);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = rng.uniform() * acc;
        auto it = std::lower_bound(cum.begin(), cum.end(), u);
        std::size_t i = static_cast<std::size_t>(it - cum.begin());
        if (i >= dist.segment_count()) i = dist.segment_count() - 1;
        out[k] = rng.uniform(dist.breakpoints()[i], dist.breakpoints()[i + 1]);
    }
    return out;
}

std::vector<double> sample(const Distribution& dist, std::size_t n, std::uint64_t seed) {
    return std::visit([&](const auto& d) { return sample(d, n, seed); }, dist);
}

WeightedSample empirical_distribution(const std::vector<double>& draws) {
    if (draws.empty()) throw Error("empirical_distribution: sample must be nonempty");
    std::map<double, std::size_t> counts;
    for (double d : draws) ++counts[d];
    WeightedSample ws;
    const double w = 1.0 / static_cast<double>(draws.size());
    for (const auto& [pt, c] : counts) {
        ws.points.push_back(pt);
        ws.weights.push_back(w * static_cast<double>(c));
    }
    return ws;
}

}  // namespace dabounds
