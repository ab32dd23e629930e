#pragma once

// Test-only oracles, kept independent of the library's computation paths:
// dense quadrature instead of exact segment integration, direct double loops
// instead of the class machinery, long-double formula evaluation for the
// information quantities.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "dabounds/distribution.hpp"
#include "dabounds/domain.hpp"

namespace oracles {

// midpoint-rule quadrature of fn against a piecewise-uniform density
inline double riemann_expectation(const dabounds::PiecewiseUniform& d,
                                  const std::function<double(double)>& fn,
                                  std::size_t steps_per_segment = 40000) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d.segment_count(); ++i) {
        const double a = d.breakpoints()[i];
        const double b = d.breakpoints()[i + 1];
        const double mass = d.segment_masses()[i];
        if (mass == 0.0) continue;
        const double h = (b - a) / static_cast<double>(steps_per_segment);
        double seg = 0.0;
        for (std::size_t k = 0; k < steps_per_segment; ++k) {
            seg += fn(a + (static_cast<double>(k) + 0.5) * h);
        }
        acc += mass * seg / static_cast<double>(steps_per_segment);
    }
    return acc;
}

// union-support KL/JS in long double, straight from the definitions
inline long double kl_bits(const std::vector<long double>& p,
                           const std::vector<long double>& q) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0L) acc += p[i] * std::log2(p[i] / q[i]);
    }
    return acc;
}

inline long double js_bits(const std::vector<long double>& p,
                           const std::vector<long double>& q) {
    std::vector<long double> m(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m[i] = 0.5L * (p[i] + q[i]);
    return 0.5L * kl_bits(p, m) + 0.5L * kl_bits(q, m);
}

inline std::vector<long double> masses_on_union(
    const dabounds::DiscreteDistribution& d,
    const std::vector<std::int64_t>& union_ids) {
    std::vector<long double> out;
    out.reserve(union_ids.size());
    for (std::int64_t id : union_ids) out.push_back(d.mass_of(id));
    return out;
}

inline std::vector<std::int64_t> union_ids(const dabounds::DiscreteDistribution& a,
                                           const dabounds::DiscreteDistribution& b) {
    std::map<std::int64_t, bool> ids;
    for (const auto& at : a.atoms()) ids[at.id] = true;
    for (const auto& at : b.atoms()) ids[at.id] = true;
    std::vector<std::int64_t> out;
    for (const auto& [id, _] : ids) out.push_back(id);
    return out;
}

inline double js_divergence_oracle(const dabounds::DiscreteDistribution& a,
                                   const dabounds::DiscreteDistribution& b) {
    const auto ids = union_ids(a, b);
    return static_cast<double>(js_bits(masses_on_union(a, ids), masses_on_union(b, ids)));
}

inline double l1_oracle(const dabounds::DiscreteDistribution& a,
                        const dabounds::DiscreteDistribution& b) {
    double acc = 0.0;
    for (std::int64_t id : union_ids(a, b)) {
        acc += std::fabs(a.mass_of(id) - b.mass_of(id));
    }
    return acc;
}

// exact Rademacher complexity by direct enumeration over sign vectors,
// written against a plain value table
inline double rademacher_enumeration(const std::vector<std::vector<double>>& values,
                                     std::size_t n) {
    const std::size_t count = std::size_t{1} << n;
    long double total = 0.0L;
    for (std::size_t mask = 0; mask < count; ++mask) {
        long double best = -1e300L;
        for (const auto& row : values) {
            long double s = 0.0L;
            for (std::size_t k = 0; k < n; ++k) {
                s += ((mask >> k) & 1u ? 1.0L : -1.0L) * row[k];
            }
            if (s > best) best = s;
        }
        total += best / static_cast<long double>(n);
    }
    return static_cast<double>(total / static_cast<long double>(count));
}

// brute-force H-divergence between two discrete distributions over an
// explicit table of member values per atom
inline double h_divergence_brute(const std::vector<std::vector<double>>& member_values,
                                 const std::vector<double>& p_masses,
                                 const std::vector<double>& q_masses) {
    double best = 0.0;
    for (const auto& row : member_values) {
        double dp = 0.0, dq = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) {
            dp += p_masses[i] * row[i];
            dq += q_masses[i] * row[i];
        }
        best = std::max(best, std::fabs(dp - dq));
    }
    return best;
}

}  // namespace oracles
