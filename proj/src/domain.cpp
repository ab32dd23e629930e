#include "dabounds/domain.hpp"

#include <algorithm>
#include <cmath>

#include "dabounds/errors.hpp"

namespace dabounds {

namespace {

std::int64_t atom_coordinate(double x) {
    const double r = std::nearbyint(x);
    if (r != x) {
        throw UndefinedOnSupport("atom map evaluated at a non-atom coordinate");
    }
    return static_cast<std::int64_t>(r);
}

double eval_atom_map(const AtomMap& m, double x) {
    auto it = m.find(atom_coordinate(x));
    if (it == m.end()) {
        throw UndefinedOnSupport("atom map is missing an atom of the support");
    }
    return it->second;
}

// refinement of one distribution segment [a, b] by interior breakpoints of fn
template <typename Cell>
void for_each_subcell(double a, double b, const std::vector<double>& cuts, Cell&& cell) {
    double lo = a;
    auto it = std::upper_bound(cuts.begin(), cuts.end(), a);
    for (; it != cuts.end() && *it < b; ++it) {
        cell(lo, *it);
        lo = *it;
    }
    cell(lo, b);
}

}  // namespace

double eval_label(const LabelFunction& f, double x) {
    if (const auto* pwf = std::get_if<PiecewiseFunction>(&f)) {
        return pwf->value_at(x);
    }
    return eval_atom_map(std::get<AtomMap>(f), x);
}

Domain::Domain(Distribution dist, LabelFunction label)
    : distribution(std::move(dist)), labeling(std::move(label)) {
    if (const auto* am = std::get_if<AtomMap>(&labeling)) {
        for (const auto& [id, v] : *am) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw Error("Domain: labeling values must lie in [0,1]");
            }
            (void)id;
        }
        if (const auto* dd = std::get_if<DiscreteDistribution>(&distribution)) {
            for (const auto& atom : dd->atoms()) {
                if (am->find(atom.id) == am->end()) {
                    throw UndefinedOnSupport("Domain: labeling misses an atom of the support");
                }
            }
        } else {
            throw UndefinedOnSupport(
                "Domain: atom-map labeling cannot cover a continuous support");
        }
    }
}

Channel::Channel(std::map<std::int64_t, DiscreteDistribution> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw Error("Channel: needs at least one row");
}

Channel Channel::deterministic(const std::map<std::int64_t, std::int64_t>& atom_map) {
    std::map<std::int64_t, DiscreteDistribution> rows;
    for (const auto& [from, to] : atom_map) {
        rows.emplace(from, DiscreteDistribution::point_mass(to));
    }
    return Channel(std::move(rows));
}

Channel Channel::from_label_function(const DiscreteDistribution& support,
                                     const LabelFunction& f) {
    std::map<std::int64_t, DiscreteDistribution> rows;
    for (const auto& atom : support.atoms()) {
        rows.emplace(atom.id,
                     DiscreteDistribution::bernoulli(eval_label(f, static_cast<double>(atom.id))));
    }
    return Channel(std::move(rows));
}

const DiscreteDistribution& Channel::row(std::int64_t id) const {
    auto it = rows_.find(id);
    if (it == rows_.end()) {
        throw UndefinedOnSupport("Channel: row missing for an atom of the support");
    }
    return it->second;
}

// ---- expectations ----------------------------------------------------------

double expectation(const DiscreteDistribution& dist, const LabelFunction& fn) {
    double acc = 0.0;
    for (const auto& atom : dist.atoms()) {
        acc += atom.mass * eval_label(fn, static_cast<double>(atom.id));
    }
    return acc;
}

double expectation(const PiecewiseUniform& dist, const PiecewiseFunction& fn) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.segment_count(); ++i) {
        const double mass = dist.segment_masses()[i];
        if (mass == 0.0) continue;
        const double a = dist.breakpoints()[i];
        const double b = dist.breakpoints()[i + 1];
        const double inv_width = 1.0 / (b - a);
        for_each_subcell(a, b, fn.breakpoints(), [&](double lo, double hi) {
            acc += mass * (hi - lo) * inv_width * fn.value_at(0.5 * (lo + hi));
        });
    }
    return acc;
}

double expectation(const Distribution& dist, const LabelFunction& fn) {
    if (const auto* dd = std::get_if<DiscreteDistribution>(&dist)) {
        return expectation(*dd, fn);
    }
    const auto* pwf = std::get_if<PiecewiseFunction>(&fn);
    if (pwf == nullptr) {
        throw UndefinedOnSupport("expectation: atom map undefined on a continuous support");
    }
    return expectation(std::get<PiecewiseUniform>(dist), *pwf);
}

double expectation(const ContinuousPushforward& dist, const PiecewiseFunction& fn) {
    double acc = 0.0;
    if (!dist.breakpoints.empty()) {
        for (std::size_t i = 0; i < dist.segment_masses.size(); ++i) {
            const double mass = dist.segment_masses[i];
            if (mass == 0.0) continue;
            const double a = dist.breakpoints[i];
            const double b = dist.breakpoints[i + 1];
            const double inv_width = 1.0 / (b - a);
            for_each_subcell(a, b, fn.breakpoints(), [&](double lo, double hi) {
                acc += mass * (hi - lo) * inv_width * fn.value_at(0.5 * (lo + hi));
            });
        }
    }
    for (const RealAtom& atom : dist.atoms) {
        acc += atom.mass * fn.value_at(atom.location);
    }
    return acc;
}

double expectation(const Domain& domain, const LabelFunction& fn) {
    return expectation(domain.distribution, fn);
}

double disagreement(const Distribution& dist, const LabelFunction& a, const LabelFunction& b) {
    if (const auto* dd = std::get_if<DiscreteDistribution>(&dist)) {
        double acc = 0.0;
        for (const auto& atom : dd->atoms()) {
            const double x = static_cast<double>(atom.id);
            acc += atom.mass * std::fabs(eval_label(a, x) - eval_label(b, x));
        }
        return acc;
    }
    const auto* fa = std::get_if<PiecewiseFunction>(&a);
    const auto* fb = std::get_if<PiecewiseFunction>(&b);
    if (fa == nullptr || fb == nullptr) {
        throw UndefinedOnSupport("disagreement: atom map undefined on a continuous support");
    }
    return expectation(std::get<PiecewiseUniform>(dist), abs_diff(*fa, *fb));
}

double error(const Domain& domain, const LabelFunction& h) {
    return disagreement(domain.distribution, h, domain.labeling);
}

// ---- pushforwards ----------------------------------------------------------

DiscreteDistribution pushforward(const DiscreteDistribution& dist, const Channel& channel) {
    std::map<std::int64_t, double> out;
    for (const auto& atom : dist.atoms()) {
        const DiscreteDistribution& row = channel.row(atom.id);
        for (const auto& o : row.atoms()) {
            out[o.id] += atom.mass * o.mass;
        }
    }
    std::vector<DiscreteDistribution::Atom> atoms;
    atoms.reserve(out.size());
    for (const auto& [id, mass] : out) atoms.push_back({id, mass});
    return DiscreteDistribution(std::move(atoms));
}

DiscreteDistribution pushforward(const DiscreteDistribution& dist,
                                 const std::map<std::int64_t, std::int64_t>& atom_map) {
    std::map<std::int64_t, double> out;
    for (const auto& atom : dist.atoms()) {
        auto it = atom_map.find(atom.id);
        if (it == atom_map.end()) {
            throw UndefinedOnSupport("pushforward: atom map misses an atom of the support");
        }
        out[it->second] += atom.mass;
    }
    std::vector<DiscreteDistribution::Atom> atoms;
    atoms.reserve(out.size());
    for (const auto& [id, mass] : out) atoms.push_back({id, mass});
    return DiscreteDistribution(std::move(atoms));
}

namespace {

struct WeightedInterval {
    double lo, hi, mass;
};

// flatten overlapping uniform intervals onto their merged endpoint grid
void assemble_segments(const std::vector<WeightedInterval>& intervals,
                       std::vector<double>& breakpoints, std::vector<double>& masses) {
    breakpoints.clear();
    masses.clear();
    if (intervals.empty()) return;
    std::vector<double> grid;
    grid.reserve(intervals.size() * 2);
    for (const auto& iv : intervals) {
        grid.push_back(iv.lo);
        grid.push_back(iv.hi);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    masses.assign(grid.size() - 1, 0.0);
    for (const auto& iv : intervals) {
        const double inv_width = 1.0 / (iv.hi - iv.lo);
        auto first = std::lower_bound(grid.begin(), grid.end(), iv.lo);
        for (auto it = first; it + 1 != grid.end() && *(it + 1) <= iv.hi; ++it) {
            const std::size_t cell = static_cast<std::size_t>(it - grid.begin());
            masses[cell] += iv.mass * (*(it + 1) - *it) * inv_width;
        }
    }
    breakpoints = std::move(grid);
}

}  // namespace

ContinuousPushforward pushforward(const PiecewiseUniform& dist, const PiecewiseLinearMap& map) {
    std::vector<WeightedInterval> intervals;
    std::map<double, double> atom_masses;
    for (std::size_t i = 0; i < dist.segment_count(); ++i) {
        const double seg_mass = dist.segment_masses()[i];
        if (seg_mass == 0.0) continue;
        const double a = dist.breakpoints()[i];
        const double b = dist.breakpoints()[i + 1];
        const double inv_width = 1.0 / (b - a);
        for_each_subcell(a, b, map.breakpoints(), [&](double lo, double hi) {
            const double mass = seg_mass * (hi - lo) * inv_width;
            if (mass == 0.0) return;
            const std::size_t piece = map.piece_index(0.5 * (lo + hi));
            const double s = map.slopes()[piece];
            const double c = map.intercepts()[piece];
            if (s == 0.0) {
                atom_masses[c] += mass;
            } else {
                const double y1 = s * lo + c;
                const double y2 = s * hi + c;
                intervals.push_back({std::min(y1, y2), std::max(y1, y2), mass});
            }
        });
    }
    ContinuousPushforward out;
    assemble_segments(intervals, out.breakpoints, out.segment_masses);
    for (const auto& [loc, mass] : atom_masses) out.atoms.push_back({loc, mass});
    return out;
}

PiecewiseFunction induced_labeling(const Domain& domain, const PiecewiseLinearMap& map) {
    const auto* dist = std::get_if<PiecewiseUniform>(&domain.distribution);
    const auto* f = std::get_if<PiecewiseFunction>(&domain.labeling);
    if (dist == nullptr || f == nullptr) {
        throw UndefinedOnSupport("induced_labeling: needs a continuous domain");
    }

    struct LabeledInterval {
        double lo, hi, value;
        double slope, intercept;  // governing piece, for exact point inversion
    };
    std::vector<LabeledInterval> pieces;

    std::vector<double> cuts = map.breakpoints();
    cuts.insert(cuts.end(), f->breakpoints().begin(), f->breakpoints().end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    for (std::size_t i = 0; i < dist->segment_count(); ++i) {
        if (dist->segment_masses()[i] == 0.0) continue;
        for_each_subcell(dist->breakpoints()[i], dist->breakpoints()[i + 1], cuts,
                         [&](double lo, double hi) {
            const double mid = 0.5 * (lo + hi);
            const std::size_t piece = map.piece_index(mid);
            const double s = map.slopes()[piece];
            const double c = map.intercepts()[piece];
            if (s == 0.0) {
                throw NonInvertibleSegment(
                    "induced_labeling: map is constant on a positive-mass segment");
            }
            const double y1 = s * lo + c;
            const double y2 = s * hi + c;
            pieces.push_back({std::min(y1, y2), std::max(y1, y2), f->value_at(mid), s, c});
        });
    }
    if (pieces.empty()) {
        throw UndefinedOnSupport("induced_labeling: domain has empty support");
    }

    std::vector<double> grid;
    for (const auto& p : pieces) {
        grid.push_back(p.lo);
        grid.push_back(p.hi);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // one value per cell of the image grid; conflicting overlaps are ambiguous
    const double unset = -1.0;
    std::vector<double> cell_values(grid.size() - 1, unset);
    for (const auto& p : pieces) {
        auto first = std::lower_bound(grid.begin(), grid.end(), p.lo);
        for (auto it = first; it + 1 != grid.end() && *(it + 1) <= p.hi; ++it) {
            const std::size_t cell = static_cast<std::size_t>(it - grid.begin());
            if (cell_values[cell] == unset) {
                cell_values[cell] = p.value;
            } else if (cell_values[cell] != p.value) {
                throw NonInvertibleSegment(
                    "induced_labeling: preimages with conflicting labels collide");
            }
        }
    }
    // uncovered gaps inherit the nearest covered value to the left (or the
    // first covered one); the pushforward carries no mass there
    double carry = unset;
    for (double v : cell_values) {
        if (v != unset) {
            carry = v;
            break;
        }
    }
    for (std::size_t i = 0; i < cell_values.size(); ++i) {
        if (cell_values[i] == unset) {
            cell_values[i] = carry;
        } else {
            carry = cell_values[i];
        }
    }

    // exact value at each grid point via inversion through a covering piece
    auto value_at_point = [&](double z) -> double {
        for (const auto& p : pieces) {
            if (z >= p.lo && z <= p.hi) {
                return f->value_at((z - p.intercept) / p.slope);
            }
        }
        return unset;
    };

    // tails continue the outermost covered values
    std::vector<double> values;
    values.reserve(cell_values.size() + 2);
    values.push_back(cell_values.front());
    values.insert(values.end(), cell_values.begin(), cell_values.end());
    values.push_back(cell_values.back());

    std::vector<BreakpointSide> sides(grid.size(), BreakpointSide::right);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double at = value_at_point(grid[i]);
        if (at != unset && at == values[i]) sides[i] = BreakpointSide::left;
    }

    // drop breakpoints that separate equal values (keeps the stitched labeling
    // in its simplest displayed form)
    std::vector<double> keep_breaks;
    std::vector<double> keep_values{values.front()};
    std::vector<BreakpointSide> keep_sides;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (values[i + 1] != keep_values.back()) {
            keep_breaks.push_back(grid[i]);
            keep_sides.push_back(sides[i]);
            keep_values.push_back(values[i + 1]);
        }
    }
    return PiecewiseFunction(std::move(keep_breaks), std::move(keep_values),
                             std::move(keep_sides));
}

DiscreteDistribution label_marginal(const Domain& domain) {
    double p = expectation(domain.distribution, domain.labeling);
    // guard against |rounding| epsilon outside [0,1]
    p = std::min(1.0, std::max(0.0, p));
    return DiscreteDistribution::bernoulli(p);
}

}  // namespace dabounds
