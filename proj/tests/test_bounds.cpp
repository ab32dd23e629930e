#include <doctest.h>

#include <cmath>

#include "dabounds/bounds.hpp"
#include "dabounds/errors.hpp"
#include "dabounds/random_instances.hpp"
#include "oracles.hpp"

using namespace dabounds;

namespace {

Domain example_source() {
    return Domain(PiecewiseUniform::uniform(-1.0, 0.0),
                  PiecewiseFunction::step_leq(-0.5, 0.0, 1.0));
}

Domain example_target() {
    return Domain(PiecewiseUniform::uniform(1.0, 2.0),
                  PiecewiseFunction::step_geq(1.5, 1.0, 0.0));
}

std::vector<double> int_points(std::size_t n) {
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i);
    return pts;
}

std::vector<std::vector<double>> value_table(const HypothesisClass& cls,
                                             const std::vector<double>& pts) {
    std::vector<std::vector<double>> t(cls.size());
    for (std::size_t i = 0; i < cls.size(); ++i) {
        const auto h = cls.member(i);
        for (double x : pts) t[i].push_back(h.value_at(x));
    }
    return t;
}

}  // namespace

TEST_CASE("rademacher of a singleton class is zero") {
    const auto cls = HypothesisClass::explicit_list({PiecewiseFunction::constant(1.0)});
    const auto est = rademacher(cls, int_points(6), RademacherMode::exact_enumeration);
    CHECK(est.value == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(est.std_error == 0.0);
}

TEST_CASE("rademacher of the all-binary class on 8 points is exactly 1/2") {
    const auto pts = int_points(8);
    const auto cls = HypothesisClass::all_binary_on_finite(pts);
    const auto est = rademacher(cls, pts, RademacherMode::exact_enumeration);
    CHECK(est.value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(est.trials == 256);
}

TEST_CASE("rademacher of the constants on 4 points, frozen enumeration value") {
    // enumeration oracle: E[max(0, mean sigma)] over the 16 sign vectors = 0.1875
    const auto pts = int_points(4);
    const auto est = rademacher(HypothesisClass::constants(), pts,
                                RademacherMode::exact_enumeration);
    CHECK(est.value == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(est.value ==
          doctest::Approx(oracles::rademacher_enumeration(
                              value_table(HypothesisClass::constants(), pts), 4))
              .epsilon(1e-12));
}

TEST_CASE("rademacher matches the enumeration oracle on random classes") {
    InstanceGenerator gen(101);
    for (int it = 0; it < 50; ++it) {
        const auto support = gen.support(2);
        if (support.size() > 10) continue;
        const auto cls = gen.binary_class(support, 6);
        std::vector<double> pts;
        for (auto id : support) pts.push_back(static_cast<double>(id));
        const auto est = rademacher(cls, pts, RademacherMode::exact_enumeration);
        const double oracle =
            oracles::rademacher_enumeration(value_table(cls, pts), pts.size());
        CHECK(est.value == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("monte carlo rademacher converges to the exact value") {
    InstanceGenerator gen(113);
    for (int it = 0; it < 20; ++it) {
        const auto support = gen.support(4);
        std::vector<double> pts;
        for (auto id : support) pts.push_back(static_cast<double>(id));
        if (pts.size() > 12) continue;
        const auto cls = gen.binary_class(support, 6);
        const auto exact = rademacher(cls, pts, RademacherMode::exact_enumeration);
        const auto mc = rademacher(cls, pts, RademacherMode::monte_carlo, 800,
                                   derive_seed(7, static_cast<std::uint64_t>(it)));
        // zero spread only happens when the supremum is sign-independent, in
        // which case the estimate is already exact
        CHECK(std::fabs(mc.value - exact.value) <= 4.0 * mc.std_error + 1e-12);
    }
}

TEST_CASE("monte carlo rademacher is deterministic per seed") {
    const auto pts = int_points(10);
    const auto cls = HypothesisClass::threshold_grid({0.5, 3.5, 7.5});
    const auto a = rademacher(cls, pts, RademacherMode::monte_carlo, 100, 5);
    const auto b = rademacher(cls, pts, RademacherMode::monte_carlo, 100, 5);
    CHECK(a.value == b.value);
    const auto c = rademacher(cls, pts, RademacherMode::monte_carlo, 100, 6);
    CHECK(a.value != c.value);
}

TEST_CASE("exact mode refuses more than 16 points") {
    CHECK_THROWS_AS(rademacher(HypothesisClass::constants(), int_points(17),
                               RademacherMode::exact_enumeration),
                    SampleTooLargeForExact);
}

TEST_CASE("contraction: |class - f| never has larger complexity") {
    InstanceGenerator gen(131);
    int ran = 0;
    while (ran < 100) {
        const auto support = gen.support(2);
        if (support.size() > 10) continue;
        ++ran;
        const auto cls = gen.binary_class(support, 6);
        std::vector<double> pts;
        for (auto id : support) pts.push_back(static_cast<double>(id));

        // materialize |h - f| for a random binary f
        const auto f_map = gen.binary_map(support);
        std::vector<double> f_breaks;
        std::vector<double> f_vals{f_map.begin()->second};
        {
            auto prev = f_map.begin();
            for (auto it = std::next(f_map.begin()); it != f_map.end(); ++it, ++prev) {
                f_breaks.push_back(0.5 * static_cast<double>(prev->first + it->first));
                f_vals.push_back(it->second);
            }
        }
        std::vector<double> cb;
        std::vector<double> cv{f_vals.front()};
        for (std::size_t k = 0; k < f_breaks.size(); ++k) {
            if (f_vals[k + 1] != cv.back()) {
                cb.push_back(f_breaks[k]);
                cv.push_back(f_vals[k + 1]);
            }
        }
        const PiecewiseFunction f(cb, cv);
        std::vector<PiecewiseFunction> folded;
        for (std::size_t i = 0; i < cls.size(); ++i) {
            folded.push_back(abs_diff(cls.member(i), f));
        }
        const auto folded_cls = HypothesisClass::explicit_list(std::move(folded));

        const double rad_cls =
            rademacher(cls, pts, RademacherMode::exact_enumeration).value;
        const double rad_folded =
            rademacher(folded_cls, pts, RademacherMode::exact_enumeration).value;
        CHECK(rad_folded <= rad_cls + 1e-12);
    }
}

TEST_CASE("vc bound: source equals target") {
    const auto src = example_source();
    const auto h = PiecewiseFunction::step_leq(-0.5, 0.0, 1.0);  // the labeling itself
    const auto cls = HypothesisClass::threshold_grid({-0.7, -0.5, -0.3});
    const auto s = draw_labeled(src, 200, 11);
    const auto t = sample(src.distribution, 200, 12);
    const auto report = bendavid_bound(h, cls, s, t, 0.0, 1, 0.05, src);
    CHECK(report.verdict == Verdict::holds);
    CHECK(report.left_side == 0.0);
    CHECK(report.terms[0].second == 0.0);  // empirical source error of the labeling
}

TEST_CASE("vc bound concentration term, frozen direct evaluation") {
    // 4 * sqrt((3 ln 1e6 + ln 20) / 1e6), evaluated straight from the formula
    const double n = 1e6;
    const double term = 4.0 * std::sqrt((3.0 * std::log(n) + std::log(1.0 / 0.05)) / n);
    CHECK(term == doctest::Approx(0.026666012509543847).epsilon(1e-12));
    CHECK(term < 0.03);
}

TEST_CASE("vc bound is vacuous on the transformed example, and honest about it") {
    // representation space: both domains are U(0,1) with flipped labelings
    const Domain zs(PiecewiseUniform::uniform(0.0, 1.0),
                    PiecewiseFunction::step_leq(0.5, 0.0, 1.0));
    const Domain zt(PiecewiseUniform::uniform(0.0, 1.0),
                    PiecewiseFunction::step_geq(0.5, 1.0, 0.0));
    std::vector<double> grid;
    for (int k = 0; k <= 10; ++k) grid.push_back(0.1 * k);
    const auto cls = HypothesisClass::interval_complement_grid(grid);

    // lambda* on the representation space is 1: every binary hypothesis is
    // right on one domain exactly where it is wrong on the other
    const auto best = best_joint_hypothesis(cls, zs, zt);
    CHECK(best.lambda_star == doctest::Approx(1.0).epsilon(1e-12));

    const auto s = draw_labeled(zs, 500, 31);
    const auto t = sample(zt.distribution, 500, 32);
    const auto report = bendavid_bound(best.hypothesis, cls, s, t, best.lambda_star, 2,
                                       0.05, zt);
    CHECK(report.verdict == Verdict::holds);
    CHECK(report.right_side >= 1.0);  // dominated by lambda*: vacuous but true
}

TEST_CASE("vc bound rejects bad arguments") {
    const auto src = example_source();
    const auto s = draw_labeled(src, 8, 41);
    const auto t = sample(src.distribution, 9, 42);
    const auto cls = HypothesisClass::constants();
    const auto h = PiecewiseFunction::constant(1.0);
    CHECK_THROWS_AS(bendavid_bound(h, cls, s, t, 0.0, 1, 0.05), UnequalSampleSizes);
    const auto t8 = sample(src.distribution, 8, 42);
    CHECK_THROWS_AS(bendavid_bound(h, cls, s, t8, 0.0, 1, 1.5), InvalidConfidence);
    CHECK_THROWS_AS(bendavid_bound(h, cls, s, t8, 0.0, 0, 0.05), Error);
}

TEST_CASE("population upper bound on the running example") {
    const auto src = example_source();
    const auto tgt = example_target();
    const auto h = PiecewiseFunction::interval(-0.5, 1.5);
    // intervals over the exact candidate grid: rich enough that some pairwise
    // disagreement set covers one support and misses the other entirely
    const auto cls = HypothesisClass::interval_grid(
        exact_parameter_grid({&src.distribution, &tgt.distribution}));
    const auto report = population_upper_bound(h, cls, src, tgt);
    CHECK(report.verdict == Verdict::holds);
    CHECK(report.left_side == 0.0);                         // eps_T(h*)
    CHECK(report.terms[0].second == 0.0);                   // eps_S(h*)
    CHECK(report.terms[1].second == doctest::Approx(1.0));  // disjoint supports
    CHECK(report.terms[2].second == doctest::Approx(0.5));  // min cross-domain
}

TEST_CASE("population upper bound is an equality path when domains coincide") {
    InstanceGenerator gen(151);
    for (int it = 0; it < 50; ++it) {
        const auto support = gen.support(2);
        const auto dom = gen.domain(support);
        const auto cls = gen.binary_class(support, 5);
        const auto h = cls.member(gen.rng().index(cls.size()));
        const auto report = population_upper_bound(h, cls, dom, dom);
        CHECK(report.verdict == Verdict::holds);
        // divergence and cross terms vanish; left equals the first term
        CHECK(report.left_side == doctest::Approx(report.terms[0].second).epsilon(1e-12));
        CHECK(report.terms[1].second <= 1e-12);
        CHECK(report.terms[2].second <= 1e-12);
    }
}

TEST_CASE("population upper bound never breaks on random discrete instances") {
    InstanceGenerator gen(163);
    for (int it = 0; it < 500; ++it) {
        const auto support = gen.support(1);
        const bool binary = gen.rng().bernoulli(0.7);
        const auto src = gen.domain(support, binary);
        const auto tgt = gen.domain(support, binary);
        const auto cls = gen.binary_class(support, 6);
        const auto h = cls.member(gen.rng().index(cls.size()));
        const auto report = population_upper_bound(h, cls, src, tgt);
        CHECK(report.verdict == Verdict::holds);
    }
}

TEST_CASE("empirical upper bound: pipeline run on the running example") {
    const auto src = example_source();
    const auto tgt = example_target();
    const auto h = PiecewiseFunction::interval(-0.5, 1.5);
    const auto cls = HypothesisClass::threshold_grid({-0.75, -0.5, -0.25, 0.5, 1.5});
    const auto s = draw_labeled(src, 1000, 51);
    const auto t = sample(tgt.distribution, 1000, 52);

    const auto report =
        empirical_upper_bound(h, cls, s, t, 0.05, 60, std::make_pair(src, tgt));
    CHECK(report.verdict == Verdict::holds);
    CHECK(report.terms[0].second == 0.0);  // perfect hypothesis: no source error

    // identical report on rerun with the same seed
    const auto again =
        empirical_upper_bound(h, cls, s, t, 0.05, 60, std::make_pair(src, tgt));
    CHECK(report.right_side == again.right_side);
    CHECK(report.left_side == again.left_side);
}

TEST_CASE("empirical upper bound: self adaptation and precondition handling") {
    const auto src = example_source();
    const auto h = PiecewiseFunction::step_leq(-0.5, 0.0, 1.0);
    const auto cls = HypothesisClass::threshold_grid({-0.5, -0.25});
    const auto s = draw_labeled(src, 400, 61);
    const auto t = sample(src.distribution, 400, 62);

    const auto report =
        empirical_upper_bound(h, cls, s, t, 0.1, 70, std::make_pair(src, src));
    CHECK(report.verdict == Verdict::holds);
    CHECK(report.left_side == 0.0);

    // withholding the populations leaves the cross term unavailable
    const auto without = empirical_upper_bound(h, cls, s, t, 0.1, 70);
    CHECK(without.verdict == Verdict::vacuous_precondition);

    const auto t_short = sample(src.distribution, 399, 63);
    CHECK_THROWS_AS(empirical_upper_bound(h, cls, s, t_short, 0.1, 70),
                    UnequalSampleSizes);
}

TEST_CASE("prediction distance lemma on constructed and random cases") {
    // perfect prediction: both sides zero
    const auto src = example_source();
    const auto perfect = prediction_distance_check(
        src, PiecewiseLinearMap::identity(), PiecewiseFunction::step_leq(-0.5, 0.0, 1.0));
    CHECK(perfect.verdict == Verdict::holds);
    CHECK(perfect.left_side == 0.0);
    CHECK(perfect.right_side == 0.0);

    // flipped prediction on balanced labels: left side 0 <= 1
    const auto flipped = prediction_distance_check(
        src, PiecewiseLinearMap::identity(), PiecewiseFunction::step_leq(-0.5, 1.0, 0.0));
    CHECK(flipped.verdict == Verdict::holds);
    CHECK(flipped.left_side == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(flipped.right_side == doctest::Approx(1.0).epsilon(1e-12));

    InstanceGenerator gen(171);
    for (int it = 0; it < 500; ++it) {
        const auto support = gen.support(1);
        const auto dom = gen.domain(support, true);
        const auto g = gen.atom_transform(support, 1 + gen.rng().index(6));
        std::vector<std::int64_t> image;
        for (int i = 0; i < 8; ++i) image.push_back(i);
        const auto h = gen.binary_map(image);
        const auto report = prediction_distance_check(dom, g, LabelFunction(h));
        CHECK(report.verdict == Verdict::holds);
    }
}

TEST_CASE("prediction distance rejects non-binary inputs") {
    const Domain soft(PiecewiseUniform::uniform(0.0, 1.0), PiecewiseFunction::constant(0.5));
    CHECK_THROWS_AS(prediction_distance_check(soft, PiecewiseLinearMap::identity(),
                                              PiecewiseFunction::constant(1.0)),
                    NonBinaryFunctions);
}

TEST_CASE("joint error lower bound values") {
    // frozen: djs of Bernoulli(.5) vs Bernoulli(.9) is 0.38313587985994213
    const double djs_y = 0.38313587985994213;
    CHECK(joint_error_lower_bound(djs_y, 0.0) ==
          doctest::Approx(0.07339655121802600).epsilon(1e-12));
    CHECK(joint_error_lower_bound(0.4, 0.4) == 0.0);
    CHECK(joint_error_lower_bound(0.0, 0.0) == 0.0);  // the counterexample case
    CHECK(joint_error_lower_bound(0.1, 0.4) == 0.0);  // precondition fails: vacuous
}

TEST_CASE("lower bound check: perfect shared predictor reduces to the dpi") {
    const Domain dom_s(PiecewiseUniform::uniform(0.0, 1.0), PiecewiseFunction::threshold(0.5));
    const Domain dom_t(PiecewiseUniform::uniform(0.25, 1.25),
                       PiecewiseFunction::threshold(0.5));
    const auto g = PiecewiseLinearMap::identity();
    const auto h = PiecewiseFunction::threshold(0.5);
    const auto check = lower_bound_check(dom_s, dom_t, g, g, h);
    CHECK(check.key_lemma.verdict == Verdict::holds);
    // zero error terms: the chain is exactly d_JS(Y) <= d_JS(Z)
    CHECK(check.key_lemma.terms[1].second == 0.0);
    CHECK(check.key_lemma.terms[2].second == 0.0);
    CHECK(check.djs_y <= check.djs_z + 1e-12);
}

TEST_CASE("lower bound check: invariant representation with shifted labels") {
    // X = {0,1} with identity labels; a constant transform erases everything
    const Domain src(DiscreteDistribution::bernoulli(0.5), AtomMap{{0, 0.0}, {1, 1.0}});
    const Domain tgt(DiscreteDistribution::bernoulli(0.9), AtomMap{{0, 0.0}, {1, 1.0}});
    const std::map<std::int64_t, std::int64_t> collapse{{0, 0}, {1, 0}};
    const auto check = lower_bound_check(src, tgt, collapse, collapse,
                                         LabelFunction(AtomMap{{0, 1.0}}));
    CHECK(check.djs_z == 0.0);
    CHECK(check.djs_y == doctest::Approx(0.38313587985994213).epsilon(1e-12));
    CHECK(check.squared_bound.left_side ==
          doctest::Approx(0.07339655121802600).epsilon(1e-12));
    CHECK(check.squared_bound.verdict == Verdict::holds);
    CHECK(check.joint_error >= 0.07339655121802600 - 1e-12);
    CHECK(check.key_lemma.verdict == Verdict::holds);
}

TEST_CASE("lower bound check holds on random discrete instances") {
    InstanceGenerator gen(191);
    for (int it = 0; it < 500; ++it) {
        const auto support = gen.support(1);
        const auto src = gen.domain(support, true);
        const auto tgt = gen.domain(support, true);
        const std::size_t z_size = 1 + gen.rng().index(6);
        const auto gs = gen.atom_transform(support, z_size);
        // half the cases share the transform (theorem), half do not (corollary)
        const auto gt = gen.rng().bernoulli(0.5) ? gs : gen.atom_transform(support, z_size);
        std::vector<std::int64_t> image;
        for (std::size_t i = 0; i < z_size; ++i) {
            image.push_back(static_cast<std::int64_t>(i));
        }
        const auto h = gen.binary_map(image);
        const auto check = lower_bound_check(src, tgt, gs, gt, LabelFunction(h));
        CHECK(check.key_lemma.verdict == Verdict::holds);
        CHECK(check.squared_bound.verdict != Verdict::violated);
    }
}

TEST_CASE("concentration trial on a singleton class stays within the budget") {
    const auto cls = HypothesisClass::explicit_list({PiecewiseFunction::threshold(0.4)});
    const Distribution dist = PiecewiseUniform::uniform(0.0, 1.0);
    const double freq = concentration_trial(cls, dist, 50, 0.2, 100, 77);
    CHECK(freq <= 0.2 + 3.0 * std::sqrt(0.2 * 0.8 / 100.0));
}

TEST_CASE("concentration trial with a large sample never trips") {
    std::vector<double> grid;
    for (int k = 0; k <= 20; ++k) grid.push_back(0.05 * k);
    const auto cls = HypothesisClass::threshold_grid(grid);
    const Distribution dist = PiecewiseUniform::uniform(0.0, 1.0);
    CHECK(concentration_trial(cls, dist, 2000, 0.1, 100, 78) == 0.0);
}

TEST_CASE("concentration trial validates the trial budget") {
    const auto cls = HypothesisClass::constants();
    const Distribution dist = PiecewiseUniform::uniform(0.0, 1.0);
    CHECK_THROWS_AS(concentration_trial(cls, dist, 10, 0.1, 99, 1), Error);
}

TEST_CASE("empirical error on a full-support sample equals the population error") {
    const DiscreteDistribution d({{0, 0.5}, {1, 0.25}, {2, 0.25}});
    const AtomMap f{{0, 1.0}, {1, 0.0}, {2, 1.0}};
    const Domain dom(d, f);
    const auto h = PiecewiseFunction::threshold(0.5);

    LabeledSample s;
    const std::vector<std::pair<std::int64_t, int>> plan{{0, 2}, {1, 1}, {2, 1}};
    for (const auto& [id, copies] : plan) {
        for (int c = 0; c < copies; ++c) {
            s.points.push_back(static_cast<double>(id));
            s.labels.push_back(f.at(id));
        }
    }
    CHECK(empirical_error(s, h) == doctest::Approx(error(dom, LabelFunction(h))).epsilon(1e-12));
}
