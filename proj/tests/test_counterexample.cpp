#include <doctest.h>

#include <cmath>

#include "dabounds/counterexample.hpp"
#include "dabounds/divergences.hpp"

using namespace dabounds;
namespace ce = dabounds::counterexample;

TEST_CASE("scenario construction matches the displayed definitions") {
    const auto s = ce::build();
    const auto& src = std::get<PiecewiseUniform>(s.source.distribution);
    CHECK(src.same_distribution(PiecewiseUniform::uniform(-1.0, 0.0), 0.0));
    const auto& tgt = std::get<PiecewiseUniform>(s.target.distribution);
    CHECK(tgt.same_distribution(PiecewiseUniform::uniform(1.0, 2.0), 0.0));

    // the transform shifts each branch onto [0, 1]
    CHECK(s.transform.apply(-1.0) == 0.0);
    CHECK(s.transform.apply(0.0) == 1.0);
    CHECK(s.transform.apply(1.0) == 0.0);
    CHECK(s.transform.apply(2.0) == 1.0);

    // reference hypothesis is perfect on both domains
    CHECK(error(s.source, LabelFunction(s.reference_hypothesis)) == 0.0);
    CHECK(error(s.target, LabelFunction(s.reference_hypothesis)) == 0.0);
}

TEST_CASE("both pushforwards are exactly U(0,1)") {
    const auto s = ce::build();
    const auto u01 = PiecewiseUniform::uniform(0.0, 1.0);
    CHECK(ce::pushforward_source(s).same_distribution(u01, 1e-15));
    CHECK(ce::pushforward_target(s).same_distribution(u01, 1e-15));
}

TEST_CASE("built-in grid classes have 1001 members each") {
    const auto classes = ce::built_in_classes();
    REQUIRE(classes.size() == 4);
    CHECK(classes[0].name == "thresholds");
    CHECK(classes[0].cls.size() == 1001);
    CHECK(classes[1].name == "intervals");
    CHECK(classes[1].cls.size() == 1001);
    CHECK(classes[2].name == "interval_complements");
    CHECK(classes[2].cls.size() == 1001);
    CHECK(classes[3].cls.size() == 2);
}

TEST_CASE("invariance verification: every divergence between pushforwards vanishes") {
    const auto report = ce::verify_invariance(ce::build());
    CHECK(report.verdict == Verdict::holds);
    CHECK(report.left_side == 0.0);
    for (const auto& [name, value] : report.terms) {
        INFO(name);
        CHECK(value == 0.0);
    }
}

TEST_CASE("joint error identity holds for every member of every built-in class") {
    const auto s = ce::build();
    for (const auto& [name, cls] : ce::built_in_classes()) {
        INFO(name);
        const auto sweep = ce::verify_joint_error(s, cls);
        CHECK(sweep.report.verdict == Verdict::holds);
        CHECK(sweep.min_joint_error == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(sweep.max_joint_error == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(sweep.member_count == cls.size());
    }
}

TEST_CASE("pre-transform best joint risk is zero for classes containing h*") {
    const auto s = ce::build();
    const auto cls = HypothesisClass::interval_grid({-1.0, -0.5, 0.0, 1.5, 2.0});
    const auto best = best_joint_hypothesis(cls, s.source, s.target);
    CHECK(best.lambda_star == 0.0);
}

TEST_CASE("post-transform best joint risk is one for every built-in class") {
    const auto s = ce::build();
    // induced domains: both U(0,1), labelings stitched through the transform
    const Domain zs(ce::pushforward_source(s), induced_labeling(s.source, s.transform));
    const Domain zt(ce::pushforward_target(s), induced_labeling(s.target, s.transform));
    for (const auto& [name, cls] : ce::built_in_classes()) {
        INFO(name);
        const auto best = best_joint_hypothesis(cls, zs, zt);
        CHECK(best.lambda_star == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("bound comparison reproduces the tighter-term numbers") {
    const auto cmp = ce::compare_bounds(ce::build());
    CHECK(cmp.lambda_star == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cmp.min_cross_domain == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(cmp.induced_label_l1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cmp.cross_term_tighter);
}

TEST_CASE("lower bound is trivial on the scenario despite joint error one") {
    const auto s = ce::build();
    const auto check = lower_bound_check(s.source, s.target, s.transform, s.transform,
                                         PiecewiseFunction::threshold(0.5));
    CHECK(check.djs_y == 0.0);  // both label marginals are Bernoulli(1/2)
    CHECK(check.djs_z == 0.0);  // aligned representations
    CHECK(check.squared_bound.left_side == 0.0);
    CHECK(check.squared_bound.verdict == Verdict::holds);  // 0 <= 1: loose, not violated
    CHECK(check.joint_error == doctest::Approx(1.0).epsilon(1e-12));
}
