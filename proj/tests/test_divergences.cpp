#include <doctest.h>

#include <cmath>

#include "dabounds/divergences.hpp"
#include "dabounds/errors.hpp"
#include "dabounds/random_instances.hpp"
#include "oracles.hpp"

using namespace dabounds;

namespace {
const DiscreteDistribution kPointA = DiscreteDistribution::point_mass(0);
const DiscreteDistribution kPointB = DiscreteDistribution::point_mass(1);
}  // namespace

TEST_CASE("l1 distance basics") {
    const auto b5 = DiscreteDistribution::bernoulli(0.5);
    CHECK(l1_distance(b5, b5) == 0.0);
    CHECK(l1_distance(kPointA, kPointB) == 2.0);
    CHECK(l1_distance(b5, DiscreteDistribution::bernoulli(0.9)) ==
          doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("kl divergence matches the long-double oracle") {
    const auto b5 = DiscreteDistribution::bernoulli(0.5);
    const auto b7 = DiscreteDistribution::bernoulli(0.7);
    CHECK(kl_divergence(b5, b5) == 0.0);
    // frozen from the oracle: 0.5*log2(.5/.7) + 0.5*log2(.5/.3)
    CHECK(kl_divergence(b5, b7) == doctest::Approx(0.1257693834979822).epsilon(1e-12));
    CHECK_THROWS_AS(kl_divergence(kPointA, kPointB), AbsoluteContinuityViolation);
    // but q may have extra support
    CHECK(kl_divergence(kPointA, DiscreteDistribution({{0, 0.5}, {1, 0.5}})) ==
          doctest::Approx(1.0));
}

TEST_CASE("js divergence and distance on the named pairs") {
    const auto b5 = DiscreteDistribution::bernoulli(0.5);
    const auto b9 = DiscreteDistribution::bernoulli(0.9);
    CHECK(js_divergence(b5, b5) == 0.0);
    CHECK(js_distance(b5, b5) == 0.0);
    CHECK(js_divergence(kPointA, kPointB) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(js_distance(kPointA, kPointB) == doctest::Approx(1.0).epsilon(1e-14));
    // frozen from the high-precision oracle
    CHECK(js_divergence(b5, b9) == doctest::Approx(0.14679310243605200).epsilon(1e-12));
    CHECK(js_distance(b5, b9) == doctest::Approx(0.38313587985994213).epsilon(1e-12));
}

TEST_CASE("js agrees with the independent oracle on random pairs") {
    InstanceGenerator gen(2024);
    for (int it = 0; it < 300; ++it) {
        const auto support = gen.support(2);
        const auto p = gen.distribution(support);
        const auto q = gen.distribution(support);
        CHECK(js_divergence(p, q) ==
              doctest::Approx(oracles::js_divergence_oracle(p, q)).epsilon(1e-12));
        CHECK(l1_distance(p, q) ==
              doctest::Approx(oracles::l1_oracle(p, q)).epsilon(1e-12));
    }
}

TEST_CASE("js properties: symmetry, boundedness, triangle inequality") {
    InstanceGenerator gen(4040);
    for (int it = 0; it < 500; ++it) {
        const auto support = gen.support(2);
        const auto p = gen.distribution(support);
        const auto q = gen.distribution(support);
        const auto r = gen.distribution(support);
        const double dpq = js_distance(p, q);
        const double dqp = js_distance(q, p);
        CHECK(dpq == dqp);  // exact symmetry of the formula
        const double div = js_divergence(p, q);
        CHECK(div >= 0.0);
        CHECK(div <= 1.0);
        CHECK(dpq <= js_distance(p, r) + js_distance(r, q) + 1e-9);
    }
}

TEST_CASE("continuous divergences discretize exactly") {
    const auto u01 = PiecewiseUniform::uniform(0.0, 1.0);
    const auto u12 = PiecewiseUniform::uniform(1.0, 2.0);
    CHECK(js_divergence(u01, u01) == 0.0);
    CHECK(js_divergence(u01, u12) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(l1_distance(u01, u12) == doctest::Approx(2.0).epsilon(1e-14));

    // half-overlapping uniforms: masses (1/2, 1/2, 0) vs (0, 1/2, 1/2)
    const auto a = PiecewiseUniform::uniform(0.0, 1.0);
    const auto b = PiecewiseUniform::uniform(0.5, 1.5);
    CHECK(l1_distance(a, b) == doctest::Approx(1.0).epsilon(1e-14));
    const auto [da, db] = discretize_pair(a, b);
    CHECK(js_divergence(a, b) ==
          doctest::Approx(oracles::js_divergence_oracle(da, db)).epsilon(1e-14));
}

TEST_CASE("lin inequality holds, with zero slack on disjoint point masses") {
    const auto same = check_lin(kPointA, kPointA);
    CHECK(same.verdict == Verdict::holds);
    CHECK(same.left_side == 0.0);
    CHECK(same.right_side == 0.0);

    const auto far = check_lin(kPointA, kPointB);
    CHECK(far.verdict == Verdict::holds);
    CHECK(far.left_side == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(far.right_side == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::fabs(far.slack()) < 1e-12);

    InstanceGenerator gen(77);
    for (int it = 0; it < 1000; ++it) {
        const auto support = gen.support(2);
        const auto report = check_lin(gen.distribution(support), gen.distribution(support));
        CHECK(report.verdict == Verdict::holds);
        CHECK(report.slack() >= -1e-9);
    }
}

TEST_CASE("data processing inequality for the JS distance") {
    const DiscreteDistribution p({{0, 0.6}, {1, 0.4}});
    const DiscreteDistribution q({{0, 0.1}, {1, 0.9}});

    std::map<std::int64_t, DiscreteDistribution> ident;
    for (std::int64_t id : {0, 1}) ident.emplace(id, DiscreteDistribution::point_mass(id));
    const auto same = check_dpi(p, q, Channel(std::move(ident)));
    CHECK(same.verdict == Verdict::holds);
    CHECK(std::fabs(same.slack()) < 1e-12);  // identity channel: equality

    std::map<std::int64_t, DiscreteDistribution> constant;
    for (std::int64_t id : {0, 1}) constant.emplace(id, DiscreteDistribution::point_mass(0));
    const auto collapsed = check_dpi(p, q, Channel(std::move(constant)));
    CHECK(collapsed.verdict == Verdict::holds);
    CHECK(collapsed.left_side == 0.0);

    InstanceGenerator gen(171);
    for (int it = 0; it < 1000; ++it) {
        const auto support = gen.support(2);
        const auto a = gen.distribution(support);
        const auto b = gen.distribution(support);
        const auto ch = gen.channel(support, 1 + gen.rng().index(8));
        const auto report = check_dpi(a, b, ch);
        CHECK(report.verdict == Verdict::holds);
    }
}

TEST_CASE("dpi requires channel rows on the union support") {
    const DiscreteDistribution p({{0, 1.0}});
    const DiscreteDistribution q({{3, 1.0}});
    std::map<std::int64_t, DiscreteDistribution> rows;
    rows.emplace(0, DiscreteDistribution::point_mass(0));
    CHECK_THROWS_AS(check_dpi(p, q, Channel(std::move(rows))), UndefinedOnSupport);
}
