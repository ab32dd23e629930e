#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dabounds/adversarial.hpp"
#include "dabounds/errors.hpp"
#include "dabounds/rng.hpp"

using namespace dabounds;
using namespace dabounds::adversarial;

namespace {

SyntheticDomainSpec small_spec(std::uint64_t seed, double target_prob = 0.9) {
    SyntheticDomainSpec spec;
    spec.n_train = 400;
    spec.n_test = 400;
    spec.seed = seed;
    spec.target_label_prob = target_prob;
    return spec;
}

Hyperparams short_run(std::size_t epochs) {
    Hyperparams h;
    h.epochs = epochs;
    return h;
}

Batch small_batch(std::uint64_t seed) {
    const auto data = make_domains(small_spec(seed));
    Batch b;
    for (std::size_t i = 0; i < 16; ++i) {
        b.source_x.push_back(data.source_train.x[i]);
        b.source_y.push_back(data.source_train.y[i]);
        b.target_x.push_back(data.target_train.x[i]);
    }
    return b;
}

}  // namespace

TEST_CASE("make_domains is deterministic and matches the label marginals") {
    const auto spec = small_spec(3);
    const auto a = make_domains(spec);
    const auto b = make_domains(spec);
    CHECK(a.source_train.x == b.source_train.x);
    CHECK(a.target_test.y == b.target_test.y);

    // empirical label fractions near the configured probabilities
    double ps = 0.0, pt = 0.0;
    for (double y : a.source_train.y) ps += y;
    for (double y : a.target_train.y) pt += y;
    ps /= static_cast<double>(a.source_train.size());
    pt /= static_cast<double>(a.target_train.size());
    CHECK(std::fabs(ps - 0.5) < 0.1);
    CHECK(std::fabs(pt - 0.9) < 0.06);
}

TEST_CASE("trajectory djs_y approximates the Bernoulli label distance") {
    SyntheticDomainSpec spec = small_spec(5);
    spec.n_train = 2000;
    spec.n_test = 2000;
    Hyperparams hyper = short_run(1);
    const auto traj = train(spec, hyper);
    // population value for (0.5, 0.9) is 0.38313587985994213
    CHECK(std::fabs(traj.records[0].djs_y - 0.38313587985994213) < 0.05);

    SyntheticDomainSpec balanced = small_spec(5, 0.5);
    balanced.n_train = 2000;
    balanced.n_test = 2000;
    const auto traj_b = train(balanced, hyper);
    CHECK(traj_b.records[0].djs_y < 0.1);
}

TEST_CASE("training is deterministic per (spec, hyper)") {
    const auto spec = small_spec(7);
    const auto hyper = short_run(10);
    const auto a = train(spec, hyper);
    const auto b = train(spec, hyper);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].source_train_error == b.records[i].source_train_error);
        CHECK(a.records[i].target_test_accuracy == b.records[i].target_test_accuracy);
        CHECK(a.records[i].djs_z_estimate == b.records[i].djs_z_estimate);
        CHECK(a.records[i].measured_joint_error == b.records[i].measured_joint_error);
    }
}

TEST_CASE("zero reversal coefficient reproduces the source-only baseline") {
    const auto spec = small_spec(11);
    Hyperparams with_disc = short_run(15);
    with_disc.grl_coeff = 0.0;
    Hyperparams lesioned = with_disc;
    lesioned.train_discriminator = false;

    const auto a = train(spec, with_disc);
    const auto b = train(spec, lesioned);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        // identical featurizer/classifier paths; only the discriminator differs
        CHECK(a.records[i].target_test_accuracy == b.records[i].target_test_accuracy);
        CHECK(a.records[i].source_train_error == b.records[i].source_train_error);
        CHECK(a.records[i].djs_z_estimate == b.records[i].djs_z_estimate);
    }
}

TEST_CASE("balanced labels: alignment proceeds without hurting target accuracy") {
    SyntheticDomainSpec spec = small_spec(13, 0.5);
    // identical geometry between the domains
    spec.target_means = spec.source_means;
    const auto traj = train(spec, short_run(60));

    double peak = 0.0;
    for (const auto& r : traj.records) peak = std::max(peak, r.target_test_accuracy);
    CHECK(traj.records.back().target_test_accuracy >= peak - 0.05);
    // representations align over training
    CHECK(traj.records.back().djs_z_estimate < traj.records.front().djs_z_estimate);
}

TEST_CASE("trajectory fields stay in range") {
    const auto traj = train(small_spec(17), short_run(12));
    for (const auto& r : traj.records) {
        CHECK(r.source_train_error >= 0.0);
        CHECK(r.source_train_error <= 1.0);
        CHECK(r.target_test_accuracy >= 0.0);
        CHECK(r.target_test_accuracy <= 1.0);
        CHECK(r.discriminator_accuracy >= 0.0);
        CHECK(r.discriminator_accuracy <= 1.0);
        CHECK(r.djs_z_estimate >= 0.0);
        CHECK(r.djs_z_estimate <= 1.0);
        CHECK(r.djs_y >= 0.0);
        CHECK(r.djs_y <= 1.0);
        CHECK(r.measured_joint_error >= 0.0);
        CHECK(r.measured_joint_error <= 2.0);
        CHECK(r.lower_bound_value >= 0.0);
    }
}

TEST_CASE("diverging training reports the epoch") {
    Hyperparams hyper = short_run(5);
    hyper.lr = 1e18;
    try {
        train(small_spec(19), hyper);
        FAIL("expected DivergedTraining");
    } catch (const DivergedTraining& e) {
        CHECK(e.epoch < 5);
    }
}

TEST_CASE("least squares slope on fixed series") {
    Trajectory t;
    for (std::size_t e = 0; e < 10; ++e) {
        EpochRecord r{};
        r.epoch = e;
        r.target_test_accuracy = 0.7;                            // constant
        r.source_train_error = static_cast<double>(e);           // exact line, slope 1
        r.djs_z_estimate = 0.5 - 0.01 * static_cast<double>(e);  // slope -0.01
        t.records.push_back(r);
    }
    CHECK(least_squares_slope(t, TrajectoryField::target_test_accuracy, 0) == 0.0);
    CHECK(least_squares_slope(t, TrajectoryField::source_train_error, 0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(least_squares_slope(t, TrajectoryField::djs_z_estimate, 2) ==
          doctest::Approx(-0.01).epsilon(1e-9));
    CHECK_THROWS_AS(least_squares_slope(t, TrajectoryField::djs_y, 8), InsufficientPoints);
}

TEST_CASE("gradient check: analytic backprop matches central differences") {
    const auto params = NetParams::init(8, 1, 2027);
    const auto batch = small_batch(23);
    for (double coeff : {1.0, 0.3, 0.0}) {
        const auto res = gradient_check(params, batch, coeff, 1e-5);
        INFO("coeff ", coeff, " max rel err ", res.max_relative_error);
        CHECK(res.max_relative_error < 1e-4);
    }
    // two-dimensional bottleneck path
    const auto params2 = NetParams::init(6, 2, 2029);
    const auto res2 = gradient_check(params2, batch, 1.0, 1e-5);
    CHECK(res2.max_relative_error < 1e-4);
}

TEST_CASE("gradient check epsilon range is validated") {
    const auto params = NetParams::init(4, 1, 1);
    const auto batch = small_batch(29);
    CHECK_THROWS_AS(gradient_check(params, batch, 1.0, 1e-7), Error);
    CHECK_THROWS_AS(gradient_check(params, batch, 1.0, 1e-2), Error);
}

TEST_CASE("zero net on a zero batch: bias-free paths agree at zero") {
    NetParams params = NetParams::init(4, 1, 3);
    auto zero = [](std::vector<double>& v) { std::fill(v.begin(), v.end(), 0.0); };
    zero(params.w1);
    zero(params.b1);
    zero(params.w2);
    zero(params.b2);
    zero(params.wc);
    params.bc = 0.0;
    zero(params.wd1);
    zero(params.bd1);
    zero(params.wd2);
    params.bd2 = 0.0;

    Batch batch;
    for (int i = 0; i < 4; ++i) {
        batch.source_x.push_back({0.0, 0.0});
        batch.source_y.push_back(i % 2 ? 1.0 : 0.0);
        batch.target_x.push_back({0.0, 0.0});
    }
    const auto res = gradient_check(params, batch, 1.0, 1e-5);
    for (std::size_t i = 0; i < res.per_param.size(); ++i) {
        if (!res.per_param_is_bias[i]) {
            CHECK(res.per_param[i] == 0.0);  // analytic and numeric both vanish
        }
    }
}

TEST_CASE("reversal coefficient flips the featurizer gradient exactly") {
    const auto params = NetParams::init(6, 1, 31);
    const auto batch = small_batch(37);
    const auto plus = reversed_featurizer_gradient(params, batch, 1.0);
    const auto minus = reversed_featurizer_gradient(params, batch, -1.0);
    REQUIRE(plus.size() == minus.size());
    for (std::size_t i = 0; i < plus.size(); ++i) {
        CHECK(plus[i] == -minus[i]);
    }
}

TEST_CASE("csv serialization uses the fixed header") {
    const auto traj = train(small_spec(41), short_run(3));
    const auto csv = traj.to_csv();
    CHECK(csv.rfind("epoch,source_err,target_acc,disc_acc,djs_z,djs_y,lower_bound,joint_err\n",
                    0) == 0);
    std::size_t lines = 0;
    for (char c : csv) lines += c == '\n' ? 1 : 0;
    CHECK(lines == 4);  // header + 3 epochs
}

TEST_CASE("spec validation rejects nonsense") {
    SyntheticDomainSpec bad = small_spec(1);
    bad.class_stddev = 0.0;
    CHECK_THROWS_AS(make_domains(bad), Error);
    SyntheticDomainSpec tiny = small_spec(1);
    tiny.n_train = 5;
    CHECK_THROWS_AS(make_domains(tiny), Error);
    SyntheticDomainSpec prob = small_spec(1);
    prob.target_label_prob = 1.5;
    CHECK_THROWS_AS(make_domains(prob), Error);
}
