#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dabounds::adversarial {

// Two Gaussian blobs per domain in the plane. The default target geometry is
// the source geometry shifted along the label-irrelevant second coordinate, so
// the marginals differ even when the labelings agree.
struct SyntheticDomainSpec {
    std::array<std::array<double, 2>, 2> source_means{{{-1.0, 0.0}, {1.0, 0.0}}};
    std::array<std::array<double, 2>, 2> target_means{{{-1.0, 1.0}, {1.0, 1.0}}};
    double class_stddev = 0.4;
    double source_label_prob = 0.5;  // Pr(Y = 1)
    double target_label_prob = 0.9;
    std::size_t n_train = 1000;
    std::size_t n_test = 1000;
    std::uint64_t seed = 42;

    void validate() const;
};

struct LabeledPoints {
    std::vector<std::array<double, 2>> x;
    std::vector<double> y;  // 0 or 1
    std::size_t size() const { return x.size(); }
};

struct DomainData {
    LabeledPoints source_train;
    LabeledPoints target_train;
    LabeledPoints source_test;
    LabeledPoints target_test;
};

DomainData make_domains(const SyntheticDomainSpec& spec);

struct Hyperparams {
    std::size_t epochs = 200;
    double lr = 0.05;
    double grl_coeff = 1.0;
    std::vector<double> grl_schedule;  // per-epoch coefficients; empty = constant
    std::size_t batch = 32;
    std::size_t bottleneck = 1;  // 1 or 2
    std::size_t hidden = 16;
    bool train_discriminator = true;

    double coeff_at(std::size_t epoch) const;
};

// Fully connected nets with rectifier hidden layers and logistic outputs:
// featurizer 2 -> hidden -> bottleneck (linear bottleneck), classifier
// bottleneck -> 1, discriminator bottleneck -> hidden -> 1.
struct NetParams {
    std::size_t hidden = 0;
    std::size_t bottleneck = 0;
    std::vector<double> w1, b1;  // featurizer layer 1: hidden x 2, hidden
    std::vector<double> w2, b2;  // featurizer layer 2: bottleneck x hidden, bottleneck
    std::vector<double> wc;      // classifier: bottleneck
    double bc = 0.0;
    std::vector<double> wd1, bd1;  // discriminator layer 1: hidden x bottleneck, hidden
    std::vector<double> wd2;       // discriminator layer 2: hidden
    double bd2 = 0.0;

    // Weights uniform in +-sqrt(6 / (fan_in + fan_out)), biases zero. The
    // featurizer/classifier and the discriminator draw from separate seed
    // streams, so removing the discriminator does not disturb the rest.
    static NetParams init(std::size_t hidden, std::size_t bottleneck, std::uint64_t seed);

    bool all_finite() const;
};

struct EpochRecord {
    std::size_t epoch;
    double source_train_error;
    double target_test_accuracy;
    double discriminator_accuracy;
    double djs_z_estimate;   // 32-bin histogram estimate on the bottleneck
    double djs_y;            // held-out label-marginal JS distance
    double lower_bound_value;
    double measured_joint_error;  // held-out 0-1 error, source + target
};

struct Trajectory {
    std::vector<EpochRecord> records;
    static const char* csv_header();  // fixed column set
    std::string to_csv() const;
};

// Minibatch SGD with manual backpropagation and gradient reversal: the domain
// discriminator's gradient is negated and scaled by the reversal coefficient
// where it enters the featurizer. Deterministic per (spec, hyper).
Trajectory train(const SyntheticDomainSpec& spec, const Hyperparams& hyper);

enum class TrajectoryField {
    source_train_error,
    target_test_accuracy,
    discriminator_accuracy,
    djs_z_estimate,
    djs_y,
    lower_bound_value,
    measured_joint_error,
};

double field_value(const EpochRecord& r, TrajectoryField f);

// ordinary least-squares slope of the field against the epoch index,
// restricted to epochs >= from_epoch; needs at least 3 points
double least_squares_slope(const Trajectory& t, TrajectoryField field,
                           std::size_t from_epoch);

// epoch index of the maximal target test accuracy
std::size_t peak_epoch(const Trajectory& t);

struct Batch {
    std::vector<std::array<double, 2>> source_x;
    std::vector<double> source_y;
    std::vector<std::array<double, 2>> target_x;
};

struct GradientCheckResult {
    double max_relative_error;
    std::vector<double> per_param;          // aligned with parameter order
    std::vector<int> per_param_group;       // 0 featurizer, 1 classifier, 2 discriminator
    std::vector<bool> per_param_is_bias;
};

// Central-difference validation of the analytic gradients, including the
// reversed discriminator path into the featurizer.
GradientCheckResult gradient_check(const NetParams& params, const Batch& batch,
                                   double grl_coeff, double epsilon);

// featurizer gradients of the domain loss alone, scaled by -coeff (the
// reversal path); exposed for the sign-flip contract
std::vector<double> reversed_featurizer_gradient(const NetParams& params,
                                                 const Batch& batch, double grl_coeff);

}  // namespace dabounds::adversarial
