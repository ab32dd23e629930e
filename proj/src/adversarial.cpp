#include "dabounds/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "dabounds/distribution.hpp"
#include "dabounds/divergences.hpp"
#include "dabounds/errors.hpp"
#include "dabounds/rng.hpp"

namespace dabounds::adversarial {

namespace {

double sigmoid(double a) { return 1.0 / (1.0 + std::exp(-a)); }

// logistic loss from the pre-activation, stable at both tails
double logistic_loss(double pre, double y) {
    const double softplus = pre > 0.0 ? pre + std::log1p(std::exp(-pre))
                                      : std::log1p(std::exp(pre));
    return softplus - y * pre;
}

}  // namespace

void SyntheticDomainSpec::validate() const {
    if (!(source_label_prob >= 0.0 && source_label_prob <= 1.0) ||
        !(target_label_prob >= 0.0 && target_label_prob <= 1.0)) {
        throw Error("SyntheticDomainSpec: label probabilities must lie in [0,1]");
    }
    if (!(class_stddev > 0.0)) throw Error("SyntheticDomainSpec: stddev must be > 0");
    if (n_train < 10 || n_test < 10) throw Error("SyntheticDomainSpec: counts must be >= 10");
}

namespace {

LabeledPoints draw_points(const std::array<std::array<double, 2>, 2>& means,
                          double stddev, double label_prob, std::size_t n,
                          std::uint64_t seed) {
    Rng rng(seed);
    LabeledPoints pts;
    pts.x.resize(n);
    pts.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int label = rng.bernoulli(label_prob) ? 1 : 0;
        pts.y[i] = static_cast<double>(label);
        pts.x[i] = {means[label][0] + stddev * rng.gaussian(),
                    means[label][1] + stddev * rng.gaussian()};
    }
    return pts;
}

}  // namespace

DomainData make_domains(const SyntheticDomainSpec& spec) {
    spec.validate();
    DomainData d;
    d.source_train = draw_points(spec.source_means, spec.class_stddev,
                                 spec.source_label_prob, spec.n_train,
                                 derive_seed(spec.seed, 0));
    d.target_train = draw_points(spec.target_means, spec.class_stddev,
                                 spec.target_label_prob, spec.n_train,
                                 derive_seed(spec.seed, 1));
    d.source_test = draw_points(spec.source_means, spec.class_stddev,
                                spec.source_label_prob, spec.n_test,
                                derive_seed(spec.seed, 2));
    d.target_test = draw_points(spec.target_means, spec.class_stddev,
                                spec.target_label_prob, spec.n_test,
                                derive_seed(spec.seed, 3));
    return d;
}

double Hyperparams::coeff_at(std::size_t epoch) const {
    if (grl_schedule.empty()) return grl_coeff;
    return grl_schedule[std::min(epoch, grl_schedule.size() - 1)];
}

NetParams NetParams::init(std::size_t hidden, std::size_t bottleneck, std::uint64_t seed) {
    if (bottleneck != 1 && bottleneck != 2) {
        throw Error("NetParams: bottleneck must be 1 or 2");
    }
    if (hidden < 1) throw Error("NetParams: hidden must be >= 1");
    NetParams p;
    p.hidden = hidden;
    p.bottleneck = bottleneck;

    auto xavier = [](Rng& rng, std::vector<double>& w, std::size_t rows, std::size_t cols) {
        const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
        w.resize(rows * cols);
        for (double& v : w) v = rng.uniform(-bound, bound);
    };

    Rng feat_rng(derive_seed(seed, 0));
    xavier(feat_rng, p.w1, hidden, 2);
    p.b1.assign(hidden, 0.0);
    xavier(feat_rng, p.w2, bottleneck, hidden);
    p.b2.assign(bottleneck, 0.0);
    xavier(feat_rng, p.wc, 1, bottleneck);
    p.bc = 0.0;

    Rng disc_rng(derive_seed(seed, 1));
    xavier(disc_rng, p.wd1, hidden, bottleneck);
    p.bd1.assign(hidden, 0.0);
    xavier(disc_rng, p.wd2, hidden, 1);
    p.bd2 = 0.0;
    return p;
}

bool NetParams::all_finite() const {
    auto ok = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    return ok(w1) && ok(b1) && ok(w2) && ok(b2) && ok(wc) && std::isfinite(bc) &&
           ok(wd1) && ok(bd1) && ok(wd2) && std::isfinite(bd2);
}

namespace {

struct Forward {
    std::vector<double> pre1, u;  // hidden pre-activation and rectified output
    std::vector<double> z;        // bottleneck (linear)
};

void forward_features(const NetParams& p, const std::array<double, 2>& x, Forward& f) {
    f.pre1.resize(p.hidden);
    f.u.resize(p.hidden);
    f.z.assign(p.bottleneck, 0.0);
    for (std::size_t k = 0; k < p.hidden; ++k) {
        const double a = p.w1[k * 2] * x[0] + p.w1[k * 2 + 1] * x[1] + p.b1[k];
        f.pre1[k] = a;
        f.u[k] = a > 0.0 ? a : 0.0;
    }
    for (std::size_t j = 0; j < p.bottleneck; ++j) {
        double a = p.b2[j];
        for (std::size_t k = 0; k < p.hidden; ++k) a += p.w2[j * p.hidden + k] * f.u[k];
        f.z[j] = a;
    }
}

double classifier_pre(const NetParams& p, const std::vector<double>& z) {
    double a = p.bc;
    for (std::size_t j = 0; j < p.bottleneck; ++j) a += p.wc[j] * z[j];
    return a;
}

struct DiscForward {
    std::vector<double> pre1, v;
    double pre2 = 0.0;
};

void forward_disc(const NetParams& p, const std::vector<double>& z, DiscForward& d) {
    d.pre1.resize(p.hidden);
    d.v.resize(p.hidden);
    for (std::size_t k = 0; k < p.hidden; ++k) {
        double a = p.bd1[k];
        for (std::size_t j = 0; j < p.bottleneck; ++j) a += p.wd1[k * p.bottleneck + j] * z[j];
        d.pre1[k] = a;
        d.v[k] = a > 0.0 ? a : 0.0;
    }
    d.pre2 = p.bd2;
    for (std::size_t k = 0; k < p.hidden; ++k) d.pre2 += p.wd2[k] * d.v[k];
}

// gradient accumulator with the same shape as the parameters
struct Grads {
    std::vector<double> w1, b1, w2, b2, wc;
    double bc = 0.0;
    std::vector<double> wd1, bd1, wd2;
    double bd2 = 0.0;

    explicit Grads(const NetParams& p)
        : w1(p.w1.size(), 0.0), b1(p.b1.size(), 0.0), w2(p.w2.size(), 0.0),
          b2(p.b2.size(), 0.0), wc(p.wc.size(), 0.0), wd1(p.wd1.size(), 0.0),
          bd1(p.bd1.size(), 0.0), wd2(p.wd2.size(), 0.0) {}
};

// backprop a bottleneck gradient dz into the featurizer parameters
void backprop_featurizer(const NetParams& p, const std::array<double, 2>& x,
                         const Forward& f, const std::vector<double>& dz, Grads& g) {
    std::vector<double> du(p.hidden, 0.0);
    for (std::size_t j = 0; j < p.bottleneck; ++j) {
        g.b2[j] += dz[j];
        for (std::size_t k = 0; k < p.hidden; ++k) {
            g.w2[j * p.hidden + k] += dz[j] * f.u[k];
            du[k] += dz[j] * p.w2[j * p.hidden + k];
        }
    }
    for (std::size_t k = 0; k < p.hidden; ++k) {
        if (f.pre1[k] <= 0.0) continue;  // rectifier gate, derivative 0 at the kink
        g.b1[k] += du[k];
        g.w1[k * 2] += du[k] * x[0];
        g.w1[k * 2 + 1] += du[k] * x[1];
    }
}

// classification loss gradients on the labeled source batch (mean reduction);
// featurizer part lands in `g_feat`, classifier part in `g_cls`
double classifier_pass(const NetParams& p, const std::vector<std::array<double, 2>>& xs,
                       const std::vector<double>& ys, Grads& g_feat, Grads& g_cls) {
    const double inv_n = 1.0 / static_cast<double>(xs.size());
    Forward f;
    std::vector<double> dz(p.bottleneck);
    double loss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        forward_features(p, xs[i], f);
        const double pre = classifier_pre(p, f.z);
        loss += logistic_loss(pre, ys[i]) * inv_n;
        const double dpre = (sigmoid(pre) - ys[i]) * inv_n;
        g_cls.bc += dpre;
        for (std::size_t j = 0; j < p.bottleneck; ++j) {
            g_cls.wc[j] += dpre * f.z[j];
            dz[j] = dpre * p.wc[j];
        }
        backprop_featurizer(p, xs[i], f, dz, g_feat);
    }
    return loss;
}

// domain loss gradients over the source (label 0) and target (label 1)
// batches; featurizer part lands in `g_feat`, discriminator part in `g_disc`
double domain_pass(const NetParams& p, const std::vector<std::array<double, 2>>& src,
                   const std::vector<std::array<double, 2>>& tgt, Grads& g_feat,
                   Grads& g_disc) {
    const double inv_n = 1.0 / static_cast<double>(src.size() + tgt.size());
    Forward f;
    DiscForward d;
    std::vector<double> dz(p.bottleneck);
    double loss = 0.0;
    auto one = [&](const std::array<double, 2>& x, double dom) {
        forward_features(p, x, f);
        forward_disc(p, f.z, d);
        loss += logistic_loss(d.pre2, dom) * inv_n;
        const double dpre2 = (sigmoid(d.pre2) - dom) * inv_n;
        g_disc.bd2 += dpre2;
        std::fill(dz.begin(), dz.end(), 0.0);
        for (std::size_t k = 0; k < p.hidden; ++k) {
            g_disc.wd2[k] += dpre2 * d.v[k];
            if (d.pre1[k] <= 0.0) continue;
            const double dv = dpre2 * p.wd2[k];
            g_disc.bd1[k] += dv;
            for (std::size_t j = 0; j < p.bottleneck; ++j) {
                g_disc.wd1[k * p.bottleneck + j] += dv * f.z[j];
                dz[j] += dv * p.wd1[k * p.bottleneck + j];
            }
        }
        backprop_featurizer(p, x, f, dz, g_feat);
    };
    for (const auto& x : src) one(x, 0.0);
    for (const auto& x : tgt) one(x, 1.0);
    return loss;
}

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

// one SGD step; returns classifier + domain loss for divergence detection
double sgd_step(NetParams& p, const Batch& batch, double lr, double grl_coeff,
                bool train_disc) {
    Grads g_feat_cls(p), g_cls(p), g_feat_dom(p), g_disc(p);
    const double cls_loss = classifier_pass(p, batch.source_x, batch.source_y,
                                            g_feat_cls, g_cls);
    double dom_loss = 0.0;
    if (train_disc || grl_coeff != 0.0) {
        dom_loss = domain_pass(p, batch.source_x, batch.target_x, g_feat_dom, g_disc);
    }

    // featurizer: classification gradient minus the reversed domain gradient
    axpy(g_feat_cls.w1, -grl_coeff, g_feat_dom.w1);
    axpy(g_feat_cls.b1, -grl_coeff, g_feat_dom.b1);
    axpy(g_feat_cls.w2, -grl_coeff, g_feat_dom.w2);
    axpy(g_feat_cls.b2, -grl_coeff, g_feat_dom.b2);

    axpy(p.w1, -lr, g_feat_cls.w1);
    axpy(p.b1, -lr, g_feat_cls.b1);
    axpy(p.w2, -lr, g_feat_cls.w2);
    axpy(p.b2, -lr, g_feat_cls.b2);
    axpy(p.wc, -lr, g_cls.wc);
    p.bc -= lr * g_cls.bc;
    if (train_disc) {
        axpy(p.wd1, -lr, g_disc.wd1);
        axpy(p.bd1, -lr, g_disc.bd1);
        axpy(p.wd2, -lr, g_disc.wd2);
        p.bd2 -= lr * g_disc.bd2;
    }
    return cls_loss + dom_loss;
}

std::vector<double> bottleneck_values(const NetParams& p, const LabeledPoints& pts) {
    Forward f;
    std::vector<double> out;
    out.reserve(pts.size() * p.bottleneck);
    for (const auto& x : pts.x) {
        forward_features(p, x, f);
        for (double z : f.z) out.push_back(z);
    }
    return out;
}

// 32 bins per dimension over the combined observed range
double histogram_js_distance(const std::vector<double>& zs, const std::vector<double>& zt,
                             std::size_t dim) {
    constexpr int kBins = 32;
    const std::size_t ns = zs.size() / dim;
    const std::size_t nt = zt.size() / dim;
    std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
    auto scan = [&](const std::vector<double>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::size_t d = i % dim;
            lo[d] = std::min(lo[d], v[i]);
            hi[d] = std::max(hi[d], v[i]);
        }
    };
    scan(zs);
    scan(zt);

    auto bin_of = [&](const std::vector<double>& v, std::size_t i) {
        std::int64_t id = 0;
        for (std::size_t d = 0; d < dim; ++d) {
            int b = 0;
            if (hi[d] > lo[d]) {
                b = static_cast<int>((v[i * dim + d] - lo[d]) / (hi[d] - lo[d]) * kBins);
                b = std::clamp(b, 0, kBins - 1);
            }
            id = id * kBins + b;
        }
        return id;
    };

    std::vector<DiscreteDistribution::Atom> pa, qa;
    {
        std::map<std::int64_t, double> cp, cq;
        for (std::size_t i = 0; i < ns; ++i) cp[bin_of(zs, i)] += 1.0 / static_cast<double>(ns);
        for (std::size_t i = 0; i < nt; ++i) cq[bin_of(zt, i)] += 1.0 / static_cast<double>(nt);
        for (const auto& [id, m] : cp) pa.push_back({id, m});
        for (const auto& [id, m] : cq) qa.push_back({id, m});
        // align supports so both distributions cover the union
        for (const auto& [id, m] : cq) {
            (void)m;
            if (cp.find(id) == cp.end()) pa.push_back({id, 0.0});
        }
        for (const auto& [id, m] : cp) {
            (void)m;
            if (cq.find(id) == cq.end()) qa.push_back({id, 0.0});
        }
    }
    return js_distance(DiscreteDistribution(std::move(pa)),
                       DiscreteDistribution(std::move(qa)));
}

double zero_one_error(const NetParams& p, const LabeledPoints& pts) {
    Forward f;
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        forward_features(p, pts.x[i], f);
        const double pred = classifier_pre(p, f.z) > 0.0 ? 1.0 : 0.0;
        if (pred != pts.y[i]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(pts.size());
}

double disc_accuracy(const NetParams& p, const LabeledPoints& src, const LabeledPoints& tgt) {
    Forward f;
    DiscForward d;
    std::size_t right = 0;
    for (const auto& x : src.x) {
        forward_features(p, x, f);
        forward_disc(p, f.z, d);
        if (d.pre2 <= 0.0) ++right;
    }
    for (const auto& x : tgt.x) {
        forward_features(p, x, f);
        forward_disc(p, f.z, d);
        if (d.pre2 > 0.0) ++right;
    }
    return static_cast<double>(right) / static_cast<double>(src.size() + tgt.size());
}

double empirical_label_js(const LabeledPoints& src, const LabeledPoints& tgt) {
    const double ps = std::accumulate(src.y.begin(), src.y.end(), 0.0) /
                      static_cast<double>(src.size());
    const double pt = std::accumulate(tgt.y.begin(), tgt.y.end(), 0.0) /
                      static_cast<double>(tgt.size());
    return js_distance(DiscreteDistribution::bernoulli(ps),
                       DiscreteDistribution::bernoulli(pt));
}

double lower_bound_from(double djs_y, double djs_z) {
    if (!(djs_y >= djs_z)) return 0.0;
    const double gap = djs_y - djs_z;
    return 0.5 * gap * gap;
}

}  // namespace

Trajectory train(const SyntheticDomainSpec& spec, const Hyperparams& hyper) {
    if (hyper.epochs < 1) throw Error("train: epochs must be >= 1");
    if (hyper.batch < 1) throw Error("train: batch must be >= 1");
    if (!(std::isfinite(hyper.lr) && std::isfinite(hyper.grl_coeff))) {
        throw Error("train: hyperparameters must be finite");
    }
    const DomainData data = make_domains(spec);
    NetParams params = NetParams::init(hyper.hidden, hyper.bottleneck,
                                       derive_seed(spec.seed, 101));
    const std::uint64_t shuffle_master = derive_seed(spec.seed, 102);

    const double djs_y = empirical_label_js(data.source_test, data.target_test);

    std::vector<std::size_t> src_idx(data.source_train.size());
    std::vector<std::size_t> tgt_idx(data.target_train.size());
    std::iota(src_idx.begin(), src_idx.end(), 0);
    std::iota(tgt_idx.begin(), tgt_idx.end(), 0);

    Trajectory traj;
    traj.records.reserve(hyper.epochs);
    Batch batch;
    for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
        Rng shuffle_rng(derive_seed(shuffle_master, epoch));
        shuffle_rng.shuffle(src_idx);
        shuffle_rng.shuffle(tgt_idx);
        const double coeff = hyper.coeff_at(epoch);
        const std::size_t steps =
            std::min(src_idx.size(), tgt_idx.size()) / hyper.batch;
        for (std::size_t s = 0; s < steps; ++s) {
            batch.source_x.clear();
            batch.source_y.clear();
            batch.target_x.clear();
            for (std::size_t k = 0; k < hyper.batch; ++k) {
                const std::size_t si = src_idx[s * hyper.batch + k];
                const std::size_t ti = tgt_idx[s * hyper.batch + k];
                batch.source_x.push_back(data.source_train.x[si]);
                batch.source_y.push_back(data.source_train.y[si]);
                batch.target_x.push_back(data.target_train.x[ti]);
            }
            const double loss =
                sgd_step(params, batch, hyper.lr, coeff, hyper.train_discriminator);
            if (!std::isfinite(loss) || !params.all_finite()) {
                throw DivergedTraining(
                    "train: loss became non-finite at epoch " + std::to_string(epoch),
                    epoch);
            }
        }

        EpochRecord rec;
        rec.epoch = epoch;
        rec.source_train_error = zero_one_error(params, data.source_train);
        rec.target_test_accuracy = 1.0 - zero_one_error(params, data.target_test);
        rec.discriminator_accuracy =
            disc_accuracy(params, data.source_train, data.target_train);
        const auto zs = bottleneck_values(params, data.source_train);
        const auto zt = bottleneck_values(params, data.target_train);
        rec.djs_z_estimate = histogram_js_distance(zs, zt, hyper.bottleneck);
        rec.djs_y = djs_y;
        rec.lower_bound_value = lower_bound_from(djs_y, rec.djs_z_estimate);
        rec.measured_joint_error = zero_one_error(params, data.source_test) +
                                   zero_one_error(params, data.target_test);
        traj.records.push_back(rec);
    }
    return traj;
}

const char* Trajectory::csv_header() {
    return "epoch,source_err,target_acc,disc_acc,djs_z,djs_y,lower_bound,joint_err";
}

std::string Trajectory::to_csv() const {
    std::string out = csv_header();
    out += '\n';
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%zu,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      r.epoch, r.source_train_error, r.target_test_accuracy,
                      r.discriminator_accuracy, r.djs_z_estimate, r.djs_y,
                      r.lower_bound_value, r.measured_joint_error);
        out += buf;
    }
    return out;
}

double field_value(const EpochRecord& r, TrajectoryField f) {
    switch (f) {
        case TrajectoryField::source_train_error: return r.source_train_error;
        case TrajectoryField::target_test_accuracy: return r.target_test_accuracy;
        case TrajectoryField::discriminator_accuracy: return r.discriminator_accuracy;
        case TrajectoryField::djs_z_estimate: return r.djs_z_estimate;
        case TrajectoryField::djs_y: return r.djs_y;
        case TrajectoryField::lower_bound_value: return r.lower_bound_value;
        case TrajectoryField::measured_joint_error: return r.measured_joint_error;
    }
    throw Error("field_value: unknown field");
}

double least_squares_slope(const Trajectory& t, TrajectoryField field,
                           std::size_t from_epoch) {
    std::vector<double> xs, ys;
    for (const auto& r : t.records) {
        if (r.epoch < from_epoch) continue;
        xs.push_back(static_cast<double>(r.epoch));
        ys.push_back(field_value(r, field));
    }
    if (xs.size() < 3) {
        throw InsufficientPoints("least_squares_slope: needs at least 3 points");
    }
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

std::size_t peak_epoch(const Trajectory& t) {
    if (t.records.empty()) throw Error("peak_epoch: empty trajectory");
    std::size_t best = 0;
    for (std::size_t i = 1; i < t.records.size(); ++i) {
        if (t.records[i].target_test_accuracy >
            t.records[best].target_test_accuracy) {
            best = i;
        }
    }
    return t.records[best].epoch;
}

namespace {

// flat view of all parameters with group tags, aligned between a NetParams
// and a Grads of the same shape
struct ParamView {
    std::vector<double*> values;
    std::vector<int> groups;        // 0 featurizer, 1 classifier, 2 discriminator
    std::vector<bool> is_bias;
};

ParamView view_params(NetParams& p) {
    ParamView v;
    auto add = [&](std::vector<double>& vec, int group, bool bias) {
        for (double& x : vec) {
            v.values.push_back(&x);
            v.groups.push_back(group);
            v.is_bias.push_back(bias);
        }
    };
    add(p.w1, 0, false);
    add(p.b1, 0, true);
    add(p.w2, 0, false);
    add(p.b2, 0, true);
    add(p.wc, 1, false);
    v.values.push_back(&p.bc);
    v.groups.push_back(1);
    v.is_bias.push_back(true);
    add(p.wd1, 2, false);
    add(p.bd1, 2, true);
    add(p.wd2, 2, false);
    v.values.push_back(&p.bd2);
    v.groups.push_back(2);
    v.is_bias.push_back(true);
    return v;
}

std::vector<double> flatten_grads(const NetParams& shape, const Grads& g_feat,
                                  const Grads& g_cls, const Grads& g_disc) {
    (void)shape;
    std::vector<double> out;
    auto add = [&](const std::vector<double>& v) {
        out.insert(out.end(), v.begin(), v.end());
    };
    add(g_feat.w1);
    add(g_feat.b1);
    add(g_feat.w2);
    add(g_feat.b2);
    add(g_cls.wc);
    out.push_back(g_cls.bc);
    add(g_disc.wd1);
    add(g_disc.bd1);
    add(g_disc.wd2);
    out.push_back(g_disc.bd2);
    return out;
}

double loss_only_classifier(const NetParams& p, const Batch& batch) {
    Forward f;
    double loss = 0.0;
    const double inv_n = 1.0 / static_cast<double>(batch.source_x.size());
    for (std::size_t i = 0; i < batch.source_x.size(); ++i) {
        forward_features(p, batch.source_x[i], f);
        loss += logistic_loss(classifier_pre(p, f.z), batch.source_y[i]) * inv_n;
    }
    return loss;
}

double loss_only_domain(const NetParams& p, const Batch& batch) {
    Forward f;
    DiscForward d;
    double loss = 0.0;
    const double inv_n =
        1.0 / static_cast<double>(batch.source_x.size() + batch.target_x.size());
    for (const auto& x : batch.source_x) {
        forward_features(p, x, f);
        forward_disc(p, f.z, d);
        loss += logistic_loss(d.pre2, 0.0) * inv_n;
    }
    for (const auto& x : batch.target_x) {
        forward_features(p, x, f);
        forward_disc(p, f.z, d);
        loss += logistic_loss(d.pre2, 1.0) * inv_n;
    }
    return loss;
}

}  // namespace

GradientCheckResult gradient_check(const NetParams& params, const Batch& batch,
                                   double grl_coeff, double epsilon) {
    if (!(epsilon >= 1e-6 && epsilon <= 1e-3)) {
        throw Error("gradient_check: epsilon must lie in [1e-6, 1e-3]");
    }
    if (batch.source_x.empty() || batch.target_x.empty()) {
        throw Error("gradient_check: batch must contain source and target points");
    }

    // analytic gradients exactly as the SGD step computes them
    Grads g_feat(params), g_cls(params), g_feat_dom(params), g_disc(params);
    classifier_pass(params, batch.source_x, batch.source_y, g_feat, g_cls);
    domain_pass(params, batch.source_x, batch.target_x, g_feat_dom, g_disc);
    axpy(g_feat.w1, -grl_coeff, g_feat_dom.w1);
    axpy(g_feat.b1, -grl_coeff, g_feat_dom.b1);
    axpy(g_feat.w2, -grl_coeff, g_feat_dom.w2);
    axpy(g_feat.b2, -grl_coeff, g_feat_dom.b2);
    const std::vector<double> analytic = flatten_grads(params, g_feat, g_cls, g_disc);

    NetParams probe = params;
    ParamView view = view_params(probe);

    GradientCheckResult result;
    result.per_param.resize(view.values.size());
    result.per_param_group = view.groups;
    result.per_param_is_bias.assign(view.is_bias.begin(), view.is_bias.end());
    result.max_relative_error = 0.0;

    for (std::size_t i = 0; i < view.values.size(); ++i) {
        // the scalar objective whose gradient the training step applies to
        // this parameter: featurizer sees cls - coeff * domain, the
        // discriminator sees the plain domain loss
        auto objective = [&]() {
            switch (view.groups[i]) {
                case 0:
                    return loss_only_classifier(probe, batch) -
                           grl_coeff * loss_only_domain(probe, batch);
                case 1: return loss_only_classifier(probe, batch);
                default: return loss_only_domain(probe, batch);
            }
        };
        const double saved = *view.values[i];
        *view.values[i] = saved + epsilon;
        const double up = objective();
        *view.values[i] = saved - epsilon;
        const double down = objective();
        *view.values[i] = saved;
        const double numeric = (up - down) / (2.0 * epsilon);
        const double a = analytic[i];
        const double denom = std::max(std::fabs(a), std::fabs(numeric));
        const double rel = denom < 1e-8 ? 0.0 : std::fabs(a - numeric) / denom;
        result.per_param[i] = rel;
        result.max_relative_error = std::max(result.max_relative_error, rel);
    }
    return result;
}

std::vector<double> reversed_featurizer_gradient(const NetParams& params,
                                                 const Batch& batch, double grl_coeff) {
    Grads g_feat_dom(params), g_disc(params);
    domain_pass(params, batch.source_x, batch.target_x, g_feat_dom, g_disc);
    std::vector<double> out;
    auto add = [&](const std::vector<double>& v) {
        for (double x : v) out.push_back(-grl_coeff * x);
    };
    add(g_feat_dom.w1);
    add(g_feat_dom.b1);
    add(g_feat_dom.w2);
    add(g_feat_dom.b2);
    return out;
}

}  // namespace dabounds::adversarial
