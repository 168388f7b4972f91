#include "morph4d/gan_loss.hpp"

#include <numeric>
#include <stdexcept>

namespace morph4d {

namespace {

double mean_of(const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("empty score list");
    }
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

}  // namespace

Eigen::VectorXd ConditionCode::flat() const {
    Eigen::VectorXd out(start_onehot.size() + end_onehot.size() + noise.size());
    out << start_onehot, end_onehot, noise;
    return out;
}

ConditionCode ConditionCode::from_flat(const Eigen::VectorXd& v, int label_count) {
    if (v.size() != 2 * label_count + kNoiseSize) {
        throw std::invalid_argument("flat condition vector has wrong length");
    }
    ConditionCode code;
    code.start_onehot = v.head(label_count);
    code.end_onehot = v.segment(label_count, label_count);
    code.noise = v.tail(kNoiseSize);
    return code;
}

ConditionCode encode_condition(const ExpressionLabel& start, const ExpressionLabel& end,
                               const Eigen::VectorXd& noise, int label_count) {
    if (start.id < 0 || start.id >= label_count || end.id < 0 || end.id >= label_count) {
        throw std::invalid_argument("expression label out of range");
    }
    if (noise.size() != kNoiseSize) {
        throw std::invalid_argument("noise vector must have length 128");
    }
    ConditionCode code;
    code.start_onehot = Eigen::VectorXd::Zero(label_count);
    code.start_onehot(start.id) = 1.0;
    code.end_onehot = Eigen::VectorXd::Zero(label_count);
    code.end_onehot(end.id) = 1.0;
    code.noise = noise;
    return code;
}

TangentVector gp_interpolate(const Srvf& q_real, const TangentVector& g_tangent, double tau,
                             const Srvf& p) {
    if (tau < 0.0 || tau > 1.0) {
        throw std::invalid_argument("interpolation parameter must lie in [0,1]");
    }
    const TangentVector real_tangent = log_map(p, q_real);
    const TangentVector fake_tangent = log_map(p, exp_map(p, g_tangent));
    TangentVector out;
    out.dt = p.dt;
    out.basepoint = p;
    out.samples = (1.0 - tau) * real_tangent.samples + tau * fake_tangent.samples;
    return out;
}

double adversarial_loss(const std::vector<double>& real_scores,
                        const std::vector<double>& fake_scores,
                        const std::vector<double>& grad_norms, const LossWeights& weights) {
    double penalty = 0.0;
    if (grad_norms.empty()) {
        throw std::invalid_argument("empty gradient norm list");
    }
    for (double g : grad_norms) {
        if (g < 0.0) {
            throw std::invalid_argument("gradient norms must be nonnegative");
        }
        penalty += (g - 1.0) * (g - 1.0);
    }
    penalty /= static_cast<double>(grad_norms.size());
    return mean_of(real_scores) - mean_of(fake_scores) + weights.lambda_gp * penalty;
}

double reconstruction_loss_tangent(const TangentVector& g_tangent, const Srvf& q_gt,
                                   const Srvf& p) {
    const TangentVector generated = log_map(p, exp_map(p, g_tangent));
    const TangentVector target = log_map(p, q_gt);
    return (generated.samples - target.samples).cwiseAbs().sum();
}

double motion_total_loss(double l_adv, double l_r, const LossWeights& weights) {
    return weights.alpha1 * l_adv + weights.alpha2 * l_r;
}

}  // namespace morph4d
