#pragma once

#include <Eigen/Core>

#include <vector>

#include "morph4d/sphere.hpp"
#include "morph4d/transition.hpp"

namespace morph4d {

constexpr int kNoiseSize = 128;
constexpr int kDefaultLabelCount = 13;

/// Conditioning vector for the motion generator: two one-hot expression
/// labels concatenated with a noise vector.
struct ConditionCode {
    Eigen::VectorXd start_onehot;  // L
    Eigen::VectorXd end_onehot;    // L
    Eigen::VectorXd noise;         // 128

    int label_count() const { return static_cast<int>(start_onehot.size()); }

    /// Flat view [start | end | noise], length 2L + 128.
    Eigen::VectorXd flat() const;
    static ConditionCode from_flat(const Eigen::VectorXd& v, int label_count);
};

struct LossWeights {
    double alpha1 = 1.0;    // adversarial term
    double alpha2 = 10.0;   // reconstruction term
    double lambda_gp = 10.0;
};

ConditionCode encode_condition(const ExpressionLabel& start, const ExpressionLabel& end,
                               const Eigen::VectorXd& noise, int label_count = kDefaultLabelCount);

/// Gradient-penalty interpolant in the tangent space at p:
/// (1 - tau) log_p(q_real) + tau log_p(exp_p(g_tangent)).
TangentVector gp_interpolate(const Srvf& q_real, const TangentVector& g_tangent, double tau,
                             const Srvf& p);

/// mean(real) - mean(fake) + lambda_gp * mean((grad_norm - 1)^2). Scoring the
/// discriminator is the caller's job; this is only the loss arithmetic.
double adversarial_loss(const std::vector<double>& real_scores,
                        const std::vector<double>& fake_scores,
                        const std::vector<double>& grad_norms, const LossWeights& weights);

/// Elementwise L1 between log_p(exp_p(g_tangent)) and log_p(q_gt).
double reconstruction_loss_tangent(const TangentVector& g_tangent, const Srvf& q_gt,
                                   const Srvf& p);

/// alpha1 * l_adv + alpha2 * l_r.
double motion_total_loss(double l_adv, double l_r, const LossWeights& weights = {});

}  // namespace morph4d
