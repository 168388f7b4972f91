#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "morph4d/srvf.hpp"

namespace morph4d {

/// Reference point and numeric guards for tangent-space computations.
struct SphereConfig {
    Srvf reference_point;
    double numeric_epsilon = 1e-12;
};

constexpr double kDefaultNumericEpsilon = 1e-12;

/// Geodesic distance arccos(<q1,q2>) in [0, pi]. Inputs must be unit norm
/// and share the same shape.
double geodesic_distance(const Srvf& q1, const Srvf& q2);

/// exp_p(v) = cos(||v||) p + sin(||v||) v/||v||; returns p for ||v|| < eps.
Srvf exp_map(const Srvf& p, const TangentVector& v, double eps = kDefaultNumericEpsilon);

/// log_p(q) = (theta/sin theta) (q - cos(theta) p); zero tangent for theta < eps.
/// Throws for antipodal inputs (theta within eps of pi).
TangentVector log_map(const Srvf& p, const Srvf& q, double eps = kDefaultNumericEpsilon);

/// Point at parameter tau on the geodesic from q1 to q2:
/// psi(tau) = [sin((1-tau)theta) q1 + sin(tau theta) q2] / sin(theta).
/// Returns q1 when the points coincide; throws for antipodal inputs.
Srvf geodesic_interpolate(const Srvf& q1, const Srvf& q2, double tau,
                          double eps = kDefaultNumericEpsilon);

/// Thrown when the Karcher iteration fails to converge; carries the last iterate.
struct KarcherNonConvergence : std::runtime_error {
    Srvf last_iterate;
    KarcherNonConvergence(Srvf iterate)
        : std::runtime_error("karcher_mean did not converge"), last_iterate(std::move(iterate)) {}
};

/// Intrinsic (Karcher) mean by iterating m <- exp_m(mean of log_m(q_i)).
/// Throws KarcherNonConvergence if the mean tangent norm is still >= tol
/// after max_iter steps.
Srvf karcher_mean(const std::vector<Srvf>& qs, double tol = 1e-8, int max_iter = 100);

}  // namespace morph4d
