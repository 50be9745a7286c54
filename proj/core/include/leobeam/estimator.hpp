#pragma once

#include <Eigen/Dense>

#include "leobeam/errors.hpp"

namespace leobeam {

/// Normalized beam weights: entries in [0, 1], summing to 1.
struct WeightVector {
    Eigen::VectorXd values;

    /// L1-normalizes a nonnegative raw vector. Throws InputError on
    /// non-finite or all-zero input.
    static WeightVector normalized(const Eigen::VectorXd& raw);
    bool valid(double tol = 1e-9) const;
};

struct WlsOptions {
    double ridge = 1e-6;
    int max_iter = 10;
    double tol_m = 1e-6;
    /// Divergence bound: an update larger than 10x this scale aborts.
    double scene_scale_m = 1000.0;
};

/// One linearized augmented-WLS update. The normal equations are formed on
/// the residuals dz_i = z_i - ||x0 - c_i|| - b0 about the linearization
/// point, so a noiseless observation at the truth is an exact fixed point.
struct WlsStep {
    Eigen::VectorXd x;      ///< updated position
    double b = 0.0;         ///< updated clock bias
    Eigen::VectorXd update; ///< the (d+1) update that was applied
    double condition = 0.0; ///< cond2 of the regularized normal matrix
};

WlsStep wls_step(const Eigen::VectorXd& z, const Eigen::MatrixXd& centers,
                 const Eigen::VectorXd& w, const Eigen::VectorXd& x0, double b0,
                 double ridge);

struct WlsSolution {
    Eigen::VectorXd position;
    double clock_bias = 0.0;
    Eigen::VectorXd residuals;      ///< z - ||x_hat - c_i|| - b_hat, all beams
    int iterations = 0;
    double condition_estimate = 0.0;
    double last_update_norm = 0.0;  ///< final Gauss-Newton update, meters
};

/// Iterated Gauss-Newton refinement of wls_step, re-linearizing at each
/// iterate, until the update norm drops below tol_m or max_iter is reached.
WlsSolution wls_solve(const Eigen::VectorXd& z, const Eigen::MatrixXd& centers,
                      const Eigen::VectorXd& w, const Eigen::VectorXd& x_init,
                      double b_init, const WlsOptions& opt = {});

/// Euclidean positioning error.
double positioning_error(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x_true);

/// Trace of the position block of the inverse Fisher information for the
/// Gaussian pseudorange model: J = H~^T diag(1/sigma_i^2) H~ at x_true.
double crlb_position(const Eigen::MatrixXd& centers, const Eigen::VectorXd& x_true,
                     const Eigen::VectorXd& sigmas);

} // namespace leobeam
