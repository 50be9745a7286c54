#pragma once

#include <Eigen/Dense>

#include "leobeam/errors.hpp"
#include "leobeam/geometry.hpp"
#include "leobeam/rng.hpp"

namespace leobeam {

struct NoiseConfig {
    double sigma_min_m = 0.5;
    double sigma_max_m = 50.0;
};

/// One epoch of pseudorange-like measurements. sigmas holds the true noise
/// std used by the simulator; agents only ever see sinr_norm.
struct Observation {
    Eigen::VectorXd pseudoranges; ///< z, meters
    Eigen::VectorXd sigmas;       ///< true per-beam noise std, meters
    Eigen::VectorXd sinr_norm;    ///< per-beam quality in [0, 1]
};

/// Affine quality-to-noise map: sigma_max at q = 0, sigma_min at q = 1.
double noise_sigma(double sinr_norm, const NoiseConfig& cfg);

/// z_i = ||x_true - c_i|| + b + n_i with n_i ~ N(0, sigma_i^2).
/// Consumes one gaussian draw per beam, in beam order.
Observation synthesize(const Scenario& scenario, const Eigen::VectorXd& sinr_norm,
                       const NoiseConfig& cfg, Rng& rng);

/// Linearized geometry: row i = [los_unit_vector(x0, c_i)^T, 1], M x (d+1).
Eigen::MatrixXd linearize(const Eigen::VectorXd& x0, const Eigen::MatrixXd& centers);

} // namespace leobeam
