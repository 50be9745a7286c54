#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "leobeam/errors.hpp"
#include "leobeam/rng.hpp"

namespace leobeam {

struct ScenarioConfig {
    int m_beams = 10;
    double area_side_m = 1000.0;
    double min_separation_m = 180.0;
    double clock_bias_min_m = -100.0;
    double clock_bias_max_m = 100.0;
    double satellite_altitude_m = 1000.0;
    /// Upper bound on cond2 of the augmented geometry matrix [H 1] at the
    /// true UT position; draws violating it are rejected.
    double max_condition = 1.0e4;
    int max_retries = 200;
};

/// One positioning scene: ground-projected beam centers (the pseudorange
/// anchors), satellite positions (used only by the channel model), the true
/// user position and its range-equivalent receiver clock bias.
struct Scenario {
    Eigen::MatrixXd beam_centers;        ///< M x d, planar d = 2
    Eigen::MatrixXd satellite_positions; ///< M x 3
    Eigen::VectorXd ut_true;             ///< d
    double clock_bias_m = 0.0;
    double area_side_m = 0.0;
    int m_beams = 0;
};

/// Unit vector from anchor c toward point x. Throws DegenerateGeometryError
/// if the points coincide.
Eigen::VectorXd los_unit_vector(const Eigen::VectorXd& x, const Eigen::VectorXd& c);

/// (sin, cos) of the planar bearing of x as seen from c, with the angle
/// measured from the +x axis (atan2 convention).
std::pair<double, double> bearing_features(const Eigen::VectorXd& x, const Eigen::VectorXd& c);

/// Draws a scenario: beam centers uniform in the area with a minimum pairwise
/// separation, UT uniform, clock bias uniform, satellites at the configured
/// altitude above each beam center. Draws failing the separation or
/// conditioning checks are rejected and redrawn up to config.max_retries.
Scenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed);

/// Stacked LoS rows at point x (M x d). Helper for conditioning checks.
Eigen::MatrixXd stacked_los_rows(const Eigen::MatrixXd& centers, const Eigen::VectorXd& x);

} // namespace leobeam
