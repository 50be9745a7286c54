#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "leobeam/channel.hpp"
#include "leobeam/codebook.hpp"
#include "leobeam/estimator.hpp"
#include "leobeam/geometry.hpp"
#include "leobeam/measurement.hpp"

namespace leobeam {

struct RewardConfig {
    double tau_m = 400.0;  ///< error scale in the quadratic accuracy term
    double alpha = 0.3;    ///< low-quality-beam penalty weight
    double beta = 0.1;     ///< entropy term weight
    /// Fixed reward for degenerate steps (under-determined action or a solve
    /// that failed validation); the estimate is kept and the episode continues.
    double degenerate_penalty = -2.0;
};

struct EnvConfig {
    ScenarioConfig scenario;
    UpaConfig channel;
    NoiseConfig noise;
    RewardConfig reward;
    WlsOptions estimator;
    int steps_per_episode = 100; ///< T

    /// Scenario draws are rejected until at least one beam reaches this
    /// normalized SINR at the UT (0 disables the coverage requirement).
    double coverage_min_sinr_norm = 0.5;
    int coverage_retries = 200;

    /// Solution acceptance gates. A solve result replaces the running
    /// estimate only if the final update settled below settle_tol_m, the
    /// clock bias is physically plausible, the position lies within the
    /// scene box expanded by box_margin_m, and the ranges are consistent
    /// with at least half the beams. Otherwise the env retries from a few
    /// fixed starts before taking the penalty branch.
    double settle_tol_m = 0.02;
    double clock_gate_m = 500.0;
    double box_margin_m = 1000.0;
    double consistency_kappa = 4.0;
    double consistency_sigma_floor_m = 1.0;
};

struct StepInfo {
    Eigen::VectorXd x_hat;
    double b_hat = 0.0;
    Eigen::VectorXd weights;
    bool degenerate = false; ///< penalty branch taken; estimate unchanged
};

struct StepOutcome {
    Eigen::VectorXd next_state;
    double reward = 0.0;
    double error_m = 0.0;
    bool done = false;
    StepInfo info;
};

/// Shannon entropy of a weight vector, natural log, 0*log(0) := 0.
double entropy(const Eigen::VectorXd& w);

/// r = -(e/tau)^2 - alpha * sum_i w_i (1 - sinr_i) - beta * (1 - entropy(w)).
double reward(double error_m, const Eigen::VectorXd& w, const Eigen::VectorXd& sinr_norm,
              const RewardConfig& cfg);

/// The positioning MDP. Each reset draws a fresh scenario and channel
/// realization; within an episode the geometry and per-beam SINRs are frozen
/// and only measurement noise resamples per step. State layout per beam i:
/// [distance(prev estimate, c_i)/diag, sin bearing, cos bearing, sinr_norm_i,
///  clip(residual_i/tau, -1, 1), previous weight_i], so F = 6M.
class BeamEnv {
public:
    BeamEnv(EnvConfig cfg, ActionCodebook codebook, std::uint64_t seed);

    Eigen::VectorXd reset();
    StepOutcome step(int action_index);
    /// Transition with an explicit weight vector (baseline policies).
    StepOutcome step_weights(const Eigen::VectorXd& w);

    int feature_dim() const { return 6 * cfg_.scenario.m_beams; }
    int action_count() const { return codebook_.size(); }
    int step_count() const { return t_; }
    bool done() const { return t_ >= cfg_.steps_per_episode; }

    const EnvConfig& config() const { return cfg_; }
    const ActionCodebook& codebook() const { return codebook_; }
    // Simulator-truth accessors for oracle baselines and diagnostics; the
    // agent's interface is reset/step only.
    const Scenario& scenario() const { return scenario_; }
    const Observation& observation() const { return obs_; }
    const Eigen::VectorXd& sinr_norm() const { return channel_.sinr_norm; }
    const Eigen::VectorXd& estimate() const { return x_prev_; }
    double clock_estimate() const { return b_prev_; }

private:
    Eigen::VectorXd build_state() const;
    std::optional<WlsSolution> try_accept(const Eigen::VectorXd& w,
                                          const Eigen::VectorXd& x0, double b0) const;

    EnvConfig cfg_;
    ActionCodebook codebook_;
    Rng scenario_rng_;
    Rng channel_rng_;
    Rng noise_rng_;

    Scenario scenario_;
    ChannelRealization channel_;
    Observation obs_;
    Eigen::VectorXd x_prev_;
    double b_prev_ = 0.0;
    Eigen::VectorXd w_prev_;
    int t_ = 0;
    bool started_ = false;
};

} // namespace leobeam
