#include "leobeam/env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace leobeam {

double entropy(const Eigen::VectorXd& w) {
    double h = 0.0;
    for (int i = 0; i < w.size(); ++i) {
        double wi = w(i);
        if (wi > 0.0)
            h -= wi * std::log(wi);
    }
    return h;
}

double reward(double error_m, const Eigen::VectorXd& w, const Eigen::VectorXd& sinr_norm,
              const RewardConfig& cfg) {
    if (w.size() != sinr_norm.size())
        throw InputError("reward: dimension mismatch");
    double scaled = error_m / cfg.tau_m;
    double quality_penalty = (w.array() * (1.0 - sinr_norm.array())).sum();
    return -scaled * scaled - cfg.alpha * quality_penalty - cfg.beta * (1.0 - entropy(w));
}

BeamEnv::BeamEnv(EnvConfig cfg, ActionCodebook codebook, std::uint64_t seed)
    : cfg_(std::move(cfg)),
      codebook_(std::move(codebook)),
      scenario_rng_(derive_seed(seed, "scenario")),
      channel_rng_(derive_seed(seed, "channel")),
      noise_rng_(derive_seed(seed, "noise")) {
    if (codebook_.built_from.m != cfg_.scenario.m_beams)
        throw ConfigError("BeamEnv: codebook beam count does not match scenario");
    cfg_.estimator.scene_scale_m = cfg_.scenario.area_side_m;
}

Eigen::VectorXd BeamEnv::reset() {
    for (int attempt = 0;; ++attempt) {
        if (attempt >= cfg_.coverage_retries)
            throw DegenerateGeometryError("BeamEnv::reset: no covered scenario within retry budget");
        scenario_ = generate_scenario(cfg_.scenario, scenario_rng_.raw());
        channel_ = realize_channel(scenario_, cfg_.channel, channel_rng_);
        if (cfg_.coverage_min_sinr_norm <= 0.0 ||
            channel_.sinr_norm.maxCoeff() >= cfg_.coverage_min_sinr_norm)
            break;
    }
    const int m = scenario_.m_beams;
    x_prev_ = Eigen::VectorXd::Constant(2, scenario_.area_side_m / 2.0);
    b_prev_ = 0.0;
    w_prev_ = Eigen::VectorXd::Constant(m, 1.0 / m);
    t_ = 0;
    started_ = true;
    obs_ = synthesize(scenario_, channel_.sinr_norm, cfg_.noise, noise_rng_);
    return build_state();
}

Eigen::VectorXd BeamEnv::build_state() const {
    const int m = scenario_.m_beams;
    const double diag = scenario_.area_side_m * std::numbers::sqrt2;
    Eigen::VectorXd s(6 * m);
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd c = scenario_.beam_centers.row(i).transpose();
        Eigen::VectorXd delta = x_prev_ - c;
        double dist = delta.norm();
        s(6 * i + 0) = std::min(dist / diag, 1.0);
        if (dist > 1e-9) {
            s(6 * i + 1) = delta(1) / dist;
            s(6 * i + 2) = delta(0) / dist;
        } else {
            s(6 * i + 1) = 0.0;
            s(6 * i + 2) = 1.0;
        }
        s(6 * i + 3) = channel_.sinr_norm(i);
        // Residual of the running estimate against the current observation;
        // zero at reset by convention.
        double res = 0.0;
        if (t_ > 0)
            res = obs_.pseudoranges(i) - dist - b_prev_;
        s(6 * i + 4) = std::clamp(res / cfg_.reward.tau_m, -1.0, 1.0);
        s(6 * i + 5) = w_prev_(i);
    }
    return s;
}

std::optional<WlsSolution> BeamEnv::try_accept(const Eigen::VectorXd& w,
                                               const Eigen::VectorXd& x0, double b0) const {
    WlsSolution sol;
    try {
        sol = wls_solve(obs_.pseudoranges, scenario_.beam_centers, w, x0, b0, cfg_.estimator);
    } catch (const Error&) {
        return std::nullopt;
    }
    if (sol.last_update_norm > cfg_.settle_tol_m)
        return std::nullopt;
    if (std::abs(sol.clock_bias) > cfg_.clock_gate_m)
        return std::nullopt;
    const double lo = -cfg_.box_margin_m;
    const double hi = scenario_.area_side_m + cfg_.box_margin_m;
    if (sol.position(0) < lo || sol.position(0) > hi || sol.position(1) < lo ||
        sol.position(1) > hi)
        return std::nullopt;
    int consistent = 0;
    for (int i = 0; i < scenario_.m_beams; ++i) {
        double tol = cfg_.consistency_kappa *
                     std::max(obs_.sigmas(i), cfg_.consistency_sigma_floor_m);
        if (std::abs(sol.residuals(i)) <= tol)
            ++consistent;
    }
    if (consistent < scenario_.m_beams / 2)
        return std::nullopt;
    return sol;
}

StepOutcome BeamEnv::step(int action_index) {
    return step_weights(codebook_.decode(action_index));
}

StepOutcome BeamEnv::step_weights(const Eigen::VectorXd& w) {
    if (!started_)
        throw Error("BeamEnv::step: reset() must be called first");
    if (done())
        throw Error("BeamEnv::step: episode is done");
    if (w.size() != scenario_.m_beams)
        throw InputError("BeamEnv::step: weight length mismatch");

    StepOutcome out;
    out.info.weights = w;

    bool degenerate = false;
    int effective = 0;
    for (int i = 0; i < w.size(); ++i)
        if (w(i) > 1e-9)
            ++effective;
    if (effective < 2) {
        degenerate = true; // under-determined support, penalty branch
    } else {
        auto accepted = try_accept(w, x_prev_, b_prev_);
        if (!accepted) {
            // Warm start failed validation; retry from fixed starts.
            const double s = scenario_.area_side_m;
            const double starts[5][2] = {{0.50, 0.50}, {0.25, 0.25}, {0.25, 0.75},
                                         {0.75, 0.25}, {0.75, 0.75}};
            for (const auto& st : starts) {
                Eigen::VectorXd x0(2);
                x0 << st[0] * s, st[1] * s;
                accepted = try_accept(w, x0, 0.0);
                if (accepted)
                    break;
            }
        }
        if (accepted) {
            x_prev_ = accepted->position;
            b_prev_ = accepted->clock_bias;
        } else {
            degenerate = true;
        }
    }

    out.error_m = positioning_error(x_prev_, scenario_.ut_true);
    out.reward = degenerate ? cfg_.reward.degenerate_penalty
                            : reward(out.error_m, w, channel_.sinr_norm, cfg_.reward);
    out.info.degenerate = degenerate;
    out.info.x_hat = x_prev_;
    out.info.b_hat = b_prev_;

    ++t_;
    out.done = done();
    w_prev_ = w;
    obs_ = synthesize(scenario_, channel_.sinr_norm, cfg_.noise, noise_rng_);
    out.next_state = build_state();
    return out;
}

} // namespace leobeam
