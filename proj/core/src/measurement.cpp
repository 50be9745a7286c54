#include "leobeam/measurement.hpp"

namespace leobeam {

double noise_sigma(double sinr_norm, const NoiseConfig& cfg) {
    double q = std::min(std::max(sinr_norm, 0.0), 1.0);
    return cfg.sigma_max_m - (cfg.sigma_max_m - cfg.sigma_min_m) * q;
}

Observation synthesize(const Scenario& scenario, const Eigen::VectorXd& sinr_norm,
                       const NoiseConfig& cfg, Rng& rng) {
    const int m = scenario.m_beams;
    if (sinr_norm.size() != m)
        throw InputError("synthesize: sinr_norm length mismatch");
    Observation obs;
    obs.pseudoranges.resize(m);
    obs.sigmas.resize(m);
    obs.sinr_norm = sinr_norm;
    for (int i = 0; i < m; ++i) {
        double range = (scenario.ut_true - scenario.beam_centers.row(i).transpose()).norm();
        double sigma = noise_sigma(sinr_norm(i), cfg);
        obs.sigmas(i) = sigma;
        obs.pseudoranges(i) = range + scenario.clock_bias_m + sigma * rng.gaussian();
    }
    return obs;
}

Eigen::MatrixXd linearize(const Eigen::VectorXd& x0, const Eigen::MatrixXd& centers) {
    const int m = static_cast<int>(centers.rows());
    const int d = static_cast<int>(centers.cols());
    Eigen::MatrixXd h(m, d + 1);
    for (int i = 0; i < m; ++i) {
        h.block(i, 0, 1, d) = los_unit_vector(x0, centers.row(i).transpose()).transpose();
        h(i, d) = 1.0;
    }
    return h;
}

} // namespace leobeam
