#include "leobeam/channel.hpp"

#include <cmath>

namespace leobeam {

namespace {
constexpr double kSpeedOfLight = 2.99792458e8;
}

CVec steering_1d(double theta, int n) {
    if (n < 1)
        throw InputError("steering_1d: element count must be >= 1");
    CVec a(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k) {
        double phase = -M_PI * k * theta;
        a(k) = std::polar(scale, phase);
    }
    return a;
}

CVec upa_steering(double theta_x, double theta_y, const UpaConfig& cfg) {
    if (cfg.n_x < 1 || cfg.n_y < 1)
        throw InputError("upa_steering: invalid array size");
    CVec ax = steering_1d(theta_x, cfg.n_x);
    CVec ay = steering_1d(theta_y, cfg.n_y);
    CVec out(cfg.n_x * cfg.n_y);
    for (int i = 0; i < cfg.n_x; ++i)
        for (int j = 0; j < cfg.n_y; ++j)
            out(i * cfg.n_y + j) = ax(i) * ay(j);
    return out;
}

double path_gain(const UpaConfig& cfg, double slant_range_m) {
    if (slant_range_m <= 0.0)
        throw InputError("path_gain: slant range must be positive");
    double root_loss = 4.0 * M_PI * cfg.carrier_hz * slant_range_m / kSpeedOfLight;
    double loss = root_loss * root_loss;
    return std::sqrt(cfg.gain_tx * cfg.gain_rx / loss);
}

double sinr(const CVec& g, const CVec& f_own, const std::vector<CVec>& f_others,
            double noise_power) {
    if (g.size() != f_own.size())
        throw InputError("sinr: dimension mismatch");
    if (noise_power <= 0.0)
        throw InputError("sinr: noise power must be positive");
    double signal = std::norm(g.dot(f_own)); // Eigen dot conjugates the left side
    double interference = 0.0;
    for (const CVec& f : f_others) {
        if (f.size() != g.size())
            throw InputError("sinr: interferer dimension mismatch");
        interference += std::norm(g.dot(f));
    }
    return signal / (interference + noise_power);
}

double normalize_sinr(double sinr_linear, double lo_db, double hi_db) {
    if (sinr_linear <= 0.0)
        return 0.0;
    double db = 10.0 * std::log10(sinr_linear);
    double clipped = std::min(std::max(db, lo_db), hi_db);
    return (clipped - lo_db) / (hi_db - lo_db);
}

ChannelRealization realize_channel(const Scenario& scenario, const UpaConfig& cfg, Rng& rng) {
    const int m = scenario.m_beams;
    ChannelRealization out;
    out.beams.reserve(m);
    out.sinr_linear.resize(m);
    out.sinr_norm.resize(m);

    Eigen::Vector3d ut3(scenario.ut_true(0), scenario.ut_true(1), 0.0);
    for (int i = 0; i < m; ++i) {
        Eigen::Vector3d sat = scenario.satellite_positions.row(i).transpose();
        Eigen::Vector3d to_ut = ut3 - sat;
        double slant = to_ut.norm();
        if (slant <= 0.0)
            throw DegenerateGeometryError("realize_channel: satellite coincides with UT");
        Eigen::Vector3d u = to_ut / slant;

        BeamChannel bc;
        bc.steering = upa_steering(u(0), u(1), cfg);
        double beta = path_gain(cfg, slant);
        double phi = rng.uniform(0.0, 2.0 * M_PI);
        bc.gain = std::polar(beta, phi);

        // Beamformer matched to the beam's own footprint center.
        Eigen::Vector3d center3(scenario.beam_centers(i, 0), scenario.beam_centers(i, 1), 0.0);
        Eigen::Vector3d to_center = center3 - sat;
        double cr = to_center.norm();
        Eigen::Vector3d uc = cr > 0.0 ? Eigen::Vector3d(to_center / cr) : Eigen::Vector3d(0, 0, -1);
        bc.beamformer = upa_steering(uc(0), uc(1), cfg);
        out.beams.push_back(std::move(bc));
    }

    for (int i = 0; i < m; ++i) {
        CVec g = out.beams[i].gain * out.beams[i].steering;
        std::vector<CVec> others;
        if (cfg.interference == InterferenceMode::co_channel) {
            others.reserve(m - 1);
            for (int k = 0; k < m; ++k)
                if (k != i)
                    others.push_back(out.beams[k].beamformer);
        }
        out.sinr_linear(i) = sinr(g, out.beams[i].beamformer, others, cfg.noise_power_w);
        out.sinr_norm(i) = normalize_sinr(out.sinr_linear(i), cfg);
    }
    return out;
}

} // namespace leobeam
