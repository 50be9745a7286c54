#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "leobeam/errors.hpp"
#include "leobeam/geometry.hpp"
#include "leobeam/rng.hpp"

namespace leobeam {

using CVec = Eigen::VectorXcd;

enum class InterferenceMode {
    none,      ///< per-beam link quality is plain SNR (no frequency reuse)
    co_channel ///< every other beam's pilot interferes
};

struct UpaConfig {
    int n_x = 4;
    int n_y = 4;
    double carrier_hz = 2.0e9;
    double gain_tx = 10.0;
    double gain_rx = 1.0;
    double noise_power_w = 1.0e-12;
    double sinr_norm_lo_db = -10.0;
    double sinr_norm_hi_db = 30.0;
    InterferenceMode interference = InterferenceMode::none;
};

/// Per-beam channel realization: complex gain beta*e^{j phi}, transmit
/// steering toward the UT, and the beam's own (footprint-matched) beamformer.
struct BeamChannel {
    std::complex<double> gain;
    CVec steering;
    CVec beamformer;
};

struct ChannelRealization {
    std::vector<BeamChannel> beams;
    Eigen::VectorXd sinr_linear;
    Eigen::VectorXd sinr_norm;
};

/// 1-D uniform linear array response: k-th entry e^{-j pi k theta} / sqrt(n).
CVec steering_1d(double theta, int n);

/// UPA response as the Kronecker product a_x(theta_x) (x) a_y(theta_y).
CVec upa_steering(double theta_x, double theta_y, const UpaConfig& cfg);

/// Free-space amplitude gain beta = sqrt(G_t G_r / L), L = (4 pi f_c d / c)^2.
double path_gain(const UpaConfig& cfg, double slant_range_m);

/// |g^H f_own|^2 / (sum_k |g^H f_k|^2 + noise_power).
double sinr(const CVec& g, const CVec& f_own, const std::vector<CVec>& f_others,
            double noise_power);

/// Clips 10*log10(sinr) to [lo_db, hi_db] and maps affinely onto [0, 1].
/// Zero (or negative) input maps to 0.
double normalize_sinr(double sinr_linear, double lo_db, double hi_db);
inline double normalize_sinr(double sinr_linear, const UpaConfig& cfg) {
    return normalize_sinr(sinr_linear, cfg.sinr_norm_lo_db, cfg.sinr_norm_hi_db);
}

/// Realizes the per-episode channel for a scenario: random pilot phases,
/// steering from each satellite toward the UT (direction cosines from the
/// projection of the satellite->UT unit vector onto the array axes), and
/// footprint-matched beamformers. Consumes one phase draw per beam.
ChannelRealization realize_channel(const Scenario& scenario, const UpaConfig& cfg, Rng& rng);

} // namespace leobeam
