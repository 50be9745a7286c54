#include "leobeam/geometry.hpp"

#include <cmath>

namespace leobeam {

namespace {

constexpr double kCoincidentTol = 1e-12;
// UT draws closer than this to a beam center are rejected; a pseudorange
// anchor on top of the user breaks the linearization everywhere downstream.
constexpr double kMinUtAnchorDistance = 1.0;

} // namespace

Eigen::VectorXd los_unit_vector(const Eigen::VectorXd& x, const Eigen::VectorXd& c) {
    if (x.size() != c.size())
        throw InputError("los_unit_vector: dimension mismatch");
    Eigen::VectorXd d = x - c;
    double n = d.norm();
    if (n < kCoincidentTol)
        throw DegenerateGeometryError("los_unit_vector: coincident points");
    return d / n;
}

std::pair<double, double> bearing_features(const Eigen::VectorXd& x, const Eigen::VectorXd& c) {
    if (x.size() < 2 || c.size() < 2)
        throw InputError("bearing_features: need planar points");
    double dx = x(0) - c(0);
    double dy = x(1) - c(1);
    double n = std::hypot(dx, dy);
    if (n < kCoincidentTol)
        throw DegenerateGeometryError("bearing_features: coincident points");
    return {dy / n, dx / n}; // (sin, cos) of atan2(dy, dx)
}

Eigen::MatrixXd stacked_los_rows(const Eigen::MatrixXd& centers, const Eigen::VectorXd& x) {
    const int m = static_cast<int>(centers.rows());
    const int d = static_cast<int>(centers.cols());
    Eigen::MatrixXd rows(m, d);
    for (int i = 0; i < m; ++i)
        rows.row(i) = los_unit_vector(x, centers.row(i).transpose()).transpose();
    return rows;
}

Scenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed) {
    if (config.m_beams < 3)
        throw ConfigError("generate_scenario: m_beams must be >= 3 (d+1 anchors for planar positioning)");
    if (config.area_side_m <= 0.0)
        throw ConfigError("generate_scenario: area_side_m must be positive");
    if (config.clock_bias_max_m < config.clock_bias_min_m)
        throw ConfigError("generate_scenario: empty clock bias range");
    if (config.max_retries < 1)
        throw ConfigError("generate_scenario: max_retries must be >= 1");

    Rng rng(seed);
    const int m = config.m_beams;
    const double side = config.area_side_m;

    for (int attempt = 0; attempt < config.max_retries; ++attempt) {
        // Beam centers: sequential rejection against the separation rule.
        Eigen::MatrixXd centers(m, 2);
        bool placed = true;
        for (int i = 0; i < m && placed; ++i) {
            int tries = 0;
            for (;; ++tries) {
                if (tries >= 1000) { placed = false; break; }
                Eigen::Vector2d p(rng.uniform(0.0, side), rng.uniform(0.0, side));
                bool ok = true;
                for (int j = 0; j < i; ++j) {
                    if ((centers.row(j).transpose() - p).norm() < config.min_separation_m) {
                        ok = false;
                        break;
                    }
                }
                if (ok) { centers.row(i) = p.transpose(); break; }
            }
        }
        if (!placed)
            continue;

        Eigen::Vector2d ut(rng.uniform(0.0, side), rng.uniform(0.0, side));
        bool clear = true;
        for (int i = 0; i < m; ++i) {
            if ((centers.row(i).transpose() - ut).norm() < kMinUtAnchorDistance) {
                clear = false;
                break;
            }
        }
        if (!clear)
            continue;

        // Conditioning of the augmented geometry matrix at the truth.
        Eigen::MatrixXd h_aug(m, 3);
        h_aug.leftCols<2>() = stacked_los_rows(centers, ut);
        h_aug.col(2).setOnes();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(h_aug);
        double smin = svd.singularValues()(svd.singularValues().size() - 1);
        double smax = svd.singularValues()(0);
        if (smin <= 0.0 || smax / smin > config.max_condition)
            continue;

        Scenario s;
        s.beam_centers = centers;
        s.satellite_positions.resize(m, 3);
        for (int i = 0; i < m; ++i) {
            s.satellite_positions(i, 0) = centers(i, 0);
            s.satellite_positions(i, 1) = centers(i, 1);
            s.satellite_positions(i, 2) = config.satellite_altitude_m;
        }
        s.ut_true = ut;
        s.clock_bias_m = rng.uniform(config.clock_bias_min_m, config.clock_bias_max_m);
        s.area_side_m = side;
        s.m_beams = m;
        return s;
    }
    throw DegenerateGeometryError("generate_scenario: retry budget exhausted (separation or conditioning infeasible)");
}

} // namespace leobeam
