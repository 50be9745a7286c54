#include "leobeam/estimator.hpp"

#include <cmath>

#include "leobeam/measurement.hpp"

namespace leobeam {

namespace {

void check_finite(const Eigen::VectorXd& v, const char* what) {
    if (!v.allFinite())
        throw InputError(std::string("non-finite values in ") + what);
}

} // namespace

WeightVector WeightVector::normalized(const Eigen::VectorXd& raw) {
    if (!raw.allFinite() || (raw.array() < 0.0).any())
        throw InputError("WeightVector: weights must be finite and nonnegative");
    double s = raw.sum();
    if (s <= 0.0)
        throw InputError("WeightVector: weight sum must be positive");
    return WeightVector{raw / s};
}

bool WeightVector::valid(double tol) const {
    if (!values.allFinite())
        return false;
    if ((values.array() < -tol).any() || (values.array() > 1.0 + tol).any())
        return false;
    return std::abs(values.sum() - 1.0) <= tol;
}

WlsStep wls_step(const Eigen::VectorXd& z, const Eigen::MatrixXd& centers,
                 const Eigen::VectorXd& w, const Eigen::VectorXd& x0, double b0,
                 double ridge) {
    const int m = static_cast<int>(centers.rows());
    const int d = static_cast<int>(centers.cols());
    if (z.size() != m || w.size() != m || x0.size() != d)
        throw InputError("wls_step: dimension mismatch");
    check_finite(z, "z");
    check_finite(w, "weights");
    check_finite(x0, "x0");
    if (!std::isfinite(b0) || !std::isfinite(ridge))
        throw InputError("wls_step: non-finite scalar input");
    if (ridge < 0.0)
        throw InputError("wls_step: ridge must be >= 0");

    Eigen::MatrixXd h = linearize(x0, centers); // throws on coincident anchor
    Eigen::VectorXd dz(m);
    for (int i = 0; i < m; ++i)
        dz(i) = z(i) - (x0 - centers.row(i).transpose()).norm() - b0;

    Eigen::MatrixXd a = h.transpose() * w.asDiagonal() * h;
    a.diagonal().array() += ridge;
    Eigen::VectorXd g = h.transpose() * (w.asDiagonal() * dz);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
    double emin = eig.eigenvalues()(0);
    double emax = eig.eigenvalues()(d);
    if (ridge == 0.0 && (emin <= 0.0 || emin <= 1e-12 * std::max(emax, 1.0)))
        throw RankDeficiencyError("wls_step: singular normal matrix (lambda = 0)");

    WlsStep step;
    step.update = a.ldlt().solve(g);
    step.x = x0 + step.update.head(d);
    step.b = b0 + step.update(d);
    step.condition = emin > 0.0 ? emax / emin : std::numeric_limits<double>::infinity();
    return step;
}

WlsSolution wls_solve(const Eigen::VectorXd& z, const Eigen::MatrixXd& centers,
                      const Eigen::VectorXd& w, const Eigen::VectorXd& x_init,
                      double b_init, const WlsOptions& opt) {
    if (opt.max_iter < 1)
        throw InputError("wls_solve: max_iter must be >= 1");
    if (opt.tol_m <= 0.0)
        throw InputError("wls_solve: tol_m must be positive");

    const int m = static_cast<int>(centers.rows());
    Eigen::VectorXd x = x_init;
    double b = b_init;

    WlsSolution sol;
    for (int it = 0; it < opt.max_iter; ++it) {
        WlsStep step = wls_step(z, centers, w, x, b, opt.ridge);
        double un = step.update.norm();
        if (un > 10.0 * opt.scene_scale_m)
            throw DivergenceError("wls_solve: update exceeded 10x scene scale");
        x = step.x;
        b = step.b;
        sol.iterations = it + 1;
        sol.condition_estimate = step.condition;
        sol.last_update_norm = un;
        if (un < opt.tol_m)
            break;
    }

    sol.position = x;
    sol.clock_bias = b;
    sol.residuals.resize(m);
    for (int i = 0; i < m; ++i)
        sol.residuals(i) = z(i) - (x - centers.row(i).transpose()).norm() - b;
    return sol;
}

double positioning_error(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x_true) {
    if (x_hat.size() != x_true.size())
        throw InputError("positioning_error: dimension mismatch");
    return (x_hat - x_true).norm();
}

double crlb_position(const Eigen::MatrixXd& centers, const Eigen::VectorXd& x_true,
                     const Eigen::VectorXd& sigmas) {
    const int m = static_cast<int>(centers.rows());
    const int d = static_cast<int>(centers.cols());
    if (sigmas.size() != m)
        throw InputError("crlb_position: sigmas length mismatch");
    if ((sigmas.array() <= 0.0).any())
        throw InputError("crlb_position: sigmas must be positive");

    Eigen::MatrixXd h = linearize(x_true, centers);
    Eigen::VectorXd inv_var = sigmas.array().square().inverse();
    Eigen::MatrixXd fisher = h.transpose() * inv_var.asDiagonal() * h;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(fisher);
    if (!lu.isInvertible())
        throw DegenerateGeometryError("crlb_position: singular Fisher information");
    Eigen::MatrixXd cov = lu.inverse();
    return cov.topLeftCorner(d, d).trace();
}

} // namespace leobeam
