#include "gfrisk/oracle.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gfrisk {

void SyntheticDesign::validate() const {
    const int dd = d();
    if (n < 1 || dd < 1 || dd > n)
        throw std::invalid_argument("design needs 1 <= d <= n");
    if (lambda_tilde.size() != dd || weights.size() != dd)
        throw std::invalid_argument("design spectra must share length d");
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("sigma2 must be > 0 (c > 0 required)");
    if (n_train < 1 || n_train > n)
        throw std::invalid_argument("n_train must lie in [1, n]");
    if (lambda_star.minCoeff() < 0.0 || lambda_tilde.minCoeff() < 0.0 ||
        weights.minCoeff() < 0.0)
        throw std::invalid_argument("spectra and weights must be >= 0");
    if (U) {
        if (U->rows() != n || U->cols() != n)
            throw std::invalid_argument("U must be n x n");
        const double defect =
            (U->transpose() * *U - Eigen::MatrixXd::Identity(n, n)).norm();
        if (defect > 1e-8 * n)
            throw std::invalid_argument("U must be orthonormal");
    }
    if (R && (R->rows() != dd || R->cols() != dd))
        throw std::invalid_argument("R must be d x d");
}

namespace {

Eigen::MatrixXd build_factor(const SyntheticDesign& design,
                             const Eigen::VectorXd& spectrum) {
    const int n = design.n, d = design.d();
    Eigen::MatrixXd ud = design.U
                             ? Eigen::MatrixXd(design.U->leftCols(d))
                             : Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, d));
    Eigen::MatrixXd M = ud * spectrum.cwiseSqrt().asDiagonal();
    if (design.R) M *= design.R->transpose();
    return M;
}

}  // namespace

Eigen::MatrixXd SyntheticDesign::teacher_matrix() const {
    return build_factor(*this, lambda_star);
}

Eigen::MatrixXd SyntheticDesign::student_matrix() const {
    return build_factor(*this, lambda_tilde);
}

OracleEstimate simulate_risk(const SyntheticDesign& design, long trials,
                             std::uint64_t rng_seed, EstimatorMode mode) {
    design.validate();
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");

    const int n = design.n, d = design.d();
    const double c = design.c();
    const Eigen::MatrixXd X = design.teacher_matrix();
    const Eigen::MatrixXd H = design.student_matrix();

    // Dual form: H theta_hat = H H^T (H H^T + c I)^-1 y; the projector is
    // fixed across trials, only y changes.
    Eigen::MatrixXd dual_projector;
    if (mode == EstimatorMode::Dual) {
        const Eigen::MatrixXd gram = H * H.transpose();
        dual_projector =
            gram * (gram + c * Eigen::MatrixXd::Identity(n, n)).ldlt().solve(
                       Eigen::MatrixXd::Identity(n, n));
    }

    std::mt19937_64 rng(rng_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double noise_sd = std::sqrt(design.sigma2);
    const double train_scale = static_cast<double>(n) / design.n_train;
    const Eigen::VectorXd prior_sd = design.weights.cwiseSqrt();

    std::vector<int> node_order(n);
    Eigen::VectorXd theta_star(d), eps_train(n), y(n), target(n);

    // Welford accumulation of the per-trial squared error.
    double mean = 0.0, m2 = 0.0;
    for (long t = 0; t < trials; ++t) {
        for (int i = 0; i < d; ++i) theta_star(i) = prior_sd(i) * gauss(rng);
        if (design.R) theta_star = (*design.R) * theta_star;

        eps_train.setZero();
        std::iota(node_order.begin(), node_order.end(), 0);
        for (int k = 0; k < design.n_train; ++k) {
            std::uniform_int_distribution<int> pick(k, n - 1);
            std::swap(node_order[k], node_order[pick(rng)]);
            eps_train(node_order[k]) = train_scale * noise_sd * gauss(rng);
        }

        target = X * theta_star;
        double trial_risk;
        if (mode == EstimatorMode::Dual) {
            y = target + eps_train;
            trial_risk = (dual_projector * y - target).squaredNorm();
        } else {
            // Primal ridge on the training rows only; this does not bake in
            // the population covariance substitution.
            Eigen::MatrixXd ht(design.n_train, d);
            Eigen::VectorXd yt(design.n_train);
            for (int k = 0; k < design.n_train; ++k) {
                const int node = node_order[k];
                ht.row(k) = H.row(node);
                yt(k) = target(node) + eps_train(node) / train_scale;
            }
            const Eigen::MatrixXd gram =
                ht.transpose() * ht +
                design.sigma2 * Eigen::MatrixXd::Identity(d, d);
            const Eigen::VectorXd theta_hat =
                gram.ldlt().solve(ht.transpose() * yt);
            trial_risk = (H * theta_hat - target).squaredNorm();
        }

        const double delta = trial_risk - mean;
        mean += delta / (t + 1);
        m2 += delta * (trial_risk - mean);
    }

    OracleEstimate est;
    est.mean_risk = mean;
    est.trials = trials;
    est.std_error =
        trials > 1 ? std::sqrt(m2 / (trials - 1) / trials) : 0.0;
    return est;
}

namespace {

// Group contribution to the isotropic-weight exact risk with a shared
// student value lt across the group's member products.
double group_objective(double lt, const std::vector<double>& prods, double c) {
    double r = 0.0;
    const double denom = lt + c;
    for (double p : prods)
        r += lt * c / denom - (lt - p) * c * c / (denom * denom);
    return r;
}

double golden_minimize(const std::vector<double>& prods, double c, double lo,
                       double hi, double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = group_objective(x1, prods, c);
    double f2 = group_objective(x2, prods, c);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = group_objective(x1, prods, c);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = group_objective(x2, prods, c);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

GroupOptimum brute_force_group_optimum(
    const std::vector<double>& lambda_star_w,
    const std::vector<std::vector<int>>& group_partition, double c,
    int grid_resolution) {
    if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");
    if (grid_resolution < 100)
        throw std::invalid_argument("grid_resolution must be >= 100");

    double max_p = 0.0;
    for (double p : lambda_star_w) max_p = std::max(max_p, p);
    const double hi = std::max(2.0 * max_p, 1e-12);

    GroupOptimum result;
    result.lambda_tilde.assign(lambda_star_w.size(), 0.0);
    for (const auto& group : group_partition) {
        if (group.empty()) throw std::invalid_argument("empty group in partition");
        std::vector<double> prods;
        for (int idx : group) {
            if (idx < 0 || idx >= static_cast<int>(lambda_star_w.size()))
                throw std::invalid_argument("group index out of range");
            prods.push_back(lambda_star_w[idx]);
        }

        // Coarse scan to bracket, then golden-section refinement.
        double best_x = 0.0, best_f = group_objective(0.0, prods, c);
        for (int k = 1; k <= grid_resolution; ++k) {
            const double x = hi * k / grid_resolution;
            const double f = group_objective(x, prods, c);
            if (f < best_f) {
                best_f = f;
                best_x = x;
            }
        }
        const double span = hi / grid_resolution;
        const double refined =
            golden_minimize(prods, c, std::max(0.0, best_x - span),
                            std::min(hi, best_x + span), 1e-12 * (1.0 + hi));
        for (int idx : group) result.lambda_tilde[idx] = refined;
        result.risk += group_objective(refined, prods, c);
    }
    return result;
}

double finite_difference_derivative(double lambda, double q, double c,
                                    double step) {
    if (!(step > 0.0)) throw std::invalid_argument("step must be > 0");

    const double a = lambda / 2.0;
    auto term = [a, c](double qq) {
        const double h = qq - (2.0 * qq - 1.0) * a;
        const double lt = (1.0 - a) * (1.0 - a) * h;
        const double denom = lt + c;
        return lt * c / denom - (lt - h) * c * c / (denom * denom);
    };

    const double q_lo = q - step, q_hi = q + step;
    if (q_lo >= 0.0 && q_hi <= 1.0)
        return (term(q_hi) - term(q_lo)) / (2.0 * step);
    if (q_hi <= 1.0) return (term(q_hi) - term(q)) / step;
    return (term(q) - term(q_lo)) / step;
}

}  // namespace gfrisk
