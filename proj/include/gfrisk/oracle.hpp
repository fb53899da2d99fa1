#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "gfrisk/risk.hpp"

namespace gfrisk {

/// Fixed-design teacher/student simulation setup. X and H are built as
/// U diag(sqrt lambda) R^T from the first d columns of an orthonormal U and
/// an optional d x d orthogonal rotation R (identity by default).
struct SyntheticDesign {
    int n = 0;
    Eigen::VectorXd lambda_star;   // length d
    Eigen::VectorXd lambda_tilde;  // length d
    Eigen::VectorXd weights;       // length d; all-ones = isotropic prior
    double sigma2 = 1.0;
    int n_train = 1;
    std::optional<Eigen::MatrixXd> U;  // n x n orthonormal; identity if absent
    std::optional<Eigen::MatrixXd> R;  // d x d orthogonal prior rotation

    int d() const { return static_cast<int>(lambda_star.size()); }
    double c() const { return n * sigma2 / n_train; }
    void validate() const;

    Eigen::MatrixXd teacher_matrix() const;  // X, n x d
    Eigen::MatrixXd student_matrix() const;  // H, n x d
};

struct OracleEstimate {
    double mean_risk = 0.0;
    double std_error = 0.0;
    long trials = 0;
};

enum class EstimatorMode {
    Dual,    // H^T (H H^T + c I)^-1 applied to X theta* + eps_train
    Primal,  // (H_train^T H_train + sigma^2 I)^-1 H_train^T y_train
};

/// Monte Carlo estimate of the generalisation error. Per trial: draw theta*
/// from the (possibly rotated) diagonal Gaussian prior, noise, and a uniform
/// train subset; fit the estimator; accumulate ||H theta_hat - X theta*||^2.
/// Deterministic per (seed, trials, design).
OracleEstimate simulate_risk(const SyntheticDesign& design, long trials,
                             std::uint64_t rng_seed,
                             EstimatorMode mode = EstimatorMode::Dual);

struct GroupOptimum {
    std::vector<double> lambda_tilde;
    double risk = 0.0;
};

/// Minimizes the exact isotropic-weight risk over the student spectrum
/// constrained constant within each group (pass singleton groups for the
/// unconstrained per-index optimum). Coarse scan at grid_resolution points
/// followed by golden-section refinement on [0, 2 max(lambda_star_w)].
GroupOptimum brute_force_group_optimum(
    const std::vector<double>& lambda_star_w,
    const std::vector<std::vector<int>>& group_partition, double c,
    int grid_resolution = 200);

/// Central finite difference in q of the single-eigenvalue homophily risk
/// term (normalized GCN student); falls back to one-sided at the q borders.
double finite_difference_derivative(double lambda, double q, double c,
                                    double step);

}  // namespace gfrisk
