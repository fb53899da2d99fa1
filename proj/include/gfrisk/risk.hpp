#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gfrisk/filters.hpp"

namespace gfrisk {

/// The triple (student spectrum, teacher spectrum, prior weights) plus the
/// noise ratio c = n sigma^2 / n_train that determines the exact risk.
struct RiskProblem {
    std::vector<double> lambda_tilde;
    std::vector<double> lambda_star;
    std::vector<double> weights;
    double c = 1.0;

    void validate() const;
    int dim() const { return static_cast<int>(lambda_tilde.size()); }
};

/// Exact generalisation error:
///   sum_i [ lt_i c / (lt_i + c) - (lt_i - ls_i w_i) c^2 / (lt_i + c)^2 ].
double risk_exact(const RiskProblem& p);

/// Isotropic-prior specialization with the explicit zero-mode split:
///   sum_{lt_i = 0} ls_i
///   + sum_{lt_i > 0} [ lt_i c/(lt_i+c) - (lt_i - ls_i) c^2/(lt_i+c)^2 ].
/// Zero detection uses lt_i <= 1e-12 * max lt.
double risk_isotropic(const std::vector<double>& lambda_tilde,
                      const std::vector<double>& lambda_star, double c);

/// Tr((I - P_H) X X^T) with P_H the orthogonal projector onto col(H),
/// computed via SVD with singular-value cutoff 1e-10 * sigma_max.
double misalignment(const Eigen::MatrixXd& H, const Eigen::MatrixXd& X);

/// misalignment / ||X||_F^2, in [0, 1].
double normalized_misalignment(const Eigen::MatrixXd& H,
                               const Eigen::MatrixXd& X);

/// Homophily-parameterised teacher spectrum h*(lambda) = q - (2q-1) lambda / 2.
double homophily_spectrum(double lambda, double q);

/// Per-eigenvalue average isotropic risk over a q grid: the teacher is the
/// homophily spectrum, the student uses the grid-normalized squared response.
std::vector<double> risk_homophily_sweep(const FilterSpec& spec,
                                         const std::vector<double>& eigenvalues,
                                         const std::vector<double>& q_grid,
                                         double c, const GraphContext& ctx);

/// Closed-form d/dq of the per-eigenvalue GCN risk term (normalized filter
/// g = 1 - lambda/2, teacher/feature from the homophily spectrum), as a
/// rational function of a = lambda/2.
double risk_derivative_q(double lambda, double q, double c);

/// Sign of dR/dq(a) + dR/dq(1-a) for the reflection-paired eigenvalues of a
/// symmetric spectrum with lambda_max = 2; -1, 0, or +1.
int symmetric_pair_derivative_sign(double a, double q, double c);
double symmetric_pair_derivative_sum(double a, double q, double c);

/// One multiplicity group: shared teacher eigenvalue and per-member weights.
struct EigenGroup {
    double lambda_star = 0.0;
    std::vector<double> weights;

    /// lambda_star * w for each member.
    std::vector<double> products() const;
};

/// Risk-optimal student spectrum under the group-constant constraint: each
/// member of a group gets the group mean of lambda_star * w (singletons get
/// the product itself, the unconstrained optimum).
std::vector<double> gat_optimal_spectrum(const std::vector<EigenGroup>& groups,
                                         double c);

/// Risk gap between the group-constant and per-index optimal filters,
/// summed over groups of size >= 2 with unequal member products. Always >= 0.
double gat_specformer_gap(const std::vector<EigenGroup>& groups, double c);

struct PowerLawProfile {
    double a;  // teacher decay, > 1
    double b;  // aligned-signal decay, 1 < b < 1 + 2a
    int d;     // number of modes
    double c;  // noise ratio

    void validate() const;
};

enum class PowerLawModel { GNN, MLP };

/// Finite power-law risk sums:
///   GNN: sum i^{-b} c / (i^{-b} + c)
///   MLP: sum i^{-a} c/(i^{-a}+c) - sum i^{-a} c^2/(i^{-a}+c)^2
///        + sum i^{-b} c^2/(i^{-a}+c)^2
double powerlaw_risk_sum(const PowerLawProfile& p, PowerLawModel model);

/// Small-c scaling exponent of the risk: (b-1)/b for the GNN; for the MLP
/// the larger of the two candidate terms c^{(a-1)/a} and c^{(b-1)/a}
/// dominates as c -> 0, so the exponent is min{(a-1)/a, (b-1)/a}.
double powerlaw_asymptotic_exponent(const PowerLawProfile& p,
                                    PowerLawModel model);

}  // namespace gfrisk
