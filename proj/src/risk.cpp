#include "gfrisk/risk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gfrisk {

void RiskProblem::validate() const {
    if (lambda_tilde.size() != lambda_star.size() ||
        lambda_tilde.size() != weights.size())
        throw std::invalid_argument("risk problem sequences must share length");
    if (!(c > 0.0)) throw std::invalid_argument("noise ratio c must be > 0");
    auto finite_nonneg = [](const std::vector<double>& v) {
        for (double x : v)
            if (!std::isfinite(x) || x < 0.0) return false;
        return true;
    };
    if (!finite_nonneg(lambda_tilde) || !finite_nonneg(lambda_star) ||
        !finite_nonneg(weights))
        throw std::invalid_argument("risk problem entries must be finite and >= 0");
}

double risk_exact(const RiskProblem& p) {
    p.validate();
    double r = 0.0;
    for (int i = 0; i < p.dim(); ++i) {
        const double lt = p.lambda_tilde[i];
        const double lsw = p.lambda_star[i] * p.weights[i];
        const double denom = lt + p.c;
        r += lt * p.c / denom - (lt - lsw) * p.c * p.c / (denom * denom);
    }
    return r;
}

double risk_isotropic(const std::vector<double>& lambda_tilde,
                      const std::vector<double>& lambda_star, double c) {
    if (lambda_tilde.size() != lambda_star.size())
        throw std::invalid_argument("spectrum lengths differ");
    if (!(c > 0.0)) throw std::invalid_argument("noise ratio c must be > 0");

    double max_lt = 0.0;
    for (double lt : lambda_tilde) max_lt = std::max(max_lt, lt);
    const double zero_cut = 1e-12 * max_lt;

    double r = 0.0;
    for (std::size_t i = 0; i < lambda_tilde.size(); ++i) {
        const double lt = lambda_tilde[i];
        const double ls = lambda_star[i];
        if (lt <= zero_cut) {
            r += ls;
        } else {
            const double denom = lt + c;
            r += lt * c / denom - (lt - ls) * c * c / (denom * denom);
        }
    }
    return r;
}

double misalignment(const Eigen::MatrixXd& H, const Eigen::MatrixXd& X) {
    if (H.rows() != X.rows())
        throw std::invalid_argument("H and X must share row count");

    const double total = X.squaredNorm();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(H, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return total;  // col(H) = {0}

    const double cutoff = 1e-10 * sv(0);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;

    // Tr((I - P_H) X X^T) = ||X||_F^2 - ||U_r^T X||_F^2
    const double projected =
        (svd.matrixU().leftCols(rank).transpose() * X).squaredNorm();
    return std::max(0.0, total - projected);
}

double normalized_misalignment(const Eigen::MatrixXd& H,
                               const Eigen::MatrixXd& X) {
    const double total = X.squaredNorm();
    if (total == 0.0) throw std::invalid_argument("X must be nonzero");
    return misalignment(H, X) / total;
}

double homophily_spectrum(double lambda, double q) {
    // tolerate eigensolver round-off just outside the nominal interval
    if (lambda < -1e-9 || lambda > 2.0 + 1e-9)
        throw std::invalid_argument("lambda must be in [0, 2]");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must be in [0, 1]");
    lambda = std::min(2.0, std::max(0.0, lambda));
    return q - (2.0 * q - 1.0) * lambda / 2.0;
}

std::vector<double> risk_homophily_sweep(const FilterSpec& spec,
                                         const std::vector<double>& eigenvalues,
                                         const std::vector<double>& q_grid,
                                         double c, const GraphContext& ctx) {
    if (eigenvalues.empty()) throw std::invalid_argument("empty eigenvalue grid");
    const double n = static_cast<double>(eigenvalues.size());

    std::vector<double> out;
    out.reserve(q_grid.size());
    for (double q : q_grid) {
        auto teacher = [q](double lambda) { return homophily_spectrum(lambda, q); };
        auto tilde = effective_spectrum(spec, eigenvalues, teacher, ctx,
                                        /*normalized=*/true,
                                        /*allow_nonzero_f0=*/true);
        std::vector<double> star(eigenvalues.size());
        for (std::size_t i = 0; i < eigenvalues.size(); ++i)
            star[i] = teacher(eigenvalues[i]);
        out.push_back(risk_isotropic(tilde, star, c) / n);
    }
    return out;
}

double risk_derivative_q(double lambda, double q, double c) {
    if (lambda < 0.0 || lambda > 2.0)
        throw std::invalid_argument("lambda must be in [0, 2]");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must be in [0, 1]");
    if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");

    const double a = lambda / 2.0;
    const double a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a;
    const double num =
        (-1.0 + 2.0 * a) * c * c *
        (-c + a2 * (6.0 - 23.0 * q) + a4 * (8.0 - 18.0 * q) - q +
         a5 * (-2.0 + 4.0 * q) + a * (-1.0 + 8.0 * q) +
         a3 * (-11.0 + 30.0 * q));
    // denominator base equals lambda_tilde + c with
    // lambda_tilde = (1-a)^2 (q - (2q-1) a)
    const double base = a + c + a3 * (1.0 - 2.0 * q) + q - 4.0 * a * q +
                        a2 * (-2.0 + 5.0 * q);
    if (base <= 0.0) throw std::domain_error("derivative denominator <= 0");
    return num / (base * base * base);
}

double symmetric_pair_derivative_sum(double a, double q, double c) {
    return risk_derivative_q(2.0 * a, q, c) +
           risk_derivative_q(2.0 * (1.0 - a), q, c);
}

int symmetric_pair_derivative_sign(double a, double q, double c) {
    const double s = symmetric_pair_derivative_sum(a, q, c);
    return (s > 0.0) - (s < 0.0);
}

std::vector<double> EigenGroup::products() const {
    std::vector<double> p;
    p.reserve(weights.size());
    for (double w : weights) p.push_back(lambda_star * w);
    return p;
}

std::vector<double> gat_optimal_spectrum(const std::vector<EigenGroup>& groups,
                                         double c) {
    if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");
    std::vector<double> tilde;
    for (const auto& g : groups) {
        if (g.weights.empty()) throw std::invalid_argument("empty eigen group");
        const auto prods = g.products();
        double mean = 0.0;
        for (double p : prods) mean += p;
        mean /= prods.size();
        tilde.insert(tilde.end(), prods.size(), mean);
    }
    return tilde;
}

namespace {

bool unequal_products(const std::vector<double>& prods) {
    const auto [lo, hi] = std::minmax_element(prods.begin(), prods.end());
    return (*hi - *lo) > 1e-9 * std::max(1.0, std::abs(*hi));
}

}  // namespace

double gat_specformer_gap(const std::vector<EigenGroup>& groups, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");
    double gap = 0.0;
    for (const auto& g : groups) {
        if (g.weights.size() < 2) continue;
        const auto prods = g.products();
        if (!unequal_products(prods)) continue;

        double sum = 0.0;
        for (double p : prods) sum += p;
        const double mean = sum / prods.size();
        double term = sum * c / (mean + c);
        for (double p : prods) term -= p * c / (p + c);
        gap += term;
    }
    return gap;
}

void PowerLawProfile::validate() const {
    if (!(a > 1.0)) throw std::invalid_argument("power-law exponent a must be > 1");
    if (!(b > 1.0)) throw std::invalid_argument("power-law exponent b must be > 1");
    if (!(b < 1.0 + 2.0 * a))
        throw std::invalid_argument("power-law exponent b must satisfy b < 1 + 2a");
    if (d < 1) throw std::invalid_argument("dimension d must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");
}

double powerlaw_risk_sum(const PowerLawProfile& p, PowerLawModel model) {
    p.validate();
    double r = 0.0;
    for (int i = 1; i <= p.d; ++i) {
        const double ia = std::pow(static_cast<double>(i), -p.a);
        const double ib = std::pow(static_cast<double>(i), -p.b);
        if (model == PowerLawModel::GNN) {
            r += ib * p.c / (ib + p.c);
        } else {
            const double denom = ia + p.c;
            r += ia * p.c / denom - ia * p.c * p.c / (denom * denom) +
                 ib * p.c * p.c / (denom * denom);
        }
    }
    return r;
}

double powerlaw_asymptotic_exponent(const PowerLawProfile& p,
                                    PowerLawModel model) {
    p.validate();
    if (model == PowerLawModel::GNN) return (p.b - 1.0) / p.b;
    // R_MLP ~ max{c^{(a-1)/a}, c^{(b-1)/a}}: as c -> 0 the term with the
    // smaller exponent dominates the max.
    return std::min((p.a - 1.0) / p.a, (p.b - 1.0) / p.a);
}

}  // namespace gfrisk
