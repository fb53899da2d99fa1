#include "gfrisk/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gfrisk {

LaplacianMatrix normalized_laplacian(const Graph& g) {
    const int n = g.num_nodes();
    const auto deg = g.degrees();
    for (int i = 0; i < n; ++i)
        if (deg[i] == 0)
            throw std::invalid_argument("isolated node " + std::to_string(i) +
                                        ": normalized Laplacian undefined");

    Eigen::VectorXd dinv_sqrt(n);
    for (int i = 0; i < n; ++i) dinv_sqrt(i) = 1.0 / std::sqrt(double(deg[i]));

    Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
    for (const auto& [u, v] : g.edges()) {
        const double w = -dinv_sqrt(u) * dinv_sqrt(v);
        L(u, v) = w;
        L(v, u) = w;
    }
    L = 0.5 * (L + L.transpose()).eval();
    return LaplacianMatrix{std::move(L)};
}

Spectrum eigendecompose(const LaplacianMatrix& L, bool want_vectors) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.compute(L.entries, want_vectors ? Eigen::ComputeEigenvectors
                                           : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition did not converge");

    Spectrum s;
    s.eigenvalues = solver.eigenvalues();  // ascending by contract
    if (want_vectors) {
        Eigen::MatrixXd U = solver.eigenvectors();
        for (Eigen::Index j = 0; j < U.cols(); ++j) {
            Eigen::Index imax;
            U.col(j).cwiseAbs().maxCoeff(&imax);
            if (U(imax, j) < 0.0) U.col(j) = -U.col(j);
        }
        s.eigenvectors = std::move(U);
    }
    return s;
}

double spectral_symmetry_defect(const Spectrum& s) {
    const int n = s.n();
    if (n == 0) throw std::invalid_argument("empty spectrum");
    const double lmax = s.lambda_max();
    double defect = 0.0;
    for (int i = 0; i < n; ++i)
        defect = std::max(defect,
                          std::abs(s.eigenvalues(i) + s.eigenvalues(n - 1 - i) - lmax));
    return defect;
}

MultiplicityProfile multiplicity_profile(const Spectrum& s, double tol) {
    MultiplicityProfile profile;
    const int n = s.n();
    int i = 0;
    while (i < n) {
        MultiplicityGroup group;
        group.representative = s.eigenvalues(i);
        group.indices.push_back(i);
        int j = i + 1;
        while (j < n && std::abs(s.eigenvalues(j) - s.eigenvalues(j - 1)) <= tol) {
            group.indices.push_back(j);
            ++j;
        }
        profile.groups.push_back(std::move(group));
        i = j;
    }
    return profile;
}

double default_multiplicity_tol(const Spectrum& s) {
    return 1e-8 * std::max(1.0, s.lambda_max());
}

}  // namespace gfrisk
