#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gfrisk/graph.hpp"

namespace gfrisk {

/// Symmetric normalized Laplacian L = I - D^{-1/2} A D^{-1/2}.
struct LaplacianMatrix {
    Eigen::MatrixXd entries;
    int n() const { return static_cast<int>(entries.rows()); }
};

/// Eigendecomposition of a LaplacianMatrix, eigenvalues ascending.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    std::optional<Eigen::MatrixXd> eigenvectors;  // columns match eigenvalue order
    double lambda_max() const { return eigenvalues(eigenvalues.size() - 1); }
    int n() const { return static_cast<int>(eigenvalues.size()); }
};

struct MultiplicityGroup {
    double representative;       // first eigenvalue of the group
    std::vector<int> indices;    // 0-based positions in the ascending spectrum
};

struct MultiplicityProfile {
    std::vector<MultiplicityGroup> groups;
};

/// Requires every degree >= 1 (D^{-1/2} undefined otherwise); the result is
/// symmetrized by averaging with its transpose.
LaplacianMatrix normalized_laplacian(const Graph& g);

/// Dense symmetric eigensolver. Eigenvector signs are fixed by making the
/// largest-magnitude entry of each column positive.
Spectrum eigendecompose(const LaplacianMatrix& L, bool want_vectors);

/// max_i |lambda_i + lambda_{n+1-i} - lambda_max|; zero iff the spectrum is
/// closed under lambda -> lambda_max - lambda.
double spectral_symmetry_defect(const Spectrum& s);

/// Greedy grouping of consecutive ascending eigenvalues within tol.
MultiplicityProfile multiplicity_profile(const Spectrum& s, double tol);

/// Default grouping tolerance: 1e-8 * max(1, lambda_max).
double default_multiplicity_tol(const Spectrum& s);

}  // namespace gfrisk
