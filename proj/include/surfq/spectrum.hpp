#pragma once

#include "surfq/operators.hpp"
#include "surfq/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace surfq {

struct SpectrumResult {
    VecX eigenvalues;                  // ascending
    VecX residuals;                    // ||Hv - lambda v|| / (|lambda| + 1) per pair
    Eigen::MatrixXd eigenvectors;      // hat-basis columns, same order
    int iterations = 0;                // Lanczos steps taken
    double max_residual = 0.0;
    double shift = 0.0;
};

/// Lowest-k eigenpairs of a self-adjoint operator by shift-invert Lanczos
/// with full reorthogonalization. The shift is placed below the spectrum
/// (supplied, or bracketed by a short plain Lanczos run) so the factored
/// matrix is positive definite; eigenvalues nearest the shift converge in a
/// few dozen steps. Deterministic for a fixed seed.
SpectrumResult spectrum(const DiscreteOperator& op, int k, double tol,
                        std::uint64_t seed = 7,
                        std::optional<double> shift = std::nullopt,
                        int max_subspace = 280);

/// Groups eigenvalues into degenerate clusters separated by more than gap.
std::vector<std::pair<double, int>> cluster_eigenvalues(const VecX& eigenvalues, double gap);

}  // namespace surfq
