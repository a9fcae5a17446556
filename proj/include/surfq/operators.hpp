#pragma once

#include "surfq/grid.hpp"
#include "surfq/types.hpp"

#include <Eigen/Sparse>

namespace surfq {

using SpMat = Eigen::SparseMatrix<double>;

enum class Symmetry { none, self_adjoint, skew_adjoint };

/// Sparse operator on node-valued functions, stored in the similarity basis
/// psi_hat = W^{1/2} psi (W = diag of quadrature weights). In that basis
/// w-self-adjointness is plain matrix symmetry, so declared symmetry is exact
/// by construction and all inner products are the weighted ones:
/// <phi, A psi>_w = phi_hat . (A_hat psi_hat).
class DiscreteOperator {
public:
    DiscreteOperator() = default;
    DiscreteOperator(SpMat hat, Symmetry sym) : mat_(std::move(hat)), sym_(sym) {}

    const SpMat& matrix() const { return mat_; }
    Symmetry symmetry() const { return sym_; }
    Eigen::Index size() const { return mat_.rows(); }
    VecX apply(const VecX& hat_vec) const { return mat_ * hat_vec; }

private:
    SpMat mat_;
    Symmetry sym_ = Symmetry::none;
};

/// Divergence-form discretization of (1/sqrt g) d_a (sqrt g g^{ab} d_b):
/// compact fluxes with half-point coefficients for the diagonal metric terms
/// (exactly self-adjoint, constants in the kernel, zero flux through pole
/// faces where sqrt g vanishes) plus central 9-point cross terms when the
/// chart metric is non-orthogonal; symmetrized exactly in the hat basis.
DiscreteOperator laplace_beltrami(const SurfaceGrid& grid);

/// Real operator D_i with p_i = -i hbar D_i and
/// D_i psi = (grad_s psi)_i + (M/2) n_i psi.
/// Assembled in the skew-advective face form
///   (D_i psi)_node = [Gf(+)(psi_+1) - Gf(-)(psi_-1)] / (2 h sqrt g),
/// Gf = sqrt(g) g^{ab} (X_a)_i at half-point faces, summed over directions:
/// this is exactly w-skew (faces are shared) and the (M/2) n_i term emerges
/// from the divergence part rather than being added on, which keeps the
/// operator consistent through the pole rings.
DiscreteOperator geometric_momentum(const SurfaceGrid& grid, int axis);

/// H = -(hbar^2/2mu) Lap_LB + [include_vg] diag(V_G).
DiscreteOperator hamiltonian(const SurfaceGrid& grid, bool include_vg,
                             const PhysicalConstants& constants = {});

DiscreteOperator diagonal_operator(const SurfaceGrid& grid, const VecX& values);
/// Multiplication by (x - origin)_axis.
DiscreteOperator coordinate_operator(const SurfaceGrid& grid, int axis,
                                     const Vec3& origin = Vec3::Zero());
DiscreteOperator normal_operator(const SurfaceGrid& grid, int axis);

VecX geometric_potential_diagonal(const SurfaceGrid& grid, const PhysicalConstants& constants = {});

/// Commutator [X_axis, A] assembled entrywise as -(dx)_rc A_rc. The
/// coordinate difference follows the short chart path, which matters only on
/// charts where a coordinate function is multivalued across a periodic seam
/// (flat chart, cylinder axis); elsewhere it equals the literal composition
/// X A - A X.
DiscreteOperator coordinate_commutator(const SurfaceGrid& grid, int axis,
                                       const DiscreteOperator& a);

/// Node function -> hat vector and the w-norm of a hat vector.
VecX to_hat(const SurfaceGrid& grid, const VecX& node_values);
double hat_norm(const VecX& hat_vec);

/// Largest relative symmetry defect max |A + s A^T| / max|A| over entries
/// (s = -1 for self-adjoint, +1 for skew): a cheap structural check.
double symmetry_defect(const DiscreteOperator& op);

}  // namespace surfq
