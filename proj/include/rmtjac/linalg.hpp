#pragma once

#include <vector>

#include "rmtjac/field_matrix.hpp"

namespace rmtjac {

FieldMatrix conj_transpose(const FieldMatrix& m);

/// Plain transpose; only meaningful for real and complex fields.
FieldMatrix transpose(const FieldMatrix& m);

/// A^D = Z A^T Z^{-1} for a square quaternion matrix.
FieldMatrix quaternion_dual(const FieldMatrix& m);

struct QrFactors {
  FieldMatrix q;
  FieldMatrix r;
};

/// QR with R's diagonal forced real and positive, so Q of a Ginibre draw is
/// Haar distributed. Real and complex inputs use Householder reflections;
/// quaternion inputs use a block Gram-Schmidt that keeps Q in quaternion form.
/// Throws SingularityError when a diagonal entry of R falls below 1e-300.
QrFactors qr_unitary(const FieldMatrix& m);

struct HermitianSpectrum {
  Eigen::VectorXd eigenvalues;  // ascending, complex-representation count
  FieldMatrix eigenvectors;     // columns; complex field for quaternion input
};

/// Relative Hermiticity residual ||M - M^dagger||_F / ||M||_F (0 for M = 0).
double hermiticity_residual(const CMatrix& m);

/// Eigendecomposition of a Hermitian matrix. Rejects input whose relative
/// Hermiticity residual exceeds 1e-8. Quaternion input yields each eigenvalue
/// twice (Kramers pairs); use kramers_deduplicate for distinct values.
HermitianSpectrum hermitian_eig(const FieldMatrix& m);

/// Eigenvalues only, ascending. Same preconditions as hermitian_eig.
Eigen::VectorXd hermitian_eigenvalues(const FieldMatrix& m);
Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m);

/// M^{-1/2} through the eigendecomposition. Throws SingularityError if the
/// smallest eigenvalue is below relative_floor * ||M||_2.
FieldMatrix psd_sqrt_inv(const FieldMatrix& m, double relative_floor = 1e-12);

/// Largest gap inside consecutive pairs (e_1, e_2), (e_3, e_4), ... of a sorted
/// list of even length.
double kramers_split(const Eigen::VectorXd& sorted);

/// Collapses consecutive pairs of a sorted spectrum to their midpoints.
/// Throws StructureError if any pair is split by more than tolerance.
std::vector<double> kramers_deduplicate(const Eigen::VectorXd& sorted, double tolerance = 1e-8);

/// ||Q^dagger Q - I||_F.
double unitarity_residual(const CMatrix& q);

}  // namespace rmtjac
