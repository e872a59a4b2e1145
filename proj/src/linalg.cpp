#include "rmtjac/linalg.hpp"

#include <cmath>
#include <string>
#include <type_traits>

#include "rmtjac/errors.hpp"

namespace rmtjac {

namespace {

constexpr double kRankFloor = 1e-300;
constexpr double kHermitianTolerance = 1e-8;

template <typename T>
T conj_of(T x) {
  if constexpr (std::is_floating_point_v<T>) {
    return x;
  } else {
    return std::conj(x);
  }
}

// Householder QR followed by the diagonal phase fix R_ii > 0.
template <typename Matrix>
void householder_qr(const Matrix& m, Matrix& q, Matrix& r) {
  Eigen::HouseholderQR<Matrix> qr(m);
  const Index n = m.rows();
  q = qr.householderQ() * Matrix::Identity(n, n);
  r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const auto d = r(i, i);
    const double mag = std::abs(d);
    if (!(mag >= kRankFloor)) {
      throw SingularityError("rank-deficient matrix in QR (|R_ii| = " + std::to_string(mag) + ")");
    }
    const auto phase = d / mag;
    q.col(i) *= phase;
    r.row(i) *= conj_of(phase);
    r(i, i) = mag;
  }
}

// Gram-Schmidt over quaternion columns, twice per column. Only the first
// complex column of each pair is orthogonalised; the second follows from the
// block form (w, -conj(x)) -> (x, conj(w)) and is automatically orthogonal.
void quaternion_qr(const CMatrix& m, CMatrix& q, CMatrix& r) {
  const Index n = m.rows();
  q.setZero(n, n);
  for (Index k = 0; k < n; k += 2) {
    Eigen::VectorXcd v = m.col(k);
    for (int pass = 0; pass < 2 && k > 0; ++pass) {
      const Eigen::VectorXcd coeff = q.leftCols(k).adjoint() * v;
      v.noalias() -= q.leftCols(k) * coeff;
    }
    const double norm = v.norm();
    if (!(norm >= kRankFloor)) {
      throw SingularityError("rank-deficient quaternion matrix in QR");
    }
    v /= norm;
    q.col(k) = v;
    for (Index i = 0; i < n; i += 2) {
      q(i, k + 1) = -std::conj(v(i + 1));
      q(i + 1, k + 1) = std::conj(v(i));
    }
  }
  r = q.adjoint() * m;
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) r(i, j) = 0.0;
    r(j, j) = r(j, j).real();
  }
}

void require_hermitian(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw PreconditionError("Hermitian eigenproblem needs a square matrix");
  }
  const double residual = hermiticity_residual(m);
  if (residual > kHermitianTolerance) {
    throw PreconditionError("matrix is not Hermitian (relative residual " +
                            std::to_string(residual) + ")");
  }
}

bool is_real(const CMatrix& m) { return (m.array().imag() == 0.0).all(); }

}  // namespace

FieldMatrix conj_transpose(const FieldMatrix& m) {
  return FieldMatrix(m.beta(), m.data().adjoint());
}

FieldMatrix transpose(const FieldMatrix& m) {
  if (m.beta() == Beta::Quaternion) {
    throw PreconditionError("plain transpose does not preserve quaternion form; use quaternion_dual");
  }
  return FieldMatrix(m.beta(), m.data().transpose());
}

FieldMatrix quaternion_dual(const FieldMatrix& m) {
  if (m.beta() != Beta::Quaternion) {
    throw PreconditionError("quaternion dual requires a quaternion matrix");
  }
  if (!m.is_square()) {
    throw PreconditionError("quaternion dual requires a square matrix");
  }
  return FieldMatrix(Beta::Quaternion, symplectic_dual(m.data()));
}

QrFactors qr_unitary(const FieldMatrix& m) {
  if (!m.is_square()) {
    throw PreconditionError("qr_unitary requires a square matrix");
  }
  switch (m.beta()) {
    case Beta::Real: {
      Eigen::MatrixXd q, r;
      householder_qr<Eigen::MatrixXd>(m.data().real(), q, r);
      return {FieldMatrix(Beta::Real, q.cast<Complex>()), FieldMatrix(Beta::Real, r.cast<Complex>())};
    }
    case Beta::Complex: {
      CMatrix q, r;
      householder_qr<CMatrix>(m.data(), q, r);
      return {FieldMatrix(Beta::Complex, std::move(q)), FieldMatrix(Beta::Complex, std::move(r))};
    }
    case Beta::Quaternion: {
      CMatrix q, r;
      quaternion_qr(m.data(), q, r);
      return {FieldMatrix(Beta::Quaternion, std::move(q)),
              FieldMatrix(Beta::Quaternion, std::move(r))};
    }
  }
  throw PreconditionError("unknown field");
}

double hermiticity_residual(const CMatrix& m) {
  const double norm = m.norm();
  if (norm == 0.0) return 0.0;
  return (m - m.adjoint()).norm() / norm;
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m) {
  require_hermitian(m);
  if (is_real(m)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Eigen::VectorXd hermitian_eigenvalues(const FieldMatrix& m) {
  return hermitian_eigenvalues(m.data());
}

HermitianSpectrum hermitian_eig(const FieldMatrix& m) {
  require_hermitian(m.data());
  if (m.beta() == Beta::Real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.data().real());
    return {solver.eigenvalues(), FieldMatrix(Beta::Real, solver.eigenvectors().cast<Complex>())};
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m.data());
  // Degenerate Kramers subspaces come back in an arbitrary basis, so the
  // eigenvectors of quaternion input are reported over the complex field.
  return {solver.eigenvalues(), FieldMatrix(Beta::Complex, solver.eigenvectors())};
}

FieldMatrix psd_sqrt_inv(const FieldMatrix& m, double relative_floor) {
  require_hermitian(m.data());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m.data());
  const Eigen::VectorXd& e = solver.eigenvalues();
  const double scale = e.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || e.minCoeff() < relative_floor * scale) {
    throw SingularityError("matrix below PSD floor in inverse square root");
  }
  const CMatrix& v = solver.eigenvectors();
  CMatrix out = v * e.cwiseSqrt().cwiseInverse().asDiagonal() * v.adjoint();
  out = (0.5 * (out + out.adjoint())).eval();
  if (m.beta() == Beta::Real) {
    out = out.real().cast<Complex>();
  } else if (m.beta() == Beta::Quaternion) {
    // Re-impose the exact block form; the deviation is rounding only.
    for (Index j = 0; j < out.cols(); j += 2) {
      for (Index i = 0; i < out.rows(); i += 2) {
        const Complex w = 0.5 * (out(i, j) + std::conj(out(i + 1, j + 1)));
        const Complex x = 0.5 * (out(i, j + 1) - std::conj(out(i + 1, j)));
        out(i, j) = w;
        out(i + 1, j + 1) = std::conj(w);
        out(i, j + 1) = x;
        out(i + 1, j) = -std::conj(x);
      }
    }
  }
  return FieldMatrix(m.beta(), std::move(out));
}

double kramers_split(const Eigen::VectorXd& sorted) {
  if (sorted.size() % 2 != 0) {
    throw PreconditionError("Kramers pairing needs an even number of eigenvalues");
  }
  double worst = 0.0;
  for (Index i = 0; i + 1 < sorted.size(); i += 2) {
    worst = std::max(worst, std::abs(sorted(i + 1) - sorted(i)));
  }
  return worst;
}

std::vector<double> kramers_deduplicate(const Eigen::VectorXd& sorted, double tolerance) {
  const double split = kramers_split(sorted);
  if (split > tolerance) {
    throw StructureError("Kramers pair split " + std::to_string(split) + " exceeds tolerance");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(sorted.size() / 2));
  for (Index i = 0; i + 1 < sorted.size(); i += 2) {
    out.push_back(0.5 * (sorted(i) + sorted(i + 1)));
  }
  return out;
}

double unitarity_residual(const CMatrix& q) {
  return (q.adjoint() * q - CMatrix::Identity(q.cols(), q.cols())).norm();
}

}  // namespace rmtjac
