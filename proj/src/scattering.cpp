#include "rmtjac/scattering.hpp"

#include <algorithm>
#include <string>

#include "rmtjac/errors.hpp"
#include "rmtjac/linalg.hpp"

namespace rmtjac {

namespace {

constexpr double kSpectrumDrift = 1e-12;

std::vector<double> clamp_unit(const Eigen::VectorXd& e) {
  std::vector<double> out(e.data(), e.data() + e.size());
  for (double& v : out) {
    if (v < -kSpectrumDrift || v > 1.0 + kSpectrumDrift) {
      throw StructureError("transmission eigenvalue " + std::to_string(v) + " outside [0, 1]");
    }
    v = std::clamp(v, 0.0, 1.0);
  }
  return out;
}

CMatrix t_block(const ScatteringMatrix& sm) {
  const Index w = sm.channel_width();
  return sm.matrix().data().block(w * sm.n(), 0, w * sm.m(), w * sm.n());
}

}  // namespace

ScatteringMatrix::ScatteringMatrix(FieldMatrix s, Index n, Index m, CircularClass cls)
    : s_(std::move(s)), n_(n), m_(m), cls_(cls) {
  if (m_ < 1 || n_ < m_) {
    throw PreconditionError("scattering matrix needs n >= m >= 1 (got n = " + std::to_string(n_) +
                            ", m = " + std::to_string(m_) + ")");
  }
  if (s_.beta() == Beta::Quaternion && cls_ != CircularClass::CSE) {
    throw PreconditionError("quaternion scattering matrices belong to the CSE class");
  }
  const Index size = channel_width() * (n_ + m_);
  if (s_.data().rows() != size || s_.data().cols() != size) {
    throw PreconditionError("scattering matrix size does not match n + m channels");
  }
  const double residual = unitarity_residual(s_.data());
  if (residual > kUnitarityTolerance) {
    throw StructureError("scattering matrix is not unitary (residual " + std::to_string(residual) +
                         ")");
  }
}

Blocks split_blocks(const ScatteringMatrix& sm) {
  const Index w = sm.channel_width();
  const Index n = w * sm.n();
  const Index m = w * sm.m();
  const CMatrix& s = sm.matrix().data();
  const Beta beta = sm.matrix().beta();
  return {FieldMatrix(beta, s.topLeftCorner(n, n)), FieldMatrix(beta, s.topRightCorner(n, m)),
          FieldMatrix(beta, s.bottomLeftCorner(m, n)), FieldMatrix(beta, s.bottomRightCorner(m, m))};
}

std::vector<double> transmission_eigenvalues(const ScatteringMatrix& sm) {
  const CMatrix t = t_block(sm);
  CMatrix ttd = t * t.adjoint();
  ttd = (0.5 * (ttd + ttd.adjoint())).eval();
  const Eigen::VectorXd e = hermitian_eigenvalues(ttd);
  if (sm.channel_width() == 2) {
    const std::vector<double> merged = kramers_deduplicate(e);
    return clamp_unit(Eigen::Map<const Eigen::VectorXd>(merged.data(),
                                                        static_cast<Index>(merged.size())));
  }
  return clamp_unit(e);
}

double conductance(const ScatteringMatrix& sm) {
  const std::vector<double> values = transmission_eigenvalues(sm);
  double g = 0.0;
  for (const double v : values) g += v;
  return g;
}

SymmetryResiduals symmetry_residuals(const FieldMatrix& s, CircularClass cls) {
  const CMatrix& d = s.data();
  if (!s.is_square()) {
    throw PreconditionError("scattering matrix must be square");
  }
  SymmetryResiduals out;
  out.unitarity = (d * d.adjoint() - CMatrix::Identity(d.rows(), d.rows())).norm();
  switch (cls) {
    case CircularClass::COE:
      out.symmetry = (d - d.transpose()).norm();
      break;
    case CircularClass::CUE:
      out.symmetry = 0.0;
      break;
    case CircularClass::CSE:
      out.symmetry = (d - symplectic_dual(d)).norm();
      break;
  }
  return out;
}

SymmetryResiduals symmetry_residuals(const ScatteringMatrix& sm) {
  return symmetry_residuals(sm.matrix(), sm.circular_class());
}

FluxResiduals flux_residuals(const ScatteringMatrix& sm) {
  const Index w = sm.channel_width();
  const Index n = w * sm.n();
  const Index m = w * sm.m();
  const CMatrix& s = sm.matrix().data();
  const auto r = s.topLeftCorner(n, n);
  const auto tp = s.topRightCorner(n, m);
  const auto t = s.bottomLeftCorner(m, n);
  const auto rp = s.bottomRightCorner(m, m);

  FluxResiduals out;
  out.flux = (r.adjoint() * r + t.adjoint() * t - CMatrix::Identity(n, n)).norm();
  out.trace = std::abs(t.squaredNorm() - tp.squaredNorm()) / static_cast<double>(w);

  CMatrix ttd = t * t.adjoint();
  ttd = (0.5 * (ttd + ttd.adjoint())).eval();
  const Eigen::VectorXd te = hermitian_eigenvalues(ttd);
  CMatrix rr = rp.adjoint() * rp;
  rr = (0.5 * (rr + rr.adjoint())).eval();
  const Eigen::VectorXd re = hermitian_eigenvalues(rr);
  // eig(r'^dagger r') ascending pairs with 1 - eig(t t^dagger) descending.
  for (Index i = 0; i < m; ++i) {
    out.reflection = std::max(out.reflection, std::abs(re(i) - (1.0 - te(m - 1 - i))));
  }
  if (w == 2) out.kramers = kramers_split(te);
  return out;
}

}  // namespace rmtjac
