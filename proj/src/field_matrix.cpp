#include "rmtjac/field_matrix.hpp"

#include <string>

#include "rmtjac/errors.hpp"

namespace rmtjac {

Beta beta_from_int(int value) {
  switch (value) {
    case 1:
      return Beta::Real;
    case 2:
      return Beta::Complex;
    case 4:
      return Beta::Quaternion;
    default:
      throw PreconditionError("beta must be 1, 2 or 4 (got " + std::to_string(value) + ")");
  }
}

std::string_view field_name(Beta beta) {
  switch (beta) {
    case Beta::Real:
      return "real";
    case Beta::Complex:
      return "complex";
    case Beta::Quaternion:
      return "quaternion";
  }
  return "unknown";
}

double quaternion_structure_residual(const CMatrix& m) {
  if (m.rows() % 2 != 0 || m.cols() % 2 != 0) {
    throw PreconditionError("quaternion representation needs even dimensions");
  }
  double sq = 0.0;
  for (Index j = 0; j < m.cols(); j += 2) {
    for (Index i = 0; i < m.rows(); i += 2) {
      sq += std::norm(m(i + 1, j + 1) - std::conj(m(i, j)));
      sq += std::norm(m(i + 1, j) + std::conj(m(i, j + 1)));
    }
  }
  return std::sqrt(sq);
}

CMatrix symplectic_dual(const CMatrix& a) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0) {
    throw PreconditionError("quaternion dual needs a square matrix of even complex size");
  }
  const Index n = a.rows();
  CMatrix out(n, n);
  for (Index j = 0; j < n; j += 2) {
    for (Index i = 0; i < n; i += 2) {
      const Complex pa = a(j, i);
      const Complex pb = a(j, i + 1);
      const Complex pc = a(j + 1, i);
      const Complex pd = a(j + 1, i + 1);
      out(i, j) = pd;
      out(i, j + 1) = -pb;
      out(i + 1, j) = -pc;
      out(i + 1, j + 1) = pa;
    }
  }
  return out;
}

FieldMatrix::FieldMatrix(Beta beta, CMatrix data) : beta_(beta), data_(std::move(data)) {
  switch (beta_) {
    case Beta::Real:
      if ((data_.array().imag() != 0.0).any()) {
        throw StructureError("real field matrix has nonzero imaginary parts");
      }
      break;
    case Beta::Complex:
      break;
    case Beta::Quaternion: {
      const double residual = quaternion_structure_residual(data_);
      if (residual > kQuaternionTolerance * std::max(1.0, data_.norm())) {
        throw StructureError("matrix is not in quaternion block form (residual " +
                             std::to_string(residual) + ")");
      }
      break;
    }
  }
}

FieldMatrix FieldMatrix::identity(Beta beta, Index n) {
  const Index s = block_size(beta);
  return FieldMatrix(beta, CMatrix::Identity(s * n, s * n));
}

FieldMatrix FieldMatrix::zero(Beta beta, Index rows, Index cols) {
  const Index s = block_size(beta);
  return FieldMatrix(beta, CMatrix::Zero(s * rows, s * cols));
}

FieldMatrix FieldMatrix::block(Index row, Index col, Index rows, Index cols) const {
  const Index s = block_size(beta_);
  if (row < 0 || col < 0 || rows < 0 || cols < 0 || row + rows > this->rows() ||
      col + cols > this->cols()) {
    throw PreconditionError("block out of range");
  }
  return FieldMatrix(beta_, data_.block(s * row, s * col, s * rows, s * cols));
}

bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
  return a.beta_ == b.beta_ && a.data_.rows() == b.data_.rows() &&
         a.data_.cols() == b.data_.cols() && a.data_ == b.data_;
}

namespace {

void require_same_field(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.beta() != b.beta()) {
    throw PreconditionError("mixed-field matrix arithmetic");
  }
}

}  // namespace

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_field(a, b);
  if (a.data().cols() != b.data().rows()) {
    throw PreconditionError("matrix product dimension mismatch");
  }
  return FieldMatrix(a.beta(), a.data() * b.data());
}

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_field(a, b);
  if (a.data().rows() != b.data().rows() || a.data().cols() != b.data().cols()) {
    throw PreconditionError("matrix sum dimension mismatch");
  }
  return FieldMatrix(a.beta(), a.data() + b.data());
}

FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_field(a, b);
  if (a.data().rows() != b.data().rows() || a.data().cols() != b.data().cols()) {
    throw PreconditionError("matrix difference dimension mismatch");
  }
  return FieldMatrix(a.beta(), a.data() - b.data());
}

}  // namespace rmtjac
