#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace rmtjac {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Dyson index of the matrix field: real, complex, or real quaternion.
enum class Beta : int { Real = 1, Complex = 2, Quaternion = 4 };

/// Parses 1, 2 or 4; anything else throws PreconditionError.
Beta beta_from_int(int value);

constexpr int to_int(Beta beta) { return static_cast<int>(beta); }

/// Complex rows/cols occupied by one field entry (2 for quaternions).
constexpr Index block_size(Beta beta) { return beta == Beta::Quaternion ? 2 : 1; }

/// Quaternion entries are stored as 2x2 complex blocks [[w, x], [-conj(x), conj(w)]].
/// Returns the Frobenius norm of the deviation from that form. Requires even
/// dimensions.
double quaternion_structure_residual(const CMatrix& m);

/// Z A^T Z^{-1} with Z = I (x) [[0, -1], [1, 0]], for any even-sized square
/// complex matrix. Each 2x2 block [[a, b], [c, d]] at (j, i) lands at (i, j) as
/// [[d, -b], [-c, a]].
CMatrix symplectic_dual(const CMatrix& a);

/// Dense matrix over R, C or H held in its complex representation.
///
/// rows()/cols() count field entries; a quaternion matrix with rows() == n
/// occupies 2n complex rows. The constructor checks the field invariant:
/// exact zero imaginary parts for Beta::Real, and quaternion block form to a
/// relative tolerance of 1e-12 for Beta::Quaternion.
class FieldMatrix {
 public:
  static constexpr double kQuaternionTolerance = 1e-12;

  FieldMatrix(Beta beta, CMatrix data);

  static FieldMatrix identity(Beta beta, Index n);
  static FieldMatrix zero(Beta beta, Index rows, Index cols);

  Beta beta() const { return beta_; }
  Index rows() const { return data_.rows() / block_size(beta_); }
  Index cols() const { return data_.cols() / block_size(beta_); }
  bool is_square() const { return data_.rows() == data_.cols(); }

  const CMatrix& data() const { return data_; }

  /// Sub-matrix in field units.
  FieldMatrix block(Index row, Index col, Index rows, Index cols) const;

  double frobenius_norm() const { return data_.norm(); }

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b);

 private:
  Beta beta_;
  CMatrix data_;
};

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b);

std::string_view field_name(Beta beta);

}  // namespace rmtjac
