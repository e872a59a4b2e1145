#pragma once

#include <vector>

#include "rmtjac/ensembles.hpp"
#include "rmtjac/field_matrix.hpp"

namespace rmtjac {

/// Unitary S with n left and m right channels (n >= m >= 1):
///
///   S = [ r   t' ]   r: n x n, t': n x m
///       [ t   r  ]   t: m x n, r': m x m
///
/// CSE matrices have two complex rows/cols per channel (Kramers doublets);
/// other classes have one.
class ScatteringMatrix {
 public:
  static constexpr double kUnitarityTolerance = 1e-10;

  /// Throws PreconditionError on bad channel counts or size, StructureError if
  /// ||S S^dagger - I||_F exceeds kUnitarityTolerance.
  ScatteringMatrix(FieldMatrix s, Index n, Index m, CircularClass cls);

  const FieldMatrix& matrix() const { return s_; }
  Index n() const { return n_; }
  Index m() const { return m_; }
  CircularClass circular_class() const { return cls_; }
  /// Complex rows per channel.
  Index channel_width() const { return cls_ == CircularClass::CSE ? 2 : 1; }

 private:
  FieldMatrix s_;
  Index n_;
  Index m_;
  CircularClass cls_;
};

struct Blocks {
  FieldMatrix r;        // n x n
  FieldMatrix t_prime;  // n x m
  FieldMatrix t;        // m x n
  FieldMatrix r_prime;  // m x m
};

Blocks split_blocks(const ScatteringMatrix& sm);

/// The m transmission eigenvalues (eigenvalues of t t^dagger, equal to the
/// nonzero part of eig(t^dagger t)), ascending in [0, 1]. CSE Kramers pairs are
/// merged. Drift up to 1e-12 outside [0, 1] is clamped; more is an error.
std::vector<double> transmission_eigenvalues(const ScatteringMatrix& sm);

/// Dimensionless Landauer conductance G/G0 = Tr(t^dagger t), Kramers pairs
/// counted once.
double conductance(const ScatteringMatrix& sm);

struct SymmetryResiduals {
  double unitarity = 0.0;  // ||S S^dagger - I||_F
  double symmetry = 0.0;   // ||S - S^T||_F (COE), ||S - S^D||_F (CSE), 0 (CUE)
};

SymmetryResiduals symmetry_residuals(const FieldMatrix& s, CircularClass cls);
SymmetryResiduals symmetry_residuals(const ScatteringMatrix& sm);

/// Algebraic identities that every exact draw satisfies; all are residuals.
struct FluxResiduals {
  double flux = 0.0;         // ||r^dagger r + t^dagger t - I_n||_F
  double trace = 0.0;        // |Tr(t^dagger t) - Tr(t'^dagger t')|, per Kramers pair
  double reflection = 0.0;   // max |sort(eig(r'^dagger r')) - sort(1 - T)|
  double kramers = 0.0;      // Kramers split of eig(t t^dagger), CSE only
};

FluxResiduals flux_residuals(const ScatteringMatrix& sm);

}  // namespace rmtjac
