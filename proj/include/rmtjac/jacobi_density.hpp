#pragma once

#include <span>
#include <vector>

#include "rmtjac/field_matrix.hpp"

namespace rmtjac {

/// Jacobi ensemble on [0,1]^n2 indexed by matrix dimensions:
///
///   prod_j y_j^{(beta/2) a} (1 - y_j)^{(beta/2) b} prod_{j<k} |y_k - y_j|^beta
///   a = n1 - n2 + 1 - 2/beta,  b = N - n1 - n2 + 1 - 2/beta.
///
/// Realised by the n2 x n2 Gram matrix of the top-left n1 x n2 block of an
/// N x N Haar matrix, or by J = (C+D)^{-1/2} C (C+D)^{-1/2} with C ~ W(n1, n2)
/// and D ~ W(N - n1, n2).
struct JacobiParams {
  Beta beta;
  int n1;
  int n2;
  int N;

  /// Validates n1 >= n2 >= 1 and N - n1 - n2 >= 0 (normalisability).
  static JacobiParams make(Beta beta, int n1, int n2, int N);

  double a() const { return n1 - n2 + 1.0 - 2.0 / to_int(beta); }
  double b() const { return N - n1 - n2 + 1.0 - 2.0 / to_int(beta); }
};

/// Transmission singular values lambda_j with density
///   prod_j lambda_j^{beta alpha} prod_{j<k} |lambda_k^2 - lambda_j^2|^beta,
///   alpha = n - m + 1 - 1/beta.
struct TransmissionParams {
  Beta beta;
  int n;
  int m;

  /// Validates n >= m >= 1.
  static TransmissionParams make(Beta beta, int n, int m);

  double alpha() const { return n - m + 1.0 - 1.0 / to_int(beta); }
};

/// Points closer than this are treated as coincident.
inline constexpr double kCoincidenceGap = 1e-14;

/// Unnormalised log-density of the singular values lambda (size m, each in
/// [0,1]). Returns -infinity on the boundary {0, 1} and at coincident points;
/// throws PreconditionError for wrong size or values outside [0, 1].
double log_density_transmission(std::span<const double> lambdas, const TransmissionParams& p);

/// Unnormalised Jacobi log-density of ys (size n2). Same sentinel and error
/// conventions as log_density_transmission.
double log_density_jacobi(std::span<const double> ys, const JacobiParams& p);

/// y_j = 1 - lambda_j^2, sorted ascending.
std::vector<double> lambda_to_y(std::span<const double> lambdas);

}  // namespace rmtjac
