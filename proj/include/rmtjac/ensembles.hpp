#pragma once

#include <cstddef>
#include <string_view>

#include "rmtjac/field_matrix.hpp"
#include "rmtjac/rng.hpp"

namespace rmtjac {

/// Circular ensembles of scattering matrices, by time-reversal class.
enum class CircularClass {
  COE,  // beta = 1, S = U^T U (symmetric)
  CUE,  // beta = 2, S = U
  CSE,  // beta = 4, S = U^D U (self-dual)
};

Beta class_beta(CircularClass cls);
CircularClass circular_class_for(Beta beta);
std::string_view class_name(CircularClass cls);
/// Accepts "coe", "cue", "cse" (case-insensitive).
CircularClass parse_circular_class(std::string_view name);

/// i.i.d. standard Gaussian entries over the field; every real component has
/// unit variance, so E|z|^2 = beta per entry.
FieldMatrix sample_ginibre(Beta beta, Index rows, Index cols, RngStream& rng);

/// Haar-distributed element of O(n), U(n) or Sp(n) (2n x 2n complex form).
/// Rank-deficient Ginibre draws are redrawn; *resamples counts them.
FieldMatrix sample_haar(Beta beta, Index n, RngStream& rng, std::size_t* resamples = nullptr);

/// Circular ensemble draw with n channels (quaternion channels for CSE).
///
/// COE and CSE matrices have complex (respectively complex-quaternion)
/// entries, so every class is returned over the complex field. A CSE draw is
/// 2n x 2n with channel k occupying complex rows/cols 2k, 2k+1.
FieldMatrix sample_circular(CircularClass cls, Index n, RngStream& rng,
                            std::size_t* resamples = nullptr);

/// C = c^dagger c for an n x m Ginibre matrix c; m x m, Hermitian PSD.
FieldMatrix sample_wishart(Beta beta, Index n, Index m, RngStream& rng);

}  // namespace rmtjac
