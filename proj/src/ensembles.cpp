#include "rmtjac/ensembles.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "rmtjac/errors.hpp"
#include "rmtjac/linalg.hpp"

namespace rmtjac {

namespace {

constexpr int kMaxAttempts = 64;

void require_positive(Index value, const char* what) {
  if (value < 1) {
    throw PreconditionError(std::string(what) + " must be >= 1");
  }
}

}  // namespace

Beta class_beta(CircularClass cls) {
  switch (cls) {
    case CircularClass::COE:
      return Beta::Real;
    case CircularClass::CUE:
      return Beta::Complex;
    case CircularClass::CSE:
      return Beta::Quaternion;
  }
  throw PreconditionError("unknown circular class");
}

CircularClass circular_class_for(Beta beta) {
  switch (beta) {
    case Beta::Real:
      return CircularClass::COE;
    case Beta::Complex:
      return CircularClass::CUE;
    case Beta::Quaternion:
      return CircularClass::CSE;
  }
  throw PreconditionError("unknown field");
}

std::string_view class_name(CircularClass cls) {
  switch (cls) {
    case CircularClass::COE:
      return "coe";
    case CircularClass::CUE:
      return "cue";
    case CircularClass::CSE:
      return "cse";
  }
  return "unknown";
}

CircularClass parse_circular_class(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "coe") return CircularClass::COE;
  if (lower == "cue") return CircularClass::CUE;
  if (lower == "cse") return CircularClass::CSE;
  throw PreconditionError("unknown circular class '" + std::string(name) + "' (expected coe|cue|cse)");
}

FieldMatrix sample_ginibre(Beta beta, Index rows, Index cols, RngStream& rng) {
  require_positive(rows, "rows");
  require_positive(cols, "cols");
  switch (beta) {
    case Beta::Real: {
      CMatrix data(rows, cols);
      for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) data(i, j) = Complex(rng.normal(), 0.0);
      }
      return FieldMatrix(beta, std::move(data));
    }
    case Beta::Complex: {
      CMatrix data(rows, cols);
      for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
          const double re = rng.normal();
          const double im = rng.normal();
          data(i, j) = Complex(re, im);
        }
      }
      return FieldMatrix(beta, std::move(data));
    }
    case Beta::Quaternion: {
      CMatrix data(2 * rows, 2 * cols);
      for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
          const double w_re = rng.normal();
          const double w_im = rng.normal();
          const double x_re = rng.normal();
          const double x_im = rng.normal();
          const Complex w(w_re, w_im);
          const Complex x(x_re, x_im);
          data(2 * i, 2 * j) = w;
          data(2 * i, 2 * j + 1) = x;
          data(2 * i + 1, 2 * j) = -std::conj(x);
          data(2 * i + 1, 2 * j + 1) = std::conj(w);
        }
      }
      return FieldMatrix(beta, std::move(data));
    }
  }
  throw PreconditionError("unknown field");
}

FieldMatrix sample_haar(Beta beta, Index n, RngStream& rng, std::size_t* resamples) {
  require_positive(n, "N");
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    try {
      return qr_unitary(sample_ginibre(beta, n, n, rng)).q;
    } catch (const SingularityError&) {
      if (resamples != nullptr) ++*resamples;
    }
  }
  throw SingularityError("Haar sampler: repeated rank-deficient draws");
}

FieldMatrix sample_circular(CircularClass cls, Index n, RngStream& rng, std::size_t* resamples) {
  require_positive(n, "N");
  switch (cls) {
    case CircularClass::CUE:
      return sample_haar(Beta::Complex, n, rng, resamples);
    case CircularClass::COE: {
      const FieldMatrix u = sample_haar(Beta::Complex, n, rng, resamples);
      return FieldMatrix(Beta::Complex, u.data().transpose() * u.data());
    }
    case CircularClass::CSE: {
      const FieldMatrix u = sample_haar(Beta::Complex, 2 * n, rng, resamples);
      return FieldMatrix(Beta::Complex, symplectic_dual(u.data()) * u.data());
    }
  }
  throw PreconditionError("unknown circular class");
}

FieldMatrix sample_wishart(Beta beta, Index n, Index m, RngStream& rng) {
  require_positive(m, "m");
  if (n < m) {
    throw PreconditionError("Wishart needs n >= m (got n = " + std::to_string(n) +
                            ", m = " + std::to_string(m) + ")");
  }
  const FieldMatrix c = sample_ginibre(beta, n, m, rng);
  CMatrix gram = c.data().adjoint() * c.data();
  gram = (0.5 * (gram + gram.adjoint())).eval();
  return FieldMatrix(beta, std::move(gram));
}

}  // namespace rmtjac
