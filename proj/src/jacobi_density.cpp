#include "rmtjac/jacobi_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rmtjac/errors.hpp"

namespace rmtjac {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_unit_interval(std::span<const double> xs, std::size_t expected, const char* what) {
  if (xs.size() != expected) {
    throw PreconditionError(std::string(what) + ": expected " + std::to_string(expected) +
                            " values, got " + std::to_string(xs.size()));
  }
  for (const double x : xs) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw PreconditionError(std::string(what) + ": value " + std::to_string(x) +
                              " outside [0, 1]");
    }
  }
}

bool on_boundary(std::span<const double> xs) {
  return std::any_of(xs.begin(), xs.end(), [](double x) { return x <= 0.0 || x >= 1.0; });
}

// beta * sum_{j<k} log|f(x_k) - f(x_j)|, or -inf if two points coincide.
template <typename Map>
double pair_term(std::span<const double> xs, double beta, Map f) {
  double sum = 0.0;
  for (std::size_t k = 1; k < xs.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (std::abs(xs[k] - xs[j]) < kCoincidenceGap) return kNegInf;
      sum += std::log(std::abs(f(xs[k]) - f(xs[j])));
    }
  }
  return beta * sum;
}

}  // namespace

JacobiParams JacobiParams::make(Beta beta, int n1, int n2, int N) {
  if (n2 < 1) throw PreconditionError("Jacobi parameters: n2 >= 1 violated");
  if (n1 < n2) {
    throw PreconditionError("Jacobi parameters: n1 >= n2 violated (n1 = " + std::to_string(n1) +
                            ", n2 = " + std::to_string(n2) + ")");
  }
  if (N - n1 - n2 < 0) {
    throw PreconditionError("Jacobi parameters: N - n1 - n2 >= 0 violated (N = " +
                            std::to_string(N) + ", n1 = " + std::to_string(n1) +
                            ", n2 = " + std::to_string(n2) + ")");
  }
  return JacobiParams{beta, n1, n2, N};
}

TransmissionParams TransmissionParams::make(Beta beta, int n, int m) {
  if (m < 1) throw PreconditionError("transmission parameters: m >= 1 violated");
  if (n < m) {
    throw PreconditionError("transmission parameters: n >= m violated (n = " + std::to_string(n) +
                            ", m = " + std::to_string(m) + ")");
  }
  return TransmissionParams{beta, n, m};
}

double log_density_transmission(std::span<const double> lambdas, const TransmissionParams& p) {
  check_unit_interval(lambdas, static_cast<std::size_t>(p.m), "transmission density");
  if (on_boundary(lambdas)) return kNegInf;
  const double beta = to_int(p.beta);
  const double pairs = pair_term(lambdas, beta, [](double x) { return x * x; });
  if (pairs == kNegInf) return kNegInf;
  double single = 0.0;
  for (const double x : lambdas) single += std::log(x);
  return beta * p.alpha() * single + pairs;
}

double log_density_jacobi(std::span<const double> ys, const JacobiParams& p) {
  check_unit_interval(ys, static_cast<std::size_t>(p.n2), "Jacobi density");
  if (on_boundary(ys)) return kNegInf;
  const double beta = to_int(p.beta);
  const double pairs = pair_term(ys, beta, [](double x) { return x; });
  if (pairs == kNegInf) return kNegInf;
  const double ea = 0.5 * beta * p.a();
  const double eb = 0.5 * beta * p.b();
  double single = 0.0;
  for (const double y : ys) single += ea * std::log(y) + eb * std::log1p(-y);
  return single + pairs;
}

std::vector<double> lambda_to_y(std::span<const double> lambdas) {
  std::vector<double> out;
  out.reserve(lambdas.size());
  for (const double x : lambdas) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw PreconditionError("lambda_to_y: value " + std::to_string(x) + " outside [0, 1]");
    }
    out.push_back(1.0 - x * x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rmtjac
