#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "rmtjac/errors.hpp"
#include "rmtjac/jacobi_density.hpp"
#include "rmtjac/rng.hpp"

using namespace rmtjac;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> random_points(RngStream& rng, int m) {
  std::vector<double> out;
  for (int j = 0; j < m; ++j) out.push_back(rng.uniform());
  return out;
}

}  // namespace

TEST_CASE("parameters") {
  CHECK_THROWS_AS(JacobiParams::make(Beta::Complex, 1, 2, 5), PreconditionError);
  CHECK_THROWS_AS(JacobiParams::make(Beta::Complex, 3, 2, 4), PreconditionError);
  CHECK_THROWS_AS(TransmissionParams::make(Beta::Complex, 1, 2), PreconditionError);

  const auto p = JacobiParams::make(Beta::Real, 3, 2, 7);
  CHECK(p.a() == doctest::Approx(0.0));
  CHECK(p.b() == doctest::Approx(1.0));
  for (const Beta beta : {Beta::Real, Beta::Complex, Beta::Quaternion}) {
    for (int m = 1; m <= 4; ++m) CHECK(TransmissionParams::make(beta, m, m).alpha() >= 0.0);
  }
  CHECK(TransmissionParams::make(Beta::Real, 3, 3).alpha() == 0.0);
  CHECK(TransmissionParams::make(Beta::Real, 4, 3).alpha() > 0.0);
}

TEST_CASE("transmission density") {
  // 3 log(1/2), from beta * alpha = 2 * (2 - 1 + 1 - 1/2) = 3.
  const double frozen = -2.0794415416798357;
  const auto p = TransmissionParams::make(Beta::Complex, 2, 1);
  const std::vector<double> half{0.5};
  CHECK(std::log(oracle::transmission_density_product(half, 2, 2, 1)) == doctest::Approx(frozen).epsilon(1e-14));
  CHECK(log_density_transmission(half, p) == doctest::Approx(frozen).epsilon(1e-14));

  const auto flat = TransmissionParams::make(Beta::Real, 1, 1);
  for (const double l : {0.1, 0.5, 0.93}) CHECK(log_density_transmission(std::vector{l}, flat) == 0.0);

  const auto p2 = TransmissionParams::make(Beta::Complex, 2, 2);
  CHECK(log_density_transmission(std::vector{0.3, 0.7}, p2) == log_density_transmission(std::vector{0.7, 0.3}, p2));

  SUBCASE("matches the product form") {
    RngStream rng(1, 0);
    for (int trial = 0; trial < 20; ++trial) {
      for (const int beta : {1, 2, 4}) {
        const auto pp = TransmissionParams::make(beta_from_int(beta), 5, 3);
        const auto l = random_points(rng, 3);
        CHECK(log_density_transmission(l, pp) ==
              doctest::Approx(std::log(oracle::transmission_density_product(l, beta, 5, 3))).epsilon(1e-10));
      }
    }
  }
  SUBCASE("sentinels and errors") {
    CHECK(log_density_transmission(std::vector{1.0}, p) == kNegInf);
    CHECK(log_density_transmission(std::vector{0.0}, p) == kNegInf);
    CHECK(log_density_transmission(std::vector{0.4, 0.4}, p2) == kNegInf);
    CHECK_THROWS_AS(log_density_transmission(std::vector{1.5}, p), PreconditionError);
    CHECK_THROWS_AS(log_density_transmission(std::vector{0.2, 0.3}, p), PreconditionError);
  }
}

TEST_CASE("jacobi density") {
  const auto uniform = JacobiParams::make(Beta::Complex, 1, 1, 2);
  for (const double y : {0.1, 0.37, 0.9}) CHECK(log_density_jacobi(std::vector{y}, uniform) == 0.0);

  // Arcsine exponents -1/2, -1/2 at y = 1/2: log 2.
  const auto arcsine = JacobiParams::make(Beta::Real, 1, 1, 2);
  CHECK(log_density_jacobi(std::vector{0.5}, arcsine) == doctest::Approx(0.6931471805599453).epsilon(1e-14));
  CHECK(std::log(oracle::jacobi_density_product({0.5}, 1, 1, 1, 2)) == doctest::Approx(0.6931471805599453));

  const auto p2 = JacobiParams::make(Beta::Complex, 3, 2, 7);
  CHECK(log_density_jacobi(std::vector{0.2, 0.6}, p2) == log_density_jacobi(std::vector{0.6, 0.2}, p2));
  CHECK(log_density_jacobi(std::vector{0.2, 0.2}, p2) == kNegInf);
  CHECK(log_density_jacobi(std::vector{0.0, 0.2}, p2) == kNegInf);
  CHECK_THROWS_AS(log_density_jacobi(std::vector{-0.1, 0.2}, p2), PreconditionError);

  RngStream rng(2, 0);
  for (int trial = 0; trial < 20; ++trial) {
    for (const int beta : {1, 2, 4}) {
      const auto y = random_points(rng, 3);
      const auto pp = JacobiParams::make(beta_from_int(beta), 4, 3, 9);
      CHECK(log_density_jacobi(y, pp) ==
            doctest::Approx(std::log(oracle::jacobi_density_product(y, beta, 4, 3, 9))).epsilon(1e-10));
    }
  }
}

TEST_CASE("pair term grows only by new pairs") {
  // Going from m to 2m points adds the single-point terms of the new points
  // plus the pair terms involving at least one new point.
  const auto small = JacobiParams::make(Beta::Complex, 2, 2, 8);
  const auto large = JacobiParams::make(Beta::Complex, 4, 4, 8);
  const std::vector<double> base{0.2, 0.7};
  const std::vector<double> extended{0.2, 0.7, 0.4, 0.9};
  // Both share a = 0, b = 4 (large) vs b = 6 (small); compare pair parts only.
  auto singles = [](const std::vector<double>& ys, const JacobiParams& p) {
    double s = 0.0;
    for (double y : ys) s += 0.5 * 2 * p.a() * std::log(y) + 0.5 * 2 * p.b() * std::log(1 - y);
    return s;
  };
  const double pairs_small = log_density_jacobi(base, small) - singles(base, small);
  const double pairs_large = log_density_jacobi(extended, large) - singles(extended, large);
  double added = 0.0;
  for (std::size_t k = 2; k < 4; ++k)
    for (std::size_t j = 0; j < k; ++j) added += 2.0 * std::log(std::abs(extended[k] - extended[j]));
  CHECK(pairs_large == doctest::Approx(pairs_small + added).epsilon(1e-12));
}

TEST_CASE("beta = 2 change of variables lambda -> y = 1 - lambda^2") {
  for (const auto [n, m] : {std::pair{2, 2}, std::pair{4, 2}, std::pair{5, 3}}) {
    const auto tp = TransmissionParams::make(Beta::Complex, n, m);
    const auto jp = JacobiParams::make(Beta::Complex, m, m, n + m);
    RngStream rng(static_cast<std::uint64_t>(10 * n + m), 0);
    std::vector<double> offsets;
    for (int trial = 0; trial < 10; ++trial) {
      const auto l = random_points(rng, m);
      double jac = 0.0;
      for (double x : l) jac += std::log(2.0 * x);
      offsets.push_back(log_density_transmission(l, tp) - log_density_jacobi(lambda_to_y(l), jp) - jac);
    }
    const double mu = oracle::mean(offsets);
    double var = 0.0;
    for (double o : offsets) var += (o - mu) * (o - mu);
    var /= static_cast<double>(offsets.size());
    CHECK(var <= 1e-18);
  }
}

TEST_CASE("lambda_to_y") {
  CHECK(lambda_to_y(std::vector{0.0}) == std::vector{1.0});
  CHECK(lambda_to_y(std::vector{1.0}) == std::vector{0.0});
  const auto y = lambda_to_y(std::vector{0.6, 0.8});
  CHECK(y[0] == doctest::Approx(0.36));
  CHECK(y[1] == doctest::Approx(0.64));
  CHECK_THROWS_AS(lambda_to_y(std::vector{1.2}), PreconditionError);
}
