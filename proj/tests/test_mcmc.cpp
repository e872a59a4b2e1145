#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "rmtjac/errors.hpp"
#include "rmtjac/jacobi_density.hpp"
#include "rmtjac/mcmc.hpp"
#include "rmtjac/stats.hpp"

using namespace rmtjac;

namespace {

LogDensity jacobi_target(const JacobiParams& p) {
  return [p](std::span<const double> y) { return log_density_jacobi(y, p); };
}

std::vector<double> component(const McmcResult& r, std::size_t j) {
  std::vector<double> out;
  for (const auto& s : r.samples) out.push_back(s[j]);
  return out;
}

// Chain samples are autocorrelated; thin heavily for SE-based checks.
McmcConfig long_run(std::size_t steps, std::size_t thin) {
  McmcConfig cfg;
  cfg.steps = steps;
  cfg.thin = thin;
  return cfg;
}

}  // namespace

TEST_CASE("uniform target") {
  RngStream rng(1, 0);
  const auto r = mcmc_sample(jacobi_target(JacobiParams::make(Beta::Complex, 1, 1, 2)), 1, long_run(250000, 20), rng);
  CHECK(r.samples.size() == (250000 - 50000) / 20);
  const auto y = component(r, 0);
  CHECK(std::abs(oracle::mean(y) - 0.5) < 4 * oracle::se_mean(y));
  CHECK(ks_one_sample(y, oracle::uniform_cdf).p_value > 1e-3);
}

TEST_CASE("arcsine target moments") {
  // Under y = sin^2(theta) the arcsine law is uniform in theta on [0, pi/2].
  const double exact_var = oracle::expectation([](double) { return 1.0; },
                                               [](double t) {
                                                 const double y = std::sin(t) * std::sin(t);
                                                 return (y - 0.5) * (y - 0.5);
                                               },
                                               0.0, std::numbers::pi / 2);
  CHECK(exact_var == doctest::Approx(0.125).epsilon(1e-12));
  RngStream rng(2, 0);
  const auto r = mcmc_sample(jacobi_target(JacobiParams::make(Beta::Real, 1, 1, 2)), 1, long_run(250000, 20), rng);
  const auto y = component(r, 0);
  std::vector<double> sq;
  for (double v : y) sq.push_back((v - 0.5) * (v - 0.5));
  CHECK(std::abs(oracle::mean(y) - 0.5) < 4 * oracle::se_mean(y));
  CHECK(std::abs(oracle::mean(sq) - 0.125) < 4 * oracle::se_mean(sq));
}

TEST_CASE("acceptance rate is healthy at defaults for m = 2") {
  for (const int beta : {1, 2, 4}) {
    RngStream rng(3, static_cast<std::uint64_t>(beta));
    const auto r = mcmc_sample(jacobi_target(JacobiParams::make(beta_from_int(beta), 3, 2, 7)), 2, McmcConfig{}, rng);
    CAPTURE(beta);
    CHECK(r.acceptance_rate > 0.05);
    CHECK(r.acceptance_rate < 0.95);
  }
}

TEST_CASE("doubling the run does not move the mean") {
  const auto target = jacobi_target(JacobiParams::make(Beta::Complex, 1, 1, 2));
  RngStream a(4, 0);
  RngStream b(4, 1);
  const auto short_run = component(mcmc_sample(target, 1, long_run(100000, 20), a), 0);
  const auto double_run = component(mcmc_sample(target, 1, long_run(200000, 20), b), 0);
  const double se = std::hypot(oracle::se_mean(short_run), oracle::se_mean(double_run));
  CHECK(std::abs(oracle::mean(short_run) - oracle::mean(double_run)) < 4 * se);
}

TEST_CASE("init permutation does not change the law") {
  const auto target = jacobi_target(JacobiParams::make(Beta::Complex, 3, 2, 7));
  McmcConfig cfg = long_run(100000, 20);
  cfg.init = {0.2, 0.7};
  RngStream a(5, 0);
  const auto r1 = mcmc_sample(target, 2, cfg, a);
  cfg.init = {0.7, 0.2};
  RngStream b(5, 1);
  const auto r2 = mcmc_sample(target, 2, cfg, b);
  CHECK(ks_two_sample(component(r1, 0), component(r2, 0)).p_value > 1e-3);
  CHECK(ks_two_sample(component(r1, 1), component(r2, 1)).p_value > 1e-3);
}

TEST_CASE("samples are sorted and reproducible") {
  const auto target = jacobi_target(JacobiParams::make(Beta::Quaternion, 3, 2, 7));
  RngStream a(6, 0);
  RngStream b(6, 0);
  const auto r1 = mcmc_sample(target, 2, long_run(5000, 10), a);
  const auto r2 = mcmc_sample(target, 2, long_run(5000, 10), b);
  CHECK(r1.samples == r2.samples);
  for (const auto& s : r1.samples) CHECK(s[0] <= s[1]);
}

TEST_CASE("errors") {
  const auto target = jacobi_target(JacobiParams::make(Beta::Complex, 3, 2, 7));
  RngStream rng(7, 0);
  McmcConfig cfg;
  cfg.init = {0.4, 0.4};  // coincident: density zero
  CHECK_THROWS_AS(mcmc_sample(target, 2, cfg, rng), PreconditionError);
  cfg.init = {};
  cfg.proposal_sigma = 0.0;
  CHECK_THROWS_AS(mcmc_sample(target, 2, cfg, rng), PreconditionError);
  cfg.proposal_sigma = 0.5;
  cfg.burn_in = cfg.steps;
  CHECK_THROWS_AS(mcmc_sample(target, 2, cfg, rng), PreconditionError);
  cfg.burn_in.reset();
  cfg.thin = 0;
  CHECK_THROWS_AS(mcmc_sample(target, 2, cfg, rng), PreconditionError);

  // Finite only at the init point's neighbourhood edge: every proposal is rejected.
  const LogDensity spike = [](std::span<const double> y) { return std::abs(y[0] - 0.5) < 1e-15 ? 0.0 : -INFINITY; };
  McmcConfig tiny;
  tiny.steps = 100;
  CHECK_THROWS_AS(mcmc_sample(spike, 1, tiny, rng), std::runtime_error);
}
