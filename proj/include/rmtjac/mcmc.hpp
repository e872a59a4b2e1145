#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rmtjac/rng.hpp"

namespace rmtjac {

struct McmcConfig {
  std::size_t steps = 50000;
  std::optional<std::size_t> burn_in;  // default steps / 5
  std::size_t thin = 10;
  double proposal_sigma = 0.5;         // isotropic Gaussian step in logit space
  std::vector<double> init;            // default j / (m + 1), j = 1..m

  std::size_t effective_burn_in() const { return burn_in.value_or(steps / 5); }
};

struct McmcResult {
  std::vector<std::vector<double>> samples;  // each sorted ascending
  double acceptance_rate = 0.0;
};

using LogDensity = std::function<double(std::span<const double>)>;

/// Random-walk Metropolis on (0,1)^m in logit coordinates u = log(y/(1-y)).
/// The target gains the Jacobian sum_j log(y_j (1 - y_j)) so the chain is
/// exact for `target`. Keeps every thin-th state after burn-in, giving
/// (steps - burn_in) / thin samples.
///
/// Throws PreconditionError for an invalid config or a non-finite target at
/// init, and std::runtime_error if no proposal is ever accepted.
McmcResult mcmc_sample(const LogDensity& target, std::size_t m, const McmcConfig& cfg,
                       RngStream& rng);

}  // namespace rmtjac
