#include "rmtjac/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rmtjac/errors.hpp"

namespace rmtjac {

namespace {

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

// Target density in logit coordinates; y(1 - y) is the Jacobian dy/du.
double logit_target(const LogDensity& target, std::span<const double> y) {
  const double base = target(y);
  if (base == -INFINITY || std::isnan(base)) return -INFINITY;
  double jac = 0.0;
  for (const double v : y) {
    if (v <= 0.0 || v >= 1.0) return -INFINITY;
    jac += std::log(v) + std::log1p(-v);
  }
  return base + jac;
}

}  // namespace

McmcResult mcmc_sample(const LogDensity& target, std::size_t m, const McmcConfig& cfg,
                       RngStream& rng) {
  if (m == 0) throw PreconditionError("MCMC dimension must be >= 1");
  if (!(cfg.proposal_sigma > 0.0)) throw PreconditionError("MCMC proposal_sigma must be > 0");
  if (cfg.thin < 1) throw PreconditionError("MCMC thin must be >= 1");
  const std::size_t burn_in = cfg.effective_burn_in();
  if (burn_in >= cfg.steps) throw PreconditionError("MCMC burn_in must be < steps");

  std::vector<double> y = cfg.init;
  if (y.empty()) {
    for (std::size_t j = 1; j <= m; ++j) y.push_back(static_cast<double>(j) / (m + 1.0));
  }
  if (y.size() != m) throw PreconditionError("MCMC init has wrong dimension");
  for (const double v : y) {
    if (!(v > 0.0 && v < 1.0)) throw PreconditionError("MCMC init must lie in (0,1)^m");
  }

  std::vector<double> u(m);
  std::transform(y.begin(), y.end(), u.begin(), [](double v) { return std::log(v / (1.0 - v)); });
  double current = logit_target(target, y);
  if (!std::isfinite(current)) throw PreconditionError("MCMC target is not finite at init");

  McmcResult result;
  result.samples.reserve((cfg.steps - burn_in) / cfg.thin);
  std::vector<double> u_prop(m);
  std::vector<double> y_prop(m);
  std::size_t accepted = 0;

  for (std::size_t step = 0; step < cfg.steps; ++step) {
    for (std::size_t j = 0; j < m; ++j) {
      u_prop[j] = u[j] + cfg.proposal_sigma * rng.normal();
      y_prop[j] = logistic(u_prop[j]);
    }
    const double proposed = logit_target(target, y_prop);
    const double log_u = std::log(rng.uniform());
    if (proposed != -INFINITY && log_u < proposed - current) {
      u.swap(u_prop);
      y.swap(y_prop);
      current = proposed;
      ++accepted;
    }
    if (step >= burn_in && (step - burn_in + 1) % cfg.thin == 0) {
      std::vector<double> kept = y;
      std::sort(kept.begin(), kept.end());
      result.samples.push_back(std::move(kept));
    }
  }

  if (accepted == 0) throw std::runtime_error("MCMC accepted no proposals");
  result.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(cfg.steps);
  return result;
}

}  // namespace rmtjac
