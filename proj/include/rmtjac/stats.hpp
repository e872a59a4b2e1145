#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rmtjac/constructions.hpp"
#include "rmtjac/ensembles.hpp"

namespace rmtjac {

struct KSResult {
  double d_statistic = 0.0;
  double p_value = 1.0;
  std::size_t n_x = 0;
  std::size_t n_y = 0;  // 0 for the one-sample test
};

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value at
/// effective size n_x n_y / (n_x + n_y). Both samples need >= 8 points.
KSResult ks_two_sample(std::span<const double> x, std::span<const double> y);

/// One-sample test against a continuous reference CDF.
KSResult ks_one_sample(std::span<const double> x, const std::function<double(double)>& cdf);

/// Streaming mean/variance accumulator (Welford, with Chan's merge).
class RunningMoments {
 public:
  void add(double x);
  void merge(const RunningMoments& other);
  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance (0 for fewer than two points).
  double variance() const;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;
  double se_variance = 0.0;
  std::size_t count = 0;
};

/// Mean and unbiased variance with batch-means standard errors (`batches`
/// contiguous batches; needs count >= 2 * batches).
MomentSummary summarize(std::span<const double> x, std::size_t batches = 20);

struct MomentEstimate {
  int order = 0;
  double value = 0.0;
  double se = 0.0;  // delete-one jackknife
};

/// Raw moments E[x^k], k = 1..k_max, with jackknife standard errors.
std::vector<MomentEstimate> moments(std::span<const double> x, int k_max);

struct ConductanceReport {
  CircularClass cls = CircularClass::CUE;
  int n = 0;
  int m = 0;
  MomentSummary summary;
  double reference_variance = 0.0;  // large-channel limit 1/(8 beta)
  std::vector<double> samples;      // G/G0 per draw, in draw order
};

/// G/G0 over `draws` circular-ensemble scattering matrices; draw i uses stream
/// (master_seed, i). Needs draws >= 1000.
ConductanceReport conductance_experiment(CircularClass cls, int n, int m, std::size_t draws,
                                         std::uint64_t master_seed, unsigned threads = 1,
                                         DrawAudit* audit = nullptr);

/// Pools the values of a batch of spectra into one vector.
std::vector<double> pooled_values(std::span<const SpectrumSample> samples);

}  // namespace rmtjac
