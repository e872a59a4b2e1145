#include "rmtjac/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rmtjac/errors.hpp"

namespace rmtjac {

namespace {

constexpr std::size_t kMinKsSize = 8;

// Stephens' finite-size correction to the asymptotic statistic.
double ks_p_value(double d, double effective_n) {
  if (d <= 0.0) return 1.0;
  const double root = std::sqrt(effective_n);
  return kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
}

std::vector<double> sorted_copy(std::span<const double> x) {
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Theta-function form converges fast for small lambda.
    const double t = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 40; ++k) {
      const double odd = 2.0 * k - 1.0;
      cdf += std::exp(-odd * odd * t);
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KSResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
  if (x.size() < kMinKsSize || y.size() < kMinKsSize) {
    throw PreconditionError("two-sample KS needs at least 8 points per sample");
  }
  const std::vector<double> a = sorted_copy(x);
  const std::vector<double> b = sorted_copy(y);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, ks_p_value(d, na * nb / (na + nb)), a.size(), b.size()};
}

KSResult ks_one_sample(std::span<const double> x, const std::function<double(double)>& cdf) {
  if (x.size() < kMinKsSize) {
    throw PreconditionError("one-sample KS needs at least 8 points");
  }
  const std::vector<double> a = sorted_copy(x);
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, ks_p_value(d, n), a.size(), 0};
}

void RunningMoments::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void RunningMoments::merge(const RunningMoments& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double delta = other.mean_ - mean_;
  const double total = na + nb;
  mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  count_ += other.count_;
}

double RunningMoments::variance() const {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

MomentSummary summarize(std::span<const double> x, std::size_t batches) {
  if (batches < 2 || x.size() < 2 * batches) {
    throw PreconditionError("summarize needs at least two points per batch");
  }
  RunningMoments all;
  RunningMoments batch_means;
  RunningMoments batch_vars;
  const std::size_t size = x.size() / batches;
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t begin = b * size;
    const std::size_t end = (b + 1 == batches) ? x.size() : begin + size;
    RunningMoments part;
    for (std::size_t i = begin; i < end; ++i) part.add(x[i]);
    batch_means.add(part.mean());
    batch_vars.add(part.variance());
    all.merge(part);
  }
  MomentSummary out;
  out.count = all.count();
  out.mean = all.mean();
  out.variance = all.variance();
  const double nb = static_cast<double>(batches);
  out.se_mean = std::sqrt(batch_means.variance() / nb);
  out.se_variance = std::sqrt(batch_vars.variance() / nb);
  return out;
}

std::vector<MomentEstimate> moments(std::span<const double> x, int k_max) {
  if (x.empty()) throw PreconditionError("moments of an empty sample");
  if (k_max < 1) throw PreconditionError("moments: k_max >= 1 required");
  const double n = static_cast<double>(x.size());
  std::vector<MomentEstimate> out;
  for (int k = 1; k <= k_max; ++k) {
    double total = 0.0;
    for (const double v : x) total += std::pow(v, k);
    const double value = total / n;
    double se = 0.0;
    if (x.size() > 1) {
      // Leave-one-out means (total - x_i^k) / (n - 1) deviate from their
      // average by (value - x_i^k) / (n - 1).
      double ss = 0.0;
      for (const double v : x) {
        const double dev = (value - std::pow(v, k)) / (n - 1.0);
        ss += dev * dev;
      }
      se = std::sqrt((n - 1.0) / n * ss);
    }
    out.push_back({k, value, se});
  }
  return out;
}

ConductanceReport conductance_experiment(CircularClass cls, int n, int m, std::size_t draws,
                                         std::uint64_t master_seed, unsigned threads,
                                         DrawAudit* audit) {
  if (draws < 1000) throw PreconditionError("conductance experiment needs at least 1000 draws");
  SpectrumRequest req;
  req.kind = ConstructionKind::CircularTransmission;
  req.beta = class_beta(cls);
  req.n = n;
  req.m = m;
  const std::vector<SpectrumSample> spectra = sample_spectra(req, draws, master_seed, threads, audit);

  ConductanceReport report;
  report.cls = cls;
  report.n = n;
  report.m = m;
  report.samples.reserve(draws);
  for (const auto& s : spectra) {
    double g = 0.0;
    for (const double v : s.values) g += v;
    report.samples.push_back(g);
  }
  report.summary = summarize(report.samples);
  report.reference_variance = 1.0 / (8.0 * to_int(class_beta(cls)));
  return report;
}

std::vector<double> pooled_values(std::span<const SpectrumSample> samples) {
  std::vector<double> out;
  for (const auto& s : samples) out.insert(out.end(), s.values.begin(), s.values.end());
  return out;
}

}  // namespace rmtjac
