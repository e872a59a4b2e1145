#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "rmtjac/errors.hpp"
#include "rmtjac/rng.hpp"
#include "rmtjac/stats.hpp"

using namespace rmtjac;

namespace {

std::vector<double> uniforms(std::uint64_t seed, std::uint64_t stream, std::size_t n, double shift = 0.0) {
  RngStream rng(seed, stream);
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(rng.uniform() + shift);
  return out;
}

std::vector<double> arcsine(std::uint64_t seed, std::size_t n) {
  RngStream rng(seed, 0);
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::sin(0.5 * std::numbers::pi * rng.uniform());
    out.push_back(s * s);
  }
  return out;
}

}  // namespace

TEST_CASE("two-sample KS") {
  const auto x = uniforms(1, 0, 500);
  const auto same = ks_two_sample(x, x);
  CHECK(same.d_statistic == 0.0);
  CHECK(same.p_value == 1.0);

  std::vector<double> lo, hi;
  for (int i = 0; i < 20; ++i) {
    lo.push_back(0.4 * i / 19.0);
    hi.push_back(0.6 + 0.4 * i / 19.0);
  }
  CHECK(ks_two_sample(lo, hi).d_statistic == 1.0);

  const auto a = uniforms(2, 0, 300);
  const auto b = uniforms(2, 1, 450);
  CHECK(ks_two_sample(a, b).d_statistic == doctest::Approx(oracle::brute_force_ks(a, b)).epsilon(1e-15));
  CHECK(ks_two_sample(a, b).n_y == 450);

  CHECK_THROWS_AS(ks_two_sample(std::vector<double>(7, 0.1), a), PreconditionError);
}

TEST_CASE("null calibration: false rejections at 1e-3 stay below 1%") {
  int two_sample_rejections = 0;
  int one_sample_rejections = 0;
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    const auto x = uniforms(100 + rep, 0, 10000);
    const auto y = uniforms(100 + rep, 1, 10000);
    if (ks_two_sample(x, y).p_value <= 1e-3) ++two_sample_rejections;
    if (ks_one_sample(x, oracle::uniform_cdf).p_value <= 1e-3) ++one_sample_rejections;
  }
  CHECK(two_sample_rejections <= 1);
  CHECK(one_sample_rejections <= 1);
}

TEST_CASE("one-sample KS") {
  CHECK(ks_one_sample(uniforms(3, 0, 10000), oracle::uniform_cdf).p_value > 1e-3);
  CHECK(ks_one_sample(arcsine(4, 10000), oracle::arcsine_cdf).p_value > 1e-3);
  CHECK(ks_one_sample(uniforms(5, 0, 10000, 0.1), oracle::uniform_cdf).p_value < 1e-6);
}

TEST_CASE("Kolmogorov survival function") {
  CHECK(kolmogorov_survival(0.0) == 1.0);
  // Tabulated values of the Kolmogorov distribution.
  CHECK(kolmogorov_survival(1.36) == doctest::Approx(0.0494).epsilon(1e-2));
  CHECK(kolmogorov_survival(1.63) == doctest::Approx(0.0098).epsilon(2e-2));
  double prev = 1.0;
  bool decreasing = true;
  for (double l = 0.2; l < 3.0; l += 0.01) {
    const double p = kolmogorov_survival(l);
    decreasing = decreasing && p < prev;
    prev = p;
  }
  CHECK(decreasing);
  // Both series agree around the switch point.
  CHECK(kolmogorov_survival(1.1799999) == doctest::Approx(kolmogorov_survival(1.18)).epsilon(1e-6));
}

TEST_CASE("moments") {
  const std::vector<double> c(50, 1.5);
  for (const auto& m : moments(c, 3)) {
    CHECK(m.value == doctest::Approx(std::pow(1.5, m.order)));
    CHECK(m.se == doctest::Approx(0.0));
  }
  const auto u = moments(uniforms(6, 0, 100000), 1);
  CHECK(std::abs(u[0].value - 0.5) < 4 * u[0].se);
  const auto a = moments(arcsine(7, 100000), 2);
  CHECK(std::abs(a[1].value - 0.375) < 4 * a[1].se);
  // Jackknife SE of the mean equals the textbook s / sqrt(n).
  const auto x = uniforms(8, 0, 1000);
  CHECK(moments(x, 1)[0].se == doctest::Approx(oracle::se_mean(x)).epsilon(1e-10));
  CHECK_THROWS_AS(moments(std::vector<double>{}, 1), PreconditionError);
}

TEST_CASE("summaries") {
  const auto x = uniforms(9, 0, 20000);
  const MomentSummary s = summarize(x);
  CHECK(std::abs(s.mean - 0.5) < 4 * s.se_mean);
  CHECK(std::abs(s.variance - 1.0 / 12.0) < 4 * s.se_variance);

  std::vector<double> shifted, scaled;
  for (double v : x) {
    shifted.push_back(v + 100.0);
    scaled.push_back(3.0 * v);
  }
  CHECK(summarize(shifted).variance == doctest::Approx(s.variance).epsilon(1e-9));
  CHECK(summarize(scaled).variance == doctest::Approx(9.0 * s.variance).epsilon(1e-12));

  const MomentSummary small = summarize(std::span(x).first(2000));
  CHECK(small.se_mean > s.se_mean);

  RunningMoments left, right, all;
  for (std::size_t i = 0; i < x.size(); ++i) {
    (i < 7000 ? left : right).add(x[i]);
    all.add(x[i]);
  }
  left.merge(right);
  CHECK(left.count() == all.count());
  CHECK(left.mean() == doctest::Approx(all.mean()).epsilon(1e-14));
  CHECK(left.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
}

TEST_CASE("conductance experiment") {
  SUBCASE("CUE single channel variance 1/12") {
    DrawAudit audit;
    const auto r = conductance_experiment(CircularClass::CUE, 1, 1, 100000, 10, 1, &audit);
    CHECK(std::abs(r.summary.variance - 1.0 / 12.0) < 4 * r.summary.se_variance);
    CHECK(std::abs(r.summary.mean - 0.5) < 4 * r.summary.se_mean);
    CHECK(r.reference_variance == 1.0 / 16.0);
    CHECK(audit.unitarity <= 1e-10);
  }
  SUBCASE("CUE n = m = 24 approaches 1/16") {
    const auto r = conductance_experiment(CircularClass::CUE, 24, 24, 10000, 11, 1);
    CHECK(std::abs(r.summary.variance / 0.0625 - 1.0) < 0.10);
  }
  SUBCASE("undersized runs are rejected") {
    CHECK_THROWS_AS(conductance_experiment(CircularClass::CUE, 1, 1, 999, 1), PreconditionError);
  }
}
