#include "rmtjac/constructions.hpp"

#include <algorithm>
#include <string>

#include "rmtjac/errors.hpp"
#include "rmtjac/linalg.hpp"
#include "rmtjac/parallel.hpp"
#include "rmtjac/scattering.hpp"

namespace rmtjac {

namespace {

constexpr double kSpectrumDrift = 1e-12;
constexpr double kGramTolerance = 1e-9;
constexpr int kMaxAttempts = 64;

// Sorted spectrum of a Hermitian matrix in [0,1], Kramers-merged for
// quaternion input.
std::vector<double> unit_spectrum(const CMatrix& h, Beta beta, DrawAudit* audit) {
  CMatrix sym = 0.5 * (h + h.adjoint());
  const Eigen::VectorXd e = hermitian_eigenvalues(sym);
  std::vector<double> values;
  if (beta == Beta::Quaternion) {
    if (audit != nullptr) audit->kramers = std::max(audit->kramers, kramers_split(e));
    values = kramers_deduplicate(e);
  } else {
    values.assign(e.data(), e.data() + e.size());
  }
  for (double& v : values) {
    if (v < -kSpectrumDrift || v > 1.0 + kSpectrumDrift) {
      throw StructureError("eigenvalue " + std::to_string(v) + " outside [0, 1]");
    }
    v = std::clamp(v, 0.0, 1.0);
  }
  return values;
}

void note_unitarity(DrawAudit* audit, const CMatrix& u) {
  if (audit != nullptr) audit->unitarity = std::max(audit->unitarity, unitarity_residual(u));
}

SpectrumSample make_sample(std::vector<double> values, std::variant<JacobiParams, TransmissionParams> params,
                           ConstructionKind kind, const RngStream& rng) {
  return SpectrumSample{std::move(values), params, kind, rng.master_seed(), rng.stream_index()};
}

}  // namespace

void DrawAudit::merge(const DrawAudit& other) {
  unitarity = std::max(unitarity, other.unitarity);
  symmetry = std::max(symmetry, other.symmetry);
  kramers = std::max(kramers, other.kramers);
  flux = std::max(flux, other.flux);
  trace = std::max(trace, other.trace);
  reflection = std::max(reflection, other.reflection);
  gram = std::max(gram, other.gram);
  resamples += other.resamples;
  draws += other.draws;
}

std::string_view kind_name(ConstructionKind kind) {
  switch (kind) {
    case ConstructionKind::HaarBlock:
      return "haar-block";
    case ConstructionKind::Wishart:
      return "wishart";
    case ConstructionKind::Projection:
      return "projection";
    case ConstructionKind::ThreeLead:
      return "three-lead";
    case ConstructionKind::CircularTransmission:
      return "circular";
    case ConstructionKind::MCMC:
      return "mcmc";
  }
  return "unknown";
}

ConstructionKind parse_construction_kind(std::string_view name) {
  for (const auto kind : {ConstructionKind::HaarBlock, ConstructionKind::Wishart,
                          ConstructionKind::Projection, ConstructionKind::ThreeLead,
                          ConstructionKind::CircularTransmission, ConstructionKind::MCMC}) {
    if (kind_name(kind) == name) return kind;
  }
  throw PreconditionError("unknown construction '" + std::string(name) +
                          "' (expected haar-block|wishart|projection|three-lead|circular|mcmc)");
}

SpectrumSample haar_block_spectrum(const JacobiParams& p, RngStream& rng, DrawAudit* audit) {
  const Index s = block_size(p.beta);
  std::size_t resamples = 0;
  const FieldMatrix u = sample_haar(p.beta, p.N, rng, &resamples);
  note_unitarity(audit, u.data());
  const auto a = u.data().topLeftCorner(s * p.n1, s * p.n2);
  std::vector<double> values = unit_spectrum(a.adjoint() * a, p.beta, audit);
  if (audit != nullptr) {
    audit->resamples += resamples;
    ++audit->draws;
  }
  return make_sample(std::move(values), p, ConstructionKind::HaarBlock, rng);
}

void require_wishart_ranks(int n1, int n2, int N) {
  if (n2 < 1) throw PreconditionError("wishart: n2 >= 1 violated");
  if (n1 < n2) {
    throw PreconditionError("wishart: n2 <= n1 violated (n1 = " + std::to_string(n1) +
                            ", n2 = " + std::to_string(n2) + ")");
  }
  if (n2 > N - n1) {
    throw PreconditionError("wishart: n2 <= N - n1 violated (n2 = " + std::to_string(n2) +
                            ", N - n1 = " + std::to_string(N - n1) + ")");
  }
}

SpectrumSample wishart_spectrum(const JacobiParams& p, RngStream& rng, DrawAudit* audit) {
  require_wishart_ranks(p.n1, p.n2, p.N);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const FieldMatrix c = sample_wishart(p.beta, p.n1, p.n2, rng);
    const FieldMatrix d = sample_wishart(p.beta, p.N - p.n1, p.n2, rng);
    FieldMatrix whitener = FieldMatrix::zero(p.beta, p.n2, p.n2);
    try {
      whitener = psd_sqrt_inv(c + d);
    } catch (const SingularityError&) {
      if (audit != nullptr) ++audit->resamples;
      continue;
    }
    const CMatrix j = whitener.data() * c.data() * whitener.data();
    std::vector<double> values = unit_spectrum(j, p.beta, audit);
    if (audit != nullptr) ++audit->draws;
    return make_sample(std::move(values), p, ConstructionKind::Wishart, rng);
  }
  throw SingularityError("wishart: repeated PSD-floor hits");
}

SpectrumSample projection_spectrum(Beta beta, int N, int n, int m, RngStream& rng, DrawAudit* audit) {
  if (m < 1) throw PreconditionError("projection: m >= 1 violated");
  if (n < m) throw PreconditionError("projection: n >= m violated");
  if (N - n < m) throw PreconditionError("projection: N - n >= m violated");
  const JacobiParams params = JacobiParams::make(beta, n, m, N);
  const Index s = block_size(beta);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const FieldMatrix x = sample_ginibre(beta, N, m, rng);
    std::size_t resamples = 0;
    const FieldMatrix u = sample_haar(beta, N, rng, &resamples);
    if (audit != nullptr) audit->resamples += resamples;
    note_unitarity(audit, u.data());

    const CMatrix q1x = u.data().topRows(s * n) * x.data();
    const CMatrix q2x = u.data().bottomRows(s * (N - n)) * x.data();
    const CMatrix y = q1x.adjoint() * q1x;
    const CMatrix z = q2x.adjoint() * q2x;
    const CMatrix gram = x.data().adjoint() * x.data();
    const double mismatch = (y + z - gram).norm() / gram.norm();
    if (audit != nullptr) audit->gram = std::max(audit->gram, mismatch);
    if (mismatch > kGramTolerance) {
      throw StructureError("projection: Y + Z differs from X^dagger X (relative " +
                           std::to_string(mismatch) + ")");
    }

    CMatrix yz = y + z;
    yz = (0.5 * (yz + yz.adjoint())).eval();
    if (beta == Beta::Real) yz = yz.real().cast<Complex>();
    FieldMatrix whitener = FieldMatrix::zero(beta, m, m);
    try {
      whitener = psd_sqrt_inv(FieldMatrix(beta, std::move(yz)));
    } catch (const SingularityError&) {
      if (audit != nullptr) ++audit->resamples;
      continue;
    }
    std::vector<double> values = unit_spectrum(whitener.data() * y * whitener.data(), beta, audit);
    if (audit != nullptr) ++audit->draws;
    return make_sample(std::move(values), params, ConstructionKind::Projection, rng);
  }
  throw SingularityError("projection: repeated singular X^dagger X");
}

SpectrumSample three_lead_spectrum(int N1, int N2, int N3, RngStream& rng, DrawAudit* audit) {
  if (N2 < 1 || N3 < 0) throw PreconditionError("three-lead: N2 >= 1 and N3 >= 0 required");
  if (N1 < N2) throw PreconditionError("three-lead: N1 >= N2 violated");
  const int N = N1 + N2 + N3;
  const JacobiParams params = JacobiParams::make(Beta::Complex, N1, N2, N);
  std::size_t resamples = 0;
  const FieldMatrix s = sample_haar(Beta::Complex, N, rng, &resamples);
  note_unitarity(audit, s.data());
  const auto t12 = s.data().block(0, N1, N1, N2);
  std::vector<double> values = unit_spectrum(t12.adjoint() * t12, Beta::Complex, audit);
  if (audit != nullptr) {
    audit->resamples += resamples;
    ++audit->draws;
  }
  return make_sample(std::move(values), params, ConstructionKind::ThreeLead, rng);
}

SpectrumSample circular_transmission_spectrum(CircularClass cls, int n, int m, RngStream& rng,
                                              DrawAudit* audit) {
  const TransmissionParams params = TransmissionParams::make(class_beta(cls), n, m);
  std::size_t resamples = 0;
  const ScatteringMatrix sm(sample_circular(cls, n + m, rng, &resamples), n, m, cls);
  std::vector<double> values = transmission_eigenvalues(sm);
  if (audit != nullptr) {
    const SymmetryResiduals sym = symmetry_residuals(sm);
    const FluxResiduals flux = flux_residuals(sm);
    audit->unitarity = std::max(audit->unitarity, sym.unitarity);
    audit->symmetry = std::max(audit->symmetry, sym.symmetry);
    audit->flux = std::max(audit->flux, flux.flux);
    audit->trace = std::max(audit->trace, flux.trace);
    audit->reflection = std::max(audit->reflection, flux.reflection);
    audit->kramers = std::max(audit->kramers, flux.kramers);
    audit->resamples += resamples;
    ++audit->draws;
  }
  return make_sample(std::move(values), params, ConstructionKind::CircularTransmission, rng);
}

void SpectrumRequest::validate() const {
  switch (kind) {
    case ConstructionKind::HaarBlock:
    case ConstructionKind::MCMC:
      JacobiParams::make(beta, n1, n2, N);
      break;
    case ConstructionKind::Wishart:
      require_wishart_ranks(n1, n2, N);
      break;
    case ConstructionKind::Projection:
      if (n2 < 1) throw PreconditionError("projection: m >= 1 violated");
      if (n1 < n2) throw PreconditionError("projection: n >= m violated");
      if (N - n1 < n2) throw PreconditionError("projection: N - n >= m violated");
      break;
    case ConstructionKind::ThreeLead:
      if (beta != Beta::Complex) throw PreconditionError("three-lead: only beta = 2 is supported");
      if (N2 < 1 || N3 < 0) throw PreconditionError("three-lead: N2 >= 1 and N3 >= 0 required");
      if (N1 < N2) throw PreconditionError("three-lead: N1 >= N2 violated");
      break;
    case ConstructionKind::CircularTransmission:
      TransmissionParams::make(beta, n, m);
      break;
  }
}

namespace {

std::vector<SpectrumSample> sample_mcmc(const SpectrumRequest& req, std::size_t count,
                                        std::uint64_t master_seed, unsigned threads) {
  const JacobiParams params = JacobiParams::make(req.beta, req.n1, req.n2, req.N);
  const std::size_t chains = std::max<std::size_t>(1, std::min(req.chains, std::max<std::size_t>(count, 1)));
  const LogDensity target = [params](std::span<const double> y) { return log_density_jacobi(y, params); };

  auto run_chain = [&](std::size_t c) {
    const std::size_t want = count / chains + (c < count % chains ? 1 : 0);
    McmcConfig cfg = req.mcmc;
    const std::size_t burn = cfg.burn_in.value_or(std::max<std::size_t>(1000, want * cfg.thin / 4));
    cfg.burn_in = burn;
    cfg.steps = burn + want * cfg.thin;
    RngStream rng(master_seed, c);
    McmcResult result = mcmc_sample(target, static_cast<std::size_t>(params.n2), cfg, rng);
    std::vector<SpectrumSample> out;
    out.reserve(result.samples.size());
    for (auto& values : result.samples) {
      out.push_back(SpectrumSample{std::move(values), params, ConstructionKind::MCMC, master_seed, c});
    }
    return out;
  };

  const auto per_chain = parallel_generate(chains, threads, run_chain);
  std::vector<SpectrumSample> out;
  out.reserve(count);
  for (const auto& chunk : per_chain) out.insert(out.end(), chunk.begin(), chunk.end());
  return out;
}

}  // namespace

std::vector<SpectrumSample> sample_spectra(const SpectrumRequest& req, std::size_t count,
                                           std::uint64_t master_seed, unsigned threads,
                                           DrawAudit* audit) {
  req.validate();
  if (req.kind == ConstructionKind::MCMC) return sample_mcmc(req, count, master_seed, threads);

  struct Draw {
    SpectrumSample sample;
    DrawAudit audit;
  };
  const auto draws = parallel_generate(count, threads, [&](std::size_t i) {
    RngStream rng(master_seed, i);
    Draw d{{}, {}};
    switch (req.kind) {
      case ConstructionKind::HaarBlock:
        d.sample = haar_block_spectrum(JacobiParams::make(req.beta, req.n1, req.n2, req.N), rng, &d.audit);
        break;
      case ConstructionKind::Wishart:
        d.sample = wishart_spectrum(JacobiParams{req.beta, req.n1, req.n2, req.N}, rng, &d.audit);
        break;
      case ConstructionKind::Projection:
        d.sample = projection_spectrum(req.beta, req.N, req.n1, req.n2, rng, &d.audit);
        break;
      case ConstructionKind::ThreeLead:
        d.sample = three_lead_spectrum(req.N1, req.N2, req.N3, rng, &d.audit);
        break;
      case ConstructionKind::CircularTransmission:
        d.sample = circular_transmission_spectrum(circular_class_for(req.beta), req.n, req.m, rng, &d.audit);
        break;
      case ConstructionKind::MCMC:
        break;
    }
    return d;
  });

  std::vector<SpectrumSample> out;
  out.reserve(count);
  for (const auto& d : draws) {
    out.push_back(d.sample);
    if (audit != nullptr) audit->merge(d.audit);
  }
  return out;
}

}  // namespace rmtjac
