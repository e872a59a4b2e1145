#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "rmtjac/ensembles.hpp"
#include "rmtjac/jacobi_density.hpp"
#include "rmtjac/mcmc.hpp"
#include "rmtjac/rng.hpp"

namespace rmtjac {

enum class ConstructionKind { HaarBlock, Wishart, Projection, ThreeLead, CircularTransmission, MCMC };

/// CLI spelling: haar-block, wishart, projection, three-lead, circular, mcmc.
std::string_view kind_name(ConstructionKind kind);
ConstructionKind parse_construction_kind(std::string_view name);

/// One sampled spectrum with its provenance. Jacobi-type constructions hold
/// y values; CircularTransmission holds transmission eigenvalues T = lambda^2.
struct SpectrumSample {
  std::vector<double> values;  // ascending, within [0, 1]
  std::variant<JacobiParams, TransmissionParams> params;
  ConstructionKind kind;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

/// Worst-case structural residuals and resample counts seen across draws.
/// Fields that do not apply to a construction stay at zero.
struct DrawAudit {
  double unitarity = 0.0;   // Haar factor or scattering matrix
  double symmetry = 0.0;    // COE symmetry / CSE self-duality
  double kramers = 0.0;     // Kramers pair split (quaternion cases)
  double flux = 0.0;        // r^dagger r + t^dagger t - I
  double trace = 0.0;       // Tr(t^dagger t) - Tr(t'^dagger t')
  double reflection = 0.0;  // eig(r'^dagger r') vs 1 - T
  double gram = 0.0;        // relative ||(Y + Z) - X^dagger X|| in the projection route
  std::size_t resamples = 0;
  std::size_t draws = 0;

  void merge(const DrawAudit& other);
};

/// Eigenvalues of A^dagger A for the top-left n1 x n2 block A of a Haar
/// matrix of size N.
SpectrumSample haar_block_spectrum(const JacobiParams& p, RngStream& rng, DrawAudit* audit = nullptr);

/// Throws PreconditionError unless n1 >= n2 and n2 <= N - n1, naming the
/// violated inequality.
void require_wishart_ranks(int n1, int n2, int N);

/// Eigenvalues of (C+D)^{-1/2} C (C+D)^{-1/2}, C ~ W(beta, n1, n2),
/// D ~ W(beta, N - n1, n2). PSD-floor hits are redrawn and counted.
SpectrumSample wishart_spectrum(const JacobiParams& p, RngStream& rng, DrawAudit* audit = nullptr);

/// Random projection route: X ~ Ginibre(N x m), Q1/Q2 the top n / bottom
/// N - n rows of a Haar matrix, Y = (Q1 X)^dagger (Q1 X), Z likewise; returns
/// eig((Y+Z)^{-1/2} Y (Y+Z)^{-1/2}). Requires n >= m and N - n >= m. A
/// relative mismatch between Y + Z and X^dagger X above 1e-9 throws
/// StructureError.
SpectrumSample projection_spectrum(Beta beta, int N, int n, int m, RngStream& rng,
                                   DrawAudit* audit = nullptr);

/// Three-lead cavity (beta = 2): eigenvalues of t12^dagger t12 where t12 is
/// the N1 x N2 block in block-row 1, block-column 2 of a Haar unitary of size
/// N1 + N2 + N3.
SpectrumSample three_lead_spectrum(int N1, int N2, int N3, RngStream& rng, DrawAudit* audit = nullptr);

/// Transmission eigenvalues T of a circular-ensemble scattering matrix with n
/// left and m right channels.
SpectrumSample circular_transmission_spectrum(CircularClass cls, int n, int m, RngStream& rng,
                                              DrawAudit* audit = nullptr);

/// Everything needed to draw a batch from one construction.
struct SpectrumRequest {
  ConstructionKind kind = ConstructionKind::HaarBlock;
  Beta beta = Beta::Complex;
  int N = 0, n1 = 0, n2 = 0;     // haar-block, wishart, projection (n = n1, m = n2), mcmc
  int n = 0, m = 0;              // circular
  int N1 = 0, N2 = 0, N3 = 0;    // three-lead
  McmcConfig mcmc;               // steps are derived from the batch size
  std::size_t chains = 4;        // mcmc only

  /// Validates the dimensions the chosen construction needs.
  void validate() const;
};

/// Draws `count` spectra. Draw i uses stream (master_seed, i), so results are
/// identical for every thread count. MCMC runs `chains` independent chains on
/// streams 0..chains-1 and concatenates them in chain order.
std::vector<SpectrumSample> sample_spectra(const SpectrumRequest& request, std::size_t count,
                                           std::uint64_t master_seed, unsigned threads,
                                           DrawAudit* audit = nullptr);

}  // namespace rmtjac
