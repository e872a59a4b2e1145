#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace rmtjac {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream keyed by (master_seed, stream_index).
///
/// The Philox key is the master seed; the 128-bit counter holds the draw
/// counter in its low half and the stream index in its high half. Any replica
/// can therefore be regenerated on its own, independent of which worker ran
/// it. Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform();

  /// Standard normal via Box-Muller.
  double normal();

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }
  /// Number of Philox blocks consumed so far.
  std::uint64_t draw_counter() const { return block_counter_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t block_counter_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Derives an independent master seed for a named sub-experiment.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label);

}  // namespace rmtjac
