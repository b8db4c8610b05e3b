#pragma once

#include <cstdint>
#include <random>

namespace carinfo {

/// A single-owner stream of uniform bits derived from (seed, stream id).
///
/// Identical (seed, stream id) pairs produce bit-identical sequences on every
/// run. Distinct stream ids are decorrelated through a SplitMix64 expansion
/// feeding std::seed_seq. Streams may be moved between threads but must not be
/// shared concurrently.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Raw 64 random bits.
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform_open();

  /// Derives a child stream id from a parent id and a sub-index.
  static std::uint64_t derive_stream_id(std::uint64_t parent, std::uint64_t index) noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace carinfo
