#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace tobit {

enum class InnovationLaw { gaussian, student_t5, rademacher };

const char* to_string(InnovationLaw law);
InnovationLaw innovation_law_from_string(const std::string& name);

/// One block of the Philox-4x32 counter-based generator, 10 rounds
/// (Salmon, Moraes, Dror & Shaw, SC 2011).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// A deterministic random stream addressed by (seed, stream id).
///
/// The 64-bit seed forms the Philox key and the 64-bit stream id occupies
/// the upper half of the counter, so distinct stream ids yield
/// non-overlapping sequences under the same seed.  Replication-parallel
/// code derives one stream per replication index, which makes every result
/// independent of how replications are scheduled across threads.
///
/// Normal variates use the Box-Muller transform on 53-bit uniforms.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform draw on [0, 1).
  double uniform();

  /// Standard normal draw.
  double normal();

  /// Unit-variance draw from the given law (Student-t(5) is rescaled by
  /// sqrt(3/5), Rademacher is +-1).
  double innovation(InnovationLaw law);

  void fill_normal(std::span<double> out);

  std::uint64_t seed_value() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

 private:
  std::uint64_t next_u64_();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> hi_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;  // consumed 32-bit words in buf_
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace tobit
