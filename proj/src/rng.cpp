#include "tobitadf/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tobit {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c,
                         const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline double u64_to_unit(std::uint64_t x) {
  // 53 significant bits, value in [0, 1).
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace

const char* to_string(InnovationLaw law) {
  switch (law) {
    case InnovationLaw::gaussian: return "gaussian";
    case InnovationLaw::student_t5: return "student_t5";
    case InnovationLaw::rademacher: return "rademacher";
  }
  return "gaussian";
}

InnovationLaw innovation_law_from_string(const std::string& name) {
  if (name == "gaussian" || name == "normal") return InnovationLaw::gaussian;
  if (name == "student_t5" || name == "student") return InnovationLaw::student_t5;
  if (name == "rademacher") return InnovationLaw::rademacher;
  throw std::invalid_argument("unknown innovation law: " + name);
}

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    philox_round(counter, key);
  }
  return counter;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  key_ = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  hi_ = {static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
}

std::uint64_t RandomStream::next_u64_() {
  if (pos_ >= 4) {
    buf_ = philox4x32({static_cast<std::uint32_t>(block_),
                       static_cast<std::uint32_t>(block_ >> 32), hi_[0], hi_[1]},
                      key_);
    ++block_;
    pos_ = 0;
  }
  const std::uint64_t lo = buf_[pos_];
  const std::uint64_t hi = buf_[pos_ + 1];
  pos_ += 2;
  return lo | (hi << 32);
}

double RandomStream::uniform() { return u64_to_unit(next_u64_()); }

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  // u1 is kept strictly positive for the logarithm.
  const double u1 = static_cast<double>((next_u64_() >> 11) + 1) * 0x1.0p-53;
  const double u2 = u64_to_unit(next_u64_());
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double RandomStream::innovation(InnovationLaw law) {
  switch (law) {
    case InnovationLaw::gaussian:
      return normal();
    case InnovationLaw::student_t5: {
      const double z = normal();
      double chi2 = 0.0;
      for (int i = 0; i < 5; ++i) {
        const double g = normal();
        chi2 += g * g;
      }
      // Var(t_5) = 5/3; rescale to unit variance.
      return z / std::sqrt(chi2 / 5.0) * std::sqrt(3.0 / 5.0);
    }
    case InnovationLaw::rademacher:
      return uniform() < 0.5 ? -1.0 : 1.0;
  }
  return normal();
}

void RandomStream::fill_normal(std::span<double> out) {
  std::size_t i = 0;
  if (has_spare_ && i < out.size()) {
    has_spare_ = false;
    out[i++] = spare_normal_;
  }
  while (i + 1 < out.size()) {
    const double u1 = static_cast<double>((next_u64_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = u64_to_unit(next_u64_());
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out[i++] = radius * std::cos(angle);
    out[i++] = radius * std::sin(angle);
  }
  if (i < out.size()) out[i] = normal();
}

}  // namespace tobit
