#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tobitadf/rng.hpp"

using namespace tobit;

TEST_CASE("philox4x32 known-answer vectors") {
  // Reference vectors from the Random123 distribution (philox4x32, 10 rounds).
  auto zero = philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  auto ones = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                         {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);

  auto pi = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                       {0xa4093822u, 0x299f31d0u});
  CHECK(pi[0] == 0xd16cfe09u);
  CHECK(pi[1] == 0x94fdccebu);
  CHECK(pi[2] == 0x5001e420u);
  CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("streams are deterministic and distinct") {
  RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool same_ab = true, same_ac = true, same_ad = true;
  for (int i = 0; i < 64; ++i) {
    const double va = a.uniform();
    same_ab &= (va == b.uniform());
    same_ac &= (va == c.uniform());
    same_ad &= (va == d.uniform());
  }
  CHECK(same_ab);
  CHECK_FALSE(same_ac);
  CHECK_FALSE(same_ad);
}

TEST_CASE("uniform draws live in [0,1)") {
  RandomStream s(1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal moments") {
  RandomStream s(2024, 0);
  const std::size_t n = 1000000;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = s.normal();
    sum += z;
    sumsq += z * z;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sumsq / static_cast<double>(n) - mean * mean;
  CHECK(std::abs(mean) < 0.005);
  CHECK(std::abs(var - 1.0) < 0.01);
}

TEST_CASE("fill_normal matches sequential draws") {
  RandomStream a(9, 3), b(9, 3);
  std::vector<double> buf(101);
  a.fill_normal(buf);
  for (double v : buf) CHECK(v == b.normal());
}

TEST_CASE("alternative innovation laws have unit variance") {
  for (const auto law : {InnovationLaw::student_t5, InnovationLaw::rademacher}) {
    RandomStream s(5, 1);
    const std::size_t n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = s.innovation(law);
      sum += z;
      sumsq += z * z;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = sumsq / static_cast<double>(n) - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.03);
  }
}

TEST_CASE("innovation law names round-trip") {
  for (const auto law :
       {InnovationLaw::gaussian, InnovationLaw::student_t5, InnovationLaw::rademacher})
    CHECK(innovation_law_from_string(to_string(law)) == law);
  CHECK_THROWS(innovation_law_from_string("cauchy"));
}
