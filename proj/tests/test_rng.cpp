#include "doctest.h"

#include <random>
#include <set>

#include "antihom/rng.hpp"

using namespace antihom;

TEST_CASE("philox4x32-10 known answers") {
  using C = Philox4x32::Counter;
  CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  static_assert(Philox4x32::block({0, 0, 0, 0}, {0, 0})[0] == 0x6627e8d5);
}

TEST_CASE("streams are reproducible and distinct") {
  PhiloxStream a(5, 0), b(5, 0), c(5, 1), d(6, 0);
  std::set<std::uint32_t> firsts;
  for (int i = 0; i < 10; ++i) {
    const auto x = a();
    CHECK(x == b());
    firsts.insert(x);
  }
  CHECK(c() != PhiloxStream(5, 0)());
  CHECK(d() != PhiloxStream(5, 0)());
  CHECK(firsts.size() == 10);
}

TEST_CASE("uniform doubles and poisson draws") {
  PhiloxStream s(1, 2);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = s.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / 20000 == doctest::Approx(0.5).epsilon(0.02));
  std::poisson_distribution<long> pois(750.0);
  double mean = 0.0;
  for (int i = 0; i < 4000; ++i) mean += static_cast<double>(pois(s));
  CHECK(mean / 4000 == doctest::Approx(750.0).epsilon(0.01));
}
