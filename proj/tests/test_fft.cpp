#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mcsa/fft.hpp"
#include "test_util.hpp"

using testutil::brute_dft;
using testutil::cplx;
using testutil::random_complex;
using testutil::rel_l2;

TEST_CASE("dft matches the brute-force sum for power-of-two and odd lengths") {
  std::mt19937_64 rng(1234);
  for (std::size_t n : {2u, 3u, 5u, 16u, 100u, 101u, 128u, 1000u}) {
    const std::vector<cplx> x = random_complex(n, rng);
    const std::vector<cplx> got = mcsa::fft::dft(x);
    const std::vector<cplx> want = brute_dft(x);
    CAPTURE(n);
    CHECK(rel_l2(got, want) < 1e-11);
  }
}

TEST_CASE("idft inverts dft") {
  std::mt19937_64 rng(99);
  for (std::size_t n : {8u, 37u, 256u, 4000u}) {
    const std::vector<cplx> x = random_complex(n, rng);
    const std::vector<cplx> back = mcsa::fft::idft(mcsa::fft::dft(x));
    CAPTURE(n);
    CHECK(rel_l2(back, x) < 1e-12);
  }
}

TEST_CASE("degenerate lengths") {
  CHECK(mcsa::fft::dft({}).empty());
  const std::vector<cplx> one{cplx(3.0, -2.0)};
  const auto out = mcsa::fft::dft(one);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == one[0]);
}
