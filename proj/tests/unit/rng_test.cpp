#include <array>

#include "doctest.h"
#include "quizboard/rng.hpp"

using quizboard::SplitMix64;

TEST_CASE("splitmix64 matches the reference sequence") {
  // First outputs for seed 1234567 from the published reference implementation.
  SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ull);
  CHECK(rng.next() == 3203168211198807973ull);
  CHECK(rng.next() == 9817491932198370423ull);
  CHECK(rng.next() == 4593380528125082431ull);
  CHECK(rng.next() == 16408922859458223821ull);
}

TEST_CASE("at() jumps straight to an output") {
  SplitMix64 rng(99);
  for (std::uint64_t i = 0; i < 50; ++i) CHECK(SplitMix64::at(99, i) == rng.next());
}

TEST_CASE("below stays in range and hits every value") {
  SplitMix64 rng(5);
  std::array<int, 7> seen{};
  for (int i = 0; i < 7000; ++i) {
    const auto v = rng.below(7);
    REQUIRE(v < 7);
    ++seen[v];
  }
  for (int count : seen) CHECK(count > 800);
}

TEST_CASE("between is inclusive") {
  SplitMix64 rng(11);
  bool lo = false, hi = false;
  for (int i = 0; i < 1000; ++i) {
    const int v = rng.between(4, 9);
    REQUIRE(v >= 4);
    REQUIRE(v <= 9);
    lo = lo || v == 4;
    hi = hi || v == 9;
  }
  CHECK(lo);
  CHECK(hi);
}

TEST_CASE("chance respects the edges") {
  SplitMix64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    CHECK_FALSE(rng.chance(0.0));
    CHECK(rng.chance(1.0));
  }
}

TEST_CASE("copies continue identically") {
  SplitMix64 a(42);
  a.next();
  SplitMix64 b = a;
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
}
