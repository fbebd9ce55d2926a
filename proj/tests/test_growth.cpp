#include "enumlab/growth.hpp"

#include <cmath>

#include "doctest.h"

using namespace enumlab;
using growth::Classification;
using growth::ObservationSeries;
using growth::SynthKind;

namespace {

ObservationSeries series_of(SynthKind kind, double k, double m, unsigned n_end) {
  return growth::synth_series(kind, k, m, n_end);
}

}  // namespace

TEST_CASE("g is the log base n of the observation") {
  CHECK(growth::g_value(16, 4) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(growth::g_value(65536, 16) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(growth::g_value(1, 7) == 0.0);
  CHECK_THROWS_AS(growth::g_value(10, 1), std::invalid_argument);
  CHECK_THROWS_AS(growth::g_value(0, 3), std::invalid_argument);
}

TEST_CASE("series enforce their domain") {
  ObservationSeries s;
  CHECK_THROWS_AS(s.set(1, 10), std::invalid_argument);
  CHECK_THROWS_AS(s.set(4, 0), std::invalid_argument);
  s.set(2, 1);
  CHECK(s.points.at(2) == 1);
}

TEST_CASE("u is the ceiling of the max g over the window") {
  auto squares = series_of(SynthKind::Polynomial, 2, 1, 16);
  CHECK(growth::u_ceiling(squares, 16) == 2);

  auto doubling = series_of(SynthKind::Exponential, 1, 1, 16);
  CHECK(growth::u_ceiling(doubling, 16) == 4);  // g(16) = 4 exactly
  CHECK(growth::u_ceiling(doubling, 8) == 3);   // max g = log_8 256 = 8/3

  ObservationSeries gap;
  gap.set(2, 4);
  gap.set(4, 16);
  CHECK_THROWS_WITH_AS(growth::u_ceiling(gap, 4), doctest::Contains("n=3"),
                       std::invalid_argument);
  CHECK_THROWS_AS(growth::u_ceiling(gap, 1), std::invalid_argument);
}

TEST_CASE("metric carries recomputable per-point values") {
  auto cubes = series_of(SynthKind::Polynomial, 3, 1, 16);
  auto m = growth::metric(cubes, 16);
  CHECK(m.u == growth::u_ceiling(cubes, 16));
  CHECK(m.g_points.size() == 15);
  for (const auto& [n, g] : m.g_points)
    CHECK(g == doctest::Approx(growth::g_value(cubes.points.at(n), n)));
}

TEST_CASE("classification compares u across checkpoints") {
  auto cubes = series_of(SynthKind::Polynomial, 3, 1, 64);
  unsigned cps_poly[] = {8, 16, 32};
  CHECK(growth::classify(cubes, cps_poly) == Classification::PossiblePolynomial);

  auto doubling = series_of(SynthKind::Exponential, 1, 1, 16);
  unsigned cps_exp[] = {8, 16};
  CHECK(growth::classify(doubling, cps_exp) == Classification::NotPolynomial);

  auto wobble = series_of(SynthKind::Oscillating, 0, 0, 64);
  CHECK(growth::classify(wobble, cps_poly) == Classification::PossiblePolynomial);
}

TEST_CASE("classification rejects bad checkpoint lists") {
  auto squares = series_of(SynthKind::Polynomial, 2, 1, 16);
  unsigned one[] = {8};
  CHECK_THROWS_AS(growth::classify(squares, one), std::invalid_argument);
  unsigned unsorted[] = {16, 8};
  CHECK_THROWS_AS(growth::classify(squares, unsorted), std::invalid_argument);
  unsigned beyond[] = {8, 32};
  CHECK_THROWS_AS(growth::classify(squares, beyond), std::invalid_argument);
}

TEST_CASE("synthetic generators produce the exact integer series") {
  auto poly = series_of(SynthKind::Polynomial, 2, 1, 4);
  CHECK(poly.points == std::map<unsigned, growth::big_steps>{{2, 4}, {3, 9}, {4, 16}});

  auto expo = series_of(SynthKind::Exponential, 1, 1, 4);
  CHECK(expo.points == std::map<unsigned, growth::big_steps>{{2, 4}, {3, 8}, {4, 16}});

  CHECK(growth::synth_point(SynthKind::Oscillating, 0, 0, 2) == 8);  // 2^(2+cos 2π)
  CHECK(growth::synth_point(SynthKind::Oscillating, 0, 0, 3) == 3);  // odd: n^1
  CHECK(growth::synth_point(SynthKind::Polynomial, 1, 0.5, 2) == 1);
  CHECK(growth::synth_point(SynthKind::Polynomial, 1, 0.5, 5) == 3);  // round half up
}

TEST_CASE("synthetic generators reject bad parameters and overflow") {
  CHECK_THROWS_AS(growth::synth_point(SynthKind::Polynomial, 0, 1, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(growth::synth_point(SynthKind::Polynomial, 2, -1, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(growth::synth_point(SynthKind::Exponential, 2, 1, 16),
                  ConstraintError);  // 2^(16^2) is past the budget
  CHECK_NOTHROW(growth::synth_point(SynthKind::Exponential, 1, 8, 64));  // 2^67 fits
  CHECK_THROWS_AS(growth::synth_series(SynthKind::Polynomial, 2, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("polynomial series with M > 1 start at log2(M) + k and fall") {
  for (double m_factor : {2.0, 8.0}) {
    for (double k : {1.0, 2.0, 3.0}) {
      auto s = series_of(SynthKind::Polynomial, k, m_factor, 64);
      double first = growth::g_value(s.points.at(2), 2);
      CHECK(first == doctest::Approx(std::log2(m_factor) + k).epsilon(1e-9));
      double prev = first;
      for (unsigned n = 3; n <= 64; ++n) {
        double g = growth::g_value(s.points.at(n), n);
        CHECK(g < prev);
        prev = g;
      }
    }
  }
}

TEST_CASE("polynomial g approaches k at large n") {
  for (double k : {1.0, 2.0, 3.0, 5.0}) {
    for (double m_factor : {0.5, 1.0, 8.0}) {
      unsigned n = 1'000'000;
      auto steps = growth::synth_point(SynthKind::Polynomial, k, m_factor, n);
      double g = growth::g_value(steps, n);
      double slack = std::abs(std::log(m_factor) / std::log(n));
      CHECK(std::abs(g - k) <= slack + 1e-6);
    }
  }
}

TEST_CASE("exponential g keeps rising and escapes any fixed bound") {
  auto s = series_of(SynthKind::Exponential, 1, 1, 64);
  for (unsigned n : {4u, 8u, 16u, 32u}) {
    double lo = growth::g_value(s.points.at(n), n);
    double hi = growth::g_value(s.points.at(2 * n), 2 * n);
    CHECK(hi > lo);
  }
  bool escaped = false;
  for (unsigned n = 2; n <= 64; ++n)
    if (growth::g_value(s.points.at(n), n) > 8.0) escaped = true;
  CHECK(escaped);  // g(64) = 64/6 > 8
}

TEST_CASE("the oscillating series stays bounded by 3") {
  auto s = series_of(SynthKind::Oscillating, 0, 0, 64);
  for (unsigned n = 2; n <= 64; ++n)
    CHECK(growth::g_value(s.points.at(n), n) <= 3.0 + growth::kCeilingEpsilon);
  CHECK(growth::u_ceiling(s, 64) == 3);
  unsigned cps[] = {8, 16, 32, 64};
  CHECK(growth::classify(s, cps) == Classification::PossiblePolynomial);
}

TEST_CASE("u from candidate worst steps uses sizes from 2 and defaults to 0") {
  std::map<unsigned, std::uint64_t> flat{{1, 1}, {2, 1}, {3, 1}};
  CHECK(growth::u_from_worst_steps(flat, 3) == 0);
  CHECK(growth::u_from_worst_steps(flat, 1) == 0);  // no growth points yet
  std::map<unsigned, std::uint64_t> quad{{1, 1}, {2, 4}, {3, 9}, {4, 16}};
  CHECK(growth::u_from_worst_steps(quad, 4) == 2);
}

TEST_CASE("series files round-trip, including 128-bit values") {
  auto s = series_of(SynthKind::Exponential, 1, 8, 64);
  auto back = growth::parse_series(growth::format_series(s));
  CHECK(back.points == s.points);
  CHECK(u128_to_string(s.points.at(64)) == "147573952589676412928");  // 8·2^64

  CHECK_THROWS_AS(growth::parse_series("2 x\n"), std::invalid_argument);
  CHECK_THROWS_AS(growth::parse_series("junk\n"), std::invalid_argument);
  CHECK(growth::parse_series("# comment\n\n2 4\n").points.at(2) == 4);
}
