#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "pdembed/checks.hpp"
#include "pdembed/multiscale.hpp"

using namespace pdembed;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("schedule generators") {
  const ScaleSchedule coarse(ScheduleKind::coarse, 2);
  CHECK(coarse.weight(3) == doctest::Approx(1.0 / 3));
  CHECK(coarse.scale_at(3) == doctest::Approx(9.0));
  CHECK(coarse.weight_sq_sum() == doctest::Approx(kPi * kPi / 6));
  CHECK(coarse.norm_factor() == doctest::Approx(6 / (kPi * kPi)));
  CHECK(coarse.basepoint() == Diagram::all_diagonal(2));

  const ScaleSchedule uniform(ScheduleKind::uniform, 2);
  CHECK(uniform.scale_at(4) == doctest::Approx(0.25));
}

TEST_CASE("phi1 blocks vanish at the basepoint") {
  const ScaleSchedule s(ScheduleKind::coarse, 2);
  const auto blocks = embed_phi1_truncated(s.basepoint(), s, s.basepoint(), 5);
  REQUIRE(blocks.size() == 5);
  for (const auto& b : blocks) CHECK(b.norm() == 0.0);
}

TEST_CASE("phi1 rejects the wrong kind") {
  const ScaleSchedule s(ScheduleKind::uniform, 2);
  CHECK_THROWS_AS(embed_phi1_truncated(Diagram::all_diagonal(2), s, s.basepoint(), 3),
                  std::invalid_argument);
  const ScaleSchedule c(ScheduleKind::coarse, 2);
  CHECK_THROWS_AS(embed_phi2_truncated(Diagram::all_diagonal(2), c, 3), std::invalid_argument);
}

TEST_CASE("phi2 blocks of the all-diagonal diagram") {
  const std::size_t n = 2;
  const ScaleSchedule s(ScheduleKind::uniform, n);
  const auto blocks = embed_phi2_truncated(Diagram::all_diagonal(n), s, 4);
  REQUIRE(blocks.size() == 4);
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto& b = blocks[k - 1];
    REQUIRE(b.entries.size() == 1);
    const double want = s.weight(k) * std::pow(2.0, -double(n)) * 1.5 * s.scale_at(k);
    CHECK(b.entries.begin()->second == doctest::Approx(want));
  }
}

TEST_CASE("phi2 block norm never exceeds the crude cap") {
  std::mt19937_64 rng(31);
  const std::size_t n = 2;
  const ScaleSchedule s(ScheduleKind::uniform, n);
  for (int i = 0; i < 50; ++i) {
    const Diagram x = sample_diagram(rng, n, 10.0, 0.2);
    const auto blocks = embed_phi2_truncated(x, s, 6);
    for (std::size_t k = 1; k <= 6; ++k) {
      const double cap = 3.0 * s.weight(k) * s.scale_at(k);  // w 2^-n * sqrt(4^n) * 3R/2 * 2
      CHECK(blocks[k - 1].norm() <= cap + 1e-12);
    }
  }
}

TEST_CASE("certified distance basics") {
  const ScaleSchedule s(ScheduleKind::coarse, 2);
  const Diagram x({Point(1, 3), Point(2, 6)});
  const auto same = certified_distance(x, x, s, 1e-3);
  CHECK(same.lower == 0.0);
  CHECK(same.upper <= 1e-3);
  CHECK_THROWS_AS(certified_distance(x, x, s, 0.0), std::invalid_argument);
}

TEST_CASE("certified distance contracts on random pairs") {
  std::mt19937_64 rng(43);
  const std::size_t n = 2;
  const double eps = 1e-3;
  for (ScheduleKind kind : {ScheduleKind::coarse, ScheduleKind::uniform, ScheduleKind::combined}) {
    const ScaleSchedule s(kind, n);
    for (int i = 0; i < 60; ++i) {
      const Diagram x = sample_diagram(rng, n, 10.0, 0.2);
      const Diagram y = sample_diagram(rng, n, 10.0, 0.2);
      const double d = bottleneck_bruteforce(x, y);
      const auto iv = certified_distance(x, y, s, eps);
      CHECK(iv.lower >= 0.0);
      CHECK(iv.upper - iv.lower <= eps * (1 + 1e-12));
      CHECK(iv.upper <= d + eps);                       // 1-Lipschitz
      CHECK(iv.lower + eps >= rho_minus(s, d) - 1e-12); // distortion
    }
  }
}

TEST_CASE("truncated coarse distance matches the certified interval") {
  // independent cross-check: normalized explicit head sum lies inside the interval
  std::mt19937_64 rng(47);
  const std::size_t n = 2;
  const ScaleSchedule s(ScheduleKind::coarse, n);
  for (int i = 0; i < 10; ++i) {
    const Diagram x = sample_diagram(rng, n, 10.0, 0.2);
    const Diagram y = sample_diagram(rng, n, 10.0, 0.2);
    const std::size_t K = 400;
    const auto bx = embed_phi1_truncated(x, s, s.basepoint(), K);
    const auto by = embed_phi1_truncated(y, s, s.basepoint(), K);
    double sq = 0;
    for (std::size_t k = 0; k < K; ++k) {
      const double d = sparse_distance(bx[k], by[k]);
      sq += d * d;
    }
    const double head = s.norm_factor() * std::sqrt(sq);
    const auto iv = certified_distance(x, y, s, 1e-3);
    // head underestimates the true distance by the discarded tail only
    CHECK(head >= iv.lower - 0.05);
    CHECK(head <= iv.upper + 1e-9);
  }
}

TEST_CASE("rho minus frozen steps") {
  const std::size_t n = 2;
  const double base = std::pow(2.0, -double(n) - 2.5) / 3.0;
  const double c = 6 / (kPi * kPi);
  const ScaleSchedule coarse(ScheduleKind::coarse, n);
  // coarse: t in [i^2, (i+1)^2) -> c * base * i  (w_i R_i = i)
  CHECK(rho_minus(coarse, 0.5) == 0.0);
  CHECK(rho_minus(coarse, 1.0) == doctest::Approx(c * base * 1));
  CHECK(rho_minus(coarse, 8.9) == doctest::Approx(c * base * 2));
  CHECK(rho_minus(coarse, 9.0) == doctest::Approx(c * base * 3));
  CHECK(rho_minus(coarse, 100.0) == doctest::Approx(c * base * 10));
  CHECK_THROWS_AS(rho_minus(coarse, -1.0), std::invalid_argument);

  const ScaleSchedule uniform(ScheduleKind::uniform, n);
  // uniform: t in [1/i, 1/(i-1)) -> c * base / i^2
  CHECK(rho_minus(uniform, 2.0) == doctest::Approx(c * base));
  CHECK(rho_minus(uniform, 0.6) == doctest::Approx(c * base / 4));
  CHECK(rho_minus(uniform, 1.0 / 3) == doctest::Approx(c * base / 9));
  CHECK(rho_minus(uniform, 0.0) == 0.0);

  const ScaleSchedule combined(ScheduleKind::combined, n);
  const double rc = rho_minus(coarse, 2.0), ru = rho_minus(uniform, 2.0);
  CHECK(rho_minus(combined, 2.0) == doctest::Approx(std::sqrt((rc * rc + ru * ru) / 2)));
}

TEST_CASE("rho minus improved") {
  const std::size_t n = 2;
  const double base = std::pow(2.0, -double(n) - 2.5) / 3.0;
  const double c = 6 / (kPi * kPi);
  const ScaleSchedule coarse(ScheduleKind::coarse, n);
  const ScaleSchedule uniform(ScheduleKind::uniform, n);

  // first coarse step: single term, equals rho_minus
  CHECK(rho_minus_improved(coarse, 1.5) == doctest::Approx(rho_minus(coarse, 1.5)));
  // uniform at t = 1: closed form sqrt(sum j^-4) = sqrt(pi^4/90)
  CHECK(rho_minus_improved(uniform, 1.0) ==
        doctest::Approx(c * base * std::sqrt(std::pow(kPi, 4) / 90)));
  // dominates rho_minus on a grid
  for (int i = 0; i < 1000; ++i) {
    const double t = 0.01 + i * 0.11;
    CHECK(rho_minus_improved(coarse, t) >= rho_minus(coarse, t) - 1e-15);
    CHECK(rho_minus_improved(uniform, t) >= rho_minus(uniform, t) - 1e-15);
  }
}

TEST_CASE("rho minus monotone in t for the coarse kind") {
  const ScaleSchedule coarse(ScheduleKind::coarse, 2);
  double prev = 0;
  for (int i = 0; i <= 400; ++i) {
    const double v = rho_minus(coarse, i * 0.5);
    CHECK(v >= prev);
    prev = v;
  }
  // strictly positive for t > 0 in the uniform kind
  const ScaleSchedule uniform(ScheduleKind::uniform, 2);
  for (double t : {1e-4, 1e-2, 0.5, 3.0}) CHECK(rho_minus(uniform, t) > 0.0);
}
