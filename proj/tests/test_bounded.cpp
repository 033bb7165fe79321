#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "pdembed/bounded.hpp"
#include "pdembed/checks.hpp"

using namespace pdembed;

namespace {

// in-frame sampler: death <= L guaranteed by sample_diagram's construction
Diagram sample_in_frame(std::mt19937_64& rng, std::size_t n, double L) {
  return sample_diagram(rng, n, L, 0.2);
}

double base_factor(std::size_t n) {
  return std::pow(2.0, -(static_cast<double>(n) + 2.5)) / 3.0;
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK_NOTHROW(BoundedEmbeddingSpec::make(5, {1, 2}, {std::sqrt(0.5), std::sqrt(0.5)}, 2));
  CHECK_THROWS_AS(BoundedEmbeddingSpec::make(5, {2, 1}, {std::sqrt(0.5), std::sqrt(0.5)}, 2),
                  std::invalid_argument);  // not increasing
  CHECK_THROWS_AS(BoundedEmbeddingSpec::make(5, {1, 6}, {std::sqrt(0.5), std::sqrt(0.5)}, 2),
                  std::invalid_argument);  // scale beyond frame
  CHECK_THROWS_AS(BoundedEmbeddingSpec::make(5, {1, 2}, {1.0, 1.0}, 2),
                  std::invalid_argument);  // not a unit vector
  CHECK_THROWS_AS(BoundedEmbeddingSpec::make(5, {}, {}, 2), std::invalid_argument);
}

TEST_CASE("landmark counts frozen examples") {
  CHECK(count_landmarks(1.0, 1.0, 1) == 1);  // G = 0, Delta only
  // R = L/8: keys (1,4),(1,6),(1,8),(3,6),(3,8),(5,8) -> G = 6
  CHECK(eligible_grid_keys(1.0, 8.0) == 6);
  CHECK(count_landmarks(1.0, 8.0, 1) == 7);
  CHECK(count_landmarks(1.0, 8.0, 2) == 8 * 7 / 2);  // C(G+2,2)
  CHECK_THROWS_AS(count_landmarks(2.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("phi3 of the all-diagonal diagram") {
  const auto spec = uniform_spec(1, 5, 4, 2).spec;
  const auto blocks = phi3(Diagram::all_diagonal(2), spec);
  REQUIRE(blocks.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    REQUIRE(blocks[k].entries.size() == 1);
    const double want = spec.weights[k] * 0.25 * 1.5 * spec.scales[k];
    CHECK(blocks[k].entries.begin()->second == doctest::Approx(want));
  }
}

TEST_CASE("phi3 frame guard") {
  const auto spec = uniform_spec(1, 5, 4, 1).spec;
  CHECK_THROWS_AS(phi3(Diagram({Point(1, 6)}), spec), std::domain_error);
  CHECK_NOTHROW(phi3(Diagram({Point(1, 5)}), spec));  // boundary admitted
}

TEST_CASE("phi3 theorem bounds on random pairs") {
  std::mt19937_64 rng(61);
  const std::size_t n = 2;
  const auto spec = uniform_spec(1, 5, 4, n).spec;
  for (int i = 0; i < 200; ++i) {
    const Diagram x = sample_in_frame(rng, n, spec.frame);
    const Diagram y = sample_in_frame(rng, n, spec.frame);
    const double d = bottleneck_bruteforce(x, y);
    const double dist = phi3_distance(phi3(x, spec), phi3(y, spec));
    CHECK(dist <= d + 1e-9);  // 1-Lipschitz
    CHECK(dist >= rho3_steps(spec, std::min(d, spec.frame)) - 1e-9);
    if (d <= spec.frame) CHECK(dist >= rho3_linear(spec, d) - 1e-9);
  }
}

TEST_CASE("dense and sparse layouts agree") {
  std::mt19937_64 rng(67);
  const std::size_t n = 2;
  const auto spec = uniform_spec(1, 5, 3, n).spec;
  const auto header = phi3_dense_header(spec);
  for (int i = 0; i < 20; ++i) {
    const Diagram x = sample_in_frame(rng, n, spec.frame);
    const auto blocks = phi3(x, spec);
    const auto dense = phi3_dense(x, spec);
    REQUIRE(dense.size() == header.size());
    double sq = 0;
    for (double v : dense) sq += v * v;
    CHECK(std::sqrt(sq) == doctest::Approx(phi3_norm(blocks)).epsilon(1e-12));
    std::size_t nonzero = 0;
    for (double v : dense) nonzero += v != 0.0;
    std::size_t sparse = 0;
    for (const auto& b : blocks) sparse += b.entries.size();
    CHECK(nonzero == sparse);
  }
  // header entries are unique and carry the scale prefix
  CHECK(header.front().substr(0, 3) == "s1:");
  std::set<std::string> uniq(header.begin(), header.end());
  CHECK(uniq.size() == header.size());
}

TEST_CASE("dense cap") {
  const auto spec = uniform_spec(0.01, 5, 3, 4).spec;
  CHECK_THROWS_AS(phi3_dense(Diagram::all_diagonal(4), spec, 1000), std::length_error);
}

TEST_CASE("rho3 step and linear shapes") {
  const std::size_t n = 1;
  const auto r = uniform_spec(1, 5, 4, n);
  const auto& spec = r.spec;
  CHECK(rho3_steps(spec, 0.5) == 0.0);
  CHECK(rho3_linear(spec, 0.5) == 0.0);
  CHECK_THROWS_AS(rho3_steps(spec, 6.0), std::domain_error);
  CHECK_THROWS_AS(rho3_steps(spec, -1.0), std::invalid_argument);

  // single scale: step value for t >= R1 is base * w1 R1 = base * R1
  const auto single = BoundedEmbeddingSpec::make(5, {2}, {1.0}, n);
  CHECK(rho3_steps(single, 3.0) == doctest::Approx(base_factor(n) * 2.0));

  // chord below the steps across the declared domain
  for (int i = 0; i <= 1000; ++i) {
    const double t = spec.scales.front() + (spec.frame - spec.scales.front()) * i / 1000.0;
    CHECK(rho3_linear(spec, t) <= rho3_steps(spec, t) + 1e-12);
  }
  // monotone nondecreasing steps
  double prev = 0;
  for (int i = 0; i <= 500; ++i) {
    const double v = rho3_steps(spec, spec.frame * i / 500.0);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("uniform spec lambda shortcut") {
  // a = 1: f(1) = 1/3 + 1/6 + 1/2 = 1 exactly
  const auto r = uniform_spec(1, 5, 4, 2);
  CHECK(r.lambda == 1.0);
  CHECK(r.spec.scales == std::vector<double>{1, 2, 3, 4});
  CHECK(r.slope == doctest::Approx(base_factor(2) * 1.0 / (1.0 * 2.0)));

  // brute-force cross-check for random a <= 1
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> um(0.5, 2.0);
  std::uniform_int_distribution<int> uN(1, 40);
  int tried = 0;
  while (tried < 50) {
    const double m = um(rng);
    const double M = m * (1 + um(rng));
    const std::size_t N = static_cast<std::size_t>(uN(rng));
    const double a = (M - m) / (m * static_cast<double>(N));
    if (a > 1.0) continue;
    ++tried;
    const auto res = uniform_spec(m, M, N, 2);
    double best = std::numeric_limits<double>::infinity();
    double acc = 0;
    for (std::size_t i = 1; i <= N; ++i) {
      const double term = 1.0 + static_cast<double>(i - 1) * a;
      acc += term * term;
      best = std::min(best, acc / (static_cast<double>(i) * static_cast<double>(i)));
    }
    CHECK(res.lambda == doctest::Approx(best).epsilon(1e-12));
  }

  CHECK_THROWS_AS(uniform_spec(0, 5, 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(uniform_spec(5, 5, 4, 2), std::invalid_argument);
}

TEST_CASE("non-injectivity witness") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> um(0.2, 1.5);
  for (int i = 0; i < 10; ++i) {
    const double m = um(rng);
    const double M = m * 4 + um(rng);
    const auto spec = uniform_spec(m, M, 3, 2).spec;
    const auto [x, y] = non_injectivity_witness(spec);
    CHECK(phi3_distance(phi3(x, spec), phi3(y, spec)) == 0.0);
    const double d = bottleneck_bruteforce(x, y);
    const double eps = std::exp2(std::floor(std::log2(spec.scales.front() / 10.0)));
    CHECK(d > 0.0);
    CHECK(d == eps / 2);
    // independent check: only the Delta candidate at every scale
    for (const Diagram& w : {x, y}) {
      for (const Point& p : w.points()) {
        if (p.is_diagonal()) continue;
        for (double R : spec.scales) {
          CHECK(grid_candidates(p, R) == std::set<GridKey>{GridKey::diag()});
        }
      }
    }
  }
}
