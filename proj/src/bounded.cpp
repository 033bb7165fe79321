#include "pdembed/bounded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pdembed {

namespace {

double base_factor(std::size_t n) {
  return std::pow(2.0, -(static_cast<double>(n) + 2.5)) / 3.0;
}

void require_in_frame(const Diagram& x, double L) {
  for (const Point& p : x.points()) {
    if (!p.is_diagonal() && p.death() > L) {
      throw std::domain_error("diagram point outside frame [0,L]^2");
    }
  }
}

}  // namespace

BoundedEmbeddingSpec BoundedEmbeddingSpec::make(double frame,
                                                std::vector<double> scales,
                                                std::vector<double> weights,
                                                std::size_t arity) {
  if (!(frame > 0)) throw std::invalid_argument("frame size must be positive");
  if (scales.empty() || scales.size() != weights.size()) {
    throw std::invalid_argument("need N >= 1 scales with matching weights");
  }
  if (arity < 1) throw std::invalid_argument("arity must be positive");
  double prev = 0;
  for (double R : scales) {
    if (!(R > prev)) throw std::invalid_argument("scales must be strictly increasing and positive");
    if (R > frame) throw std::invalid_argument("scales must not exceed the frame size");
    prev = R;
  }
  double wsq = 0;
  for (double w : weights) wsq += w * w;
  if (std::abs(wsq - 1.0) > 1e-12) {
    throw std::invalid_argument("weights must form a unit vector");
  }
  return BoundedEmbeddingSpec{frame, std::move(scales), std::move(weights), arity};
}

std::size_t eligible_grid_keys(double R, double L, std::vector<GridKey>* out) {
  if (!(R > 0) || !(R <= L)) throw std::invalid_argument("need 0 < R <= L");
  const double limit = L + 1.5 * R;
  std::size_t count = 0;
  for (long m = 1; m * R < limit; m += 2) {
    long k_min = std::max(4L, m + 3);
    if (k_min % 2 != 0) ++k_min;
    for (long k = k_min; k * R < limit; k += 2) {
      ++count;
      if (out) out->push_back(GridKey::grid(m, k));
    }
  }
  return count;
}

std::uint64_t count_landmarks(double R, double L, std::size_t n) {
  const std::size_t G = eligible_grid_keys(R, L);
  // C(G + n, n), saturating.
  unsigned __int128 res = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    res = res * (G + i) / i;
    if (res > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(res);
}

std::vector<SparseVec> phi3(const Diagram& x, const BoundedEmbeddingSpec& spec) {
  if (x.arity() != spec.arity) throw std::invalid_argument("arity mismatch with spec");
  require_in_frame(x, spec.frame);
  const double two_neg_n = std::pow(2.0, -static_cast<double>(spec.arity));
  std::vector<SparseVec> blocks;
  blocks.reserve(spec.scales.size());
  for (std::size_t k = 0; k < spec.scales.size(); ++k) {
    blocks.push_back(sparse_scaled(phi_scale(x, spec.scales[k]),
                                   spec.weights[k] * two_neg_n));
  }
  return blocks;
}

double phi3_norm(const std::vector<SparseVec>& blocks) {
  double sq = 0;
  for (const SparseVec& b : blocks) {
    const double nb = b.norm();
    sq += nb * nb;
  }
  return std::sqrt(sq);
}

double phi3_distance(const std::vector<SparseVec>& a,
                     const std::vector<SparseVec>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("block count mismatch");
  double sq = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = sparse_distance(a[i], b[i]);
    sq += d * d;
  }
  return std::sqrt(sq);
}

namespace {

// Symbols for the dense layout at one scale: Delta first, then eligible
// grid keys in (m, k) order.
std::vector<GridKey> dense_symbols(double R, double L) {
  std::vector<GridKey> symbols;
  symbols.push_back(GridKey::diag());
  eligible_grid_keys(R, L, &symbols);
  return symbols;
}

// Visit multisets of size n over the symbols in lexicographic order.
template <typename F>
void for_each_multiset(const std::vector<GridKey>& symbols, std::size_t n, F&& f) {
  std::vector<std::size_t> idx(n, 0);
  const std::size_t S = symbols.size();
  for (;;) {
    std::vector<GridKey> keys;
    keys.reserve(n);
    for (std::size_t i : idx) keys.push_back(symbols[i]);
    f(LandmarkKey(std::move(keys)));
    // advance non-decreasing index sequence
    std::size_t pos = n;
    while (pos > 0 && idx[pos - 1] == S - 1) --pos;
    if (pos == 0) break;
    const std::size_t v = idx[pos - 1] + 1;
    for (std::size_t i = pos - 1; i < n; ++i) idx[i] = v;
  }
}

std::uint64_t dense_length(const BoundedEmbeddingSpec& spec) {
  std::uint64_t total = 0;
  for (double R : spec.scales) {
    const std::uint64_t nu = count_landmarks(R, spec.frame, spec.arity);
    if (nu > std::numeric_limits<std::uint64_t>::max() - total) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total += nu;
  }
  return total;
}

}  // namespace

std::vector<double> phi3_dense(const Diagram& x, const BoundedEmbeddingSpec& spec,
                               std::uint64_t cap) {
  if (dense_length(spec) > cap) {
    throw std::length_error("dense layout exceeds the configured cap");
  }
  const std::vector<SparseVec> blocks = phi3(x, spec);
  std::vector<double> out;
  for (std::size_t k = 0; k < spec.scales.size(); ++k) {
    const auto symbols = dense_symbols(spec.scales[k], spec.frame);
    for_each_multiset(symbols, spec.arity, [&](const LandmarkKey& key) {
      const auto it = blocks[k].entries.find(key);
      out.push_back(it == blocks[k].entries.end() ? 0.0 : it->second);
    });
  }
  return out;
}

std::vector<std::string> phi3_dense_header(const BoundedEmbeddingSpec& spec,
                                           std::uint64_t cap) {
  if (dense_length(spec) > cap) {
    throw std::length_error("dense layout exceeds the configured cap");
  }
  std::vector<std::string> out;
  for (std::size_t k = 0; k < spec.scales.size(); ++k) {
    const auto symbols = dense_symbols(spec.scales[k], spec.frame);
    for_each_multiset(symbols, spec.arity, [&](const LandmarkKey& key) {
      out.push_back(key_string(k + 1, key));
    });
  }
  return out;
}

namespace {

double prefix_wr_sq(const BoundedEmbeddingSpec& spec, std::size_t upto) {
  double s = 0;
  for (std::size_t k = 0; k < upto; ++k) {
    s += spec.weights[k] * spec.weights[k] * spec.scales[k] * spec.scales[k];
  }
  return s;
}

}  // namespace

double rho3_steps(const BoundedEmbeddingSpec& spec, double t) {
  if (t < 0) throw std::invalid_argument("t must be nonnegative");
  if (t > spec.frame) throw std::domain_error("t beyond the declared frame");
  std::size_t i = 0;
  while (i < spec.scales.size() && spec.scales[i] <= t) ++i;
  if (i == 0) return 0;
  return base_factor(spec.arity) * std::sqrt(prefix_wr_sq(spec, i));
}

double rho3_linear(const BoundedEmbeddingSpec& spec, double t) {
  if (t < 0) throw std::invalid_argument("t must be nonnegative");
  if (t > spec.frame) throw std::domain_error("t beyond the declared frame");
  const double R1 = spec.scales.front();
  if (t <= R1) return 0;
  const std::size_t N = spec.scales.size();
  double min_slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = 2; i <= N; ++i) {
    const double denom = spec.scales[i - 1] - R1;
    min_slope = std::min(min_slope, std::sqrt(prefix_wr_sq(spec, i - 1)) / denom);
  }
  if (spec.frame > R1) {
    const double wN = spec.weights.back();
    const double num =
        std::sqrt(prefix_wr_sq(spec, N - 1) + wN * wN * spec.frame * spec.frame);
    min_slope = std::min(min_slope, num / (spec.frame - R1));
  }
  if (!std::isfinite(min_slope)) return 0;
  return base_factor(spec.arity) * min_slope * (t - R1);
}

UniformSpecResult uniform_spec(double m, double M, std::size_t N, std::size_t n) {
  if (!(m > 0) || !(M > m) || N < 1) {
    throw std::invalid_argument("need 0 < m < M and N >= 1");
  }
  std::vector<double> scales(N);
  std::vector<double> weights(N, 1.0 / std::sqrt(static_cast<double>(N)));
  for (std::size_t i = 0; i < N; ++i) {
    scales[i] = m + (M - m) / static_cast<double>(N) * static_cast<double>(i);
  }
  const double a = (M - m) / (m * static_cast<double>(N));

  const auto f = [a](double x) {
    return a * a / 3.0 * x + (1.0 - a + a * a / 6.0) / x + (a - a * a / 2.0);
  };
  double lambda;
  if (a <= 1.0) {
    const double mu = std::sqrt(3.0 / (a * a) - 3.0 / a + 0.5);
    if (mu > 1.0) {
      const double lo = std::clamp(std::floor(mu), 1.0, static_cast<double>(N));
      const double hi = std::clamp(std::ceil(mu), 1.0, static_cast<double>(N));
      lambda = std::min(f(lo), f(hi));
    } else {
      lambda = f(1.0);
    }
  } else {
    // Direct minimization of sum_{k<=i} (1 + (k-1)a)^2 / i^2.
    lambda = std::numeric_limits<double>::infinity();
    double acc = 0;
    for (std::size_t i = 1; i <= N; ++i) {
      const double term = 1.0 + static_cast<double>(i - 1) * a;
      acc += term * term;
      lambda = std::min(lambda, acc / (static_cast<double>(i) * static_cast<double>(i)));
    }
  }

  UniformSpecResult out;
  out.spec = BoundedEmbeddingSpec::make(M, std::move(scales), std::move(weights), n);
  out.lambda = lambda;
  out.slope =
      base_factor(n) * std::sqrt(lambda) / (a * std::sqrt(static_cast<double>(N)));
  return out;
}

std::pair<Diagram, Diagram> non_injectivity_witness(const BoundedEmbeddingSpec& spec) {
  const double L = spec.frame;
  // Largest power of two <= R_1 / 10. A dyadic gap with abscissas on the
  // eps/2 grid keeps every coordinate and persistence exactly representable,
  // so the two images agree bit for bit (not merely within rounding).
  const double eps = std::exp2(std::floor(std::log2(spec.scales.front() / 10.0)));
  const double half = eps / 2.0;

  const auto admissible = [&](double a) {
    if (a < 0 || a + eps > L) return false;
    const Point p(a, a + eps);
    for (double R : spec.scales) {
      const auto cand = grid_candidates(p, R);
      if (cand.size() != 1 || !cand.begin()->diagonal) return false;
    }
    return true;
  };

  std::vector<double> found;
  for (long j = static_cast<long>(std::floor(L / 2.0 / half));
       j >= 0 && found.size() < 2; --j) {
    if (admissible(static_cast<double>(j) * half)) {
      found.push_back(static_cast<double>(j) * half);
    }
  }
  if (found.size() < 2) {
    throw std::runtime_error("frame too small to place two admissible abscissas");
  }

  const Diagram x = Diagram({Point(found[0], found[0] + eps)}).padded(spec.arity);
  const Diagram y = Diagram({Point(found[1], found[1] + eps)}).padded(spec.arity);

  // Internal verification of the witness contract.
  const auto bx = phi3(x, spec);
  const auto by = phi3(y, spec);
  for (std::size_t k = 0; k < bx.size(); ++k) {
    if (bx[k].entries != by[k].entries) {
      throw std::logic_error("witness images differ");
    }
  }
  if (!(bottleneck_distance(x, y) > 0)) {
    throw std::logic_error("witness diagrams coincide");
  }
  return {x, y};
}

}  // namespace pdembed
