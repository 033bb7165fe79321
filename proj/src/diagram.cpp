#include "pdembed/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pdembed {

Point::Point(double birth, double death) : diag_(false), birth_(birth), death_(death) {
  if (!(death > birth) || !(birth >= 0)) {
    throw std::invalid_argument("off-diagonal point requires death > birth >= 0");
  }
}

double Point::to_diagonal() const {
  return diag_ ? 0.0 : (death_ - birth_) / 2.0;
}

double point_distance(const Point& p, const Point& q) {
  const double diag_term = std::max(p.to_diagonal(), q.to_diagonal());
  if (p.is_diagonal() || q.is_diagonal()) {
    return diag_term;
  }
  const double linf = std::max(std::abs(p.birth() - q.birth()),
                               std::abs(p.death() - q.death()));
  return std::min(linf, diag_term);
}

Diagram::Diagram(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw std::invalid_argument("diagram needs at least one entry");
  }
  // Canonical order: Delta first, then by (birth, death).
  std::sort(points_.begin(), points_.end(), [](const Point& a, const Point& b) {
    if (a.is_diagonal() != b.is_diagonal()) return a.is_diagonal();
    if (a.birth() != b.birth()) return a.birth() < b.birth();
    return a.death() < b.death();
  });
}

double Diagram::max_death() const {
  double m = 0;
  for (const Point& p : points_) {
    if (!p.is_diagonal()) m = std::max(m, p.death());
  }
  return m;
}

Diagram Diagram::padded(std::size_t n) const {
  if (n < arity()) {
    throw std::invalid_argument("cannot pad below current arity");
  }
  std::vector<Point> pts = points_;
  pts.resize(n, Point::diag());
  return Diagram(std::move(pts));
}

Diagram Diagram::all_diagonal(std::size_t n) {
  return Diagram(std::vector<Point>(n, Point::diag()));
}

namespace {

void require_same_arity(const Diagram& x, const Diagram& y) {
  if (x.arity() != y.arity()) {
    throw std::invalid_argument("arity mismatch");
  }
}

// Kuhn augmenting-path matching on the graph {(i,j) : cost[i][j] <= t}.
class ThresholdMatcher {
public:
  ThresholdMatcher(const std::vector<double>& cost, std::size_t n)
      : cost_(cost), n_(n), match_(n, -1), seen_(n) {}

  bool feasible(double t) {
    std::fill(match_.begin(), match_.end(), -1);
    for (std::size_t i = 0; i < n_; ++i) {
      std::fill(seen_.begin(), seen_.end(), false);
      if (!augment(i, t)) return false;
    }
    return true;
  }

private:
  bool augment(std::size_t i, double t) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (seen_[j] || cost_[i * n_ + j] > t) continue;
      seen_[j] = true;
      if (match_[j] < 0 || augment(static_cast<std::size_t>(match_[j]), t)) {
        match_[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  }

  const std::vector<double>& cost_;
  std::size_t n_;
  std::vector<int> match_;
  std::vector<bool> seen_;
};

}  // namespace

double bottleneck_bruteforce(const Diagram& x, const Diagram& y) {
  require_same_arity(x, y);
  const std::size_t n = x.arity();
  if (n > 8) {
    throw std::invalid_argument("brute-force oracle guarded to arity <= 8");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, point_distance(x[i], y[perm[i]]));
      if (worst >= best) break;
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double bottleneck_distance(const Diagram& x, const Diagram& y) {
  require_same_arity(x, y);
  const std::size_t n = x.arity();
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[i * n + j] = point_distance(x[i], y[j]);
    }
  }
  // The optimum is one of the pairwise distances; binary search that set.
  std::vector<double> candidates = cost;
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  ThresholdMatcher matcher(cost, n);
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (matcher.feasible(candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

}  // namespace pdembed
