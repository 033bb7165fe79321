#include "pdembed/grid.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pdembed {

GridKey GridKey::grid(long m, long k) {
  if (m < 1 || m % 2 == 0 || k < 4 || k % 2 != 0 || k < m + 3) {
    throw std::invalid_argument("invalid grid key: need m odd >= 1, k even >= m + 3");
  }
  GridKey g;
  g.diagonal = false;
  g.m = m;
  g.k = k;
  return g;
}

Point GridKey::point(double R) const {
  if (diagonal) return Point::diag();
  return Point(static_cast<double>(m) * R, static_cast<double>(k) * R);
}

LandmarkKey::LandmarkKey(std::vector<GridKey> keys) : keys_(std::move(keys)) {
  if (keys_.empty()) {
    throw std::invalid_argument("landmark key needs at least one entry");
  }
  std::sort(keys_.begin(), keys_.end());
}

std::string key_string(const LandmarkKey& key) {
  std::string out;
  bool first = true;
  for (const GridKey& g : key.keys()) {
    if (!first) out += ';';
    first = false;
    if (g.diagonal) {
      out += 'D';
    } else {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "%ld,%ld", g.m, g.k);
      out += buf;
    }
  }
  return out;
}

std::string key_string(std::size_t scale_index, const LandmarkKey& key) {
  return "s" + std::to_string(scale_index) + ":" + key_string(key);
}

double SparseVec::norm() const {
  double sq = 0;
  for (const auto& [k, v] : entries) sq += v * v;
  return std::sqrt(sq);
}

double sparse_distance(const SparseVec& a, const SparseVec& b) {
  if (a.scale != b.scale) {
    throw std::invalid_argument("scale mismatch in sparse distance");
  }
  double sq = 0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() || ib != b.entries.end()) {
    double d;
    if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
      d = ia->second;
      ++ia;
    } else if (ia == a.entries.end() || ib->first < ia->first) {
      d = ib->second;
      ++ib;
    } else {
      d = ia->second - ib->second;
      ++ia;
      ++ib;
    }
    sq += d * d;
  }
  return std::sqrt(sq);
}

SparseVec sparse_sub(const SparseVec& a, const SparseVec& b) {
  if (a.scale != b.scale) {
    throw std::invalid_argument("scale mismatch in sparse subtraction");
  }
  SparseVec out;
  out.scale = a.scale;
  out.entries = a.entries;
  for (const auto& [k, v] : b.entries) {
    const double nv = out.entries[k] - v;
    if (nv == 0) {
      out.entries.erase(k);
    } else {
      out.entries[k] = nv;
    }
  }
  return out;
}

SparseVec sparse_scaled(const SparseVec& a, double factor) {
  SparseVec out;
  out.scale = a.scale;
  for (const auto& [k, v] : a.entries) {
    if (v * factor != 0) out.entries.emplace(k, v * factor);
  }
  return out;
}

Diagram landmark_diagram(const LandmarkKey& key, double R) {
  if (!(R > 0)) throw std::invalid_argument("scale must be positive");
  std::vector<Point> pts;
  pts.reserve(key.arity());
  for (const GridKey& g : key.keys()) pts.push_back(g.point(R));
  return Diagram(std::move(pts));
}

std::set<GridKey> grid_candidates(const Point& p, double R) {
  if (!(R > 0)) throw std::invalid_argument("scale must be positive");
  std::set<GridKey> out;
  const double radius = 1.5 * R;
  if (p.to_diagonal() < radius) out.insert(GridKey::diag());
  if (p.is_diagonal()) return out;

  // For grid keys the diagonal shortcut of point_distance never drops
  // below 3R/2 (k - m >= 3), so membership reduces to the l_inf test.
  const double x1 = p.birth();
  const double x2 = p.death();
  const long m_lo = static_cast<long>(std::floor(x1 / R - 1.5));
  const long m_hi = static_cast<long>(std::ceil(x1 / R + 1.5));
  const long k_lo = static_cast<long>(std::floor(x2 / R - 1.5));
  const long k_hi = static_cast<long>(std::ceil(x2 / R + 1.5));
  for (long m = std::max(1L, m_lo) | 1L; m <= m_hi; m += 2) {
    if (!(std::abs(x1 - m * R) < radius)) continue;
    long k_min = std::max(4L, m + 3);
    if (k_min % 2 != 0) ++k_min;
    for (long k = std::max(k_min, k_lo); k <= k_hi; ++k) {
      if (k % 2 != 0) continue;
      if (!(std::abs(x2 - k * R) < radius)) continue;
      const GridKey g = GridKey::grid(m, k);
      assert(g.point(R).to_diagonal() >= radius);
      assert(point_distance(p, g.point(R)) < radius);
      out.insert(g);
    }
  }
  return out;
}

namespace {

void product_rec(const std::vector<std::vector<GridKey>>& per_point,
                 std::size_t idx, std::vector<GridKey>& acc,
                 std::set<LandmarkKey>& out) {
  if (idx == per_point.size()) {
    out.insert(LandmarkKey(acc));
    return;
  }
  for (const GridKey& g : per_point[idx]) {
    acc.push_back(g);
    product_rec(per_point, idx + 1, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::set<LandmarkKey> landmark_candidates(const Diagram& x, double R) {
  std::vector<std::vector<GridKey>> per_point;
  per_point.reserve(x.arity());
  for (const Point& p : x.points()) {
    auto cand = grid_candidates(p, R);
    per_point.emplace_back(cand.begin(), cand.end());
    if (per_point.back().empty()) {
      // Point not covered at this scale by any candidate; cannot happen for
      // RU (it is a cover), but keep the product well defined.
      return {};
    }
  }
  std::set<LandmarkKey> out;
  std::vector<GridKey> acc;
  product_rec(per_point, 0, acc, out);
  return out;
}

double phi_component(const Diagram& x, const LandmarkKey& key, double R) {
  if (key.arity() != x.arity()) {
    throw std::invalid_argument("arity mismatch between diagram and landmark key");
  }
  const double d = bottleneck_distance(x, landmark_diagram(key, R));
  return std::max(1.5 * R - d, 0.0);
}

SparseVec phi_scale(const Diagram& x, double R) {
  SparseVec out;
  out.scale = R;
  for (const LandmarkKey& key : landmark_candidates(x, R)) {
    const double v = phi_component(x, key, R);
    if (v > 0) out.entries.emplace(key, v);
  }
  return out;
}

}  // namespace pdembed
