#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pdembed/diagram.hpp"

namespace pdembed {

// A landmark grid cell at scale R: either Delta or the integer key (m, k)
// with m odd >= 1, k even >= 4, k >= m + 3. The concrete point is (mR, kR).
struct GridKey {
  bool diagonal = true;
  long m = 0;
  long k = 0;

  static GridKey diag() { return GridKey{}; }
  static GridKey grid(long m, long k);

  Point point(double R) const;

  // Grid keys sort by (m, k); Delta sorts last (matches the key string form).
  friend auto operator<=>(const GridKey& a, const GridKey& b) {
    const int ad = a.diagonal ? 1 : 0;
    const int bd = b.diagonal ? 1 : 0;
    if (auto c = ad <=> bd; c != 0) return c;
    if (auto c = a.m <=> b.m; c != 0) return c;
    return a.k <=> b.k;
  }
  friend bool operator==(const GridKey&, const GridKey&) = default;
};

// A landmark diagram identity: multiset of exactly n grid keys, stored sorted.
class LandmarkKey {
public:
  explicit LandmarkKey(std::vector<GridKey> keys);

  std::size_t arity() const { return keys_.size(); }
  const std::vector<GridKey>& keys() const { return keys_; }

  friend auto operator<=>(const LandmarkKey&, const LandmarkKey&) = default;

private:
  std::vector<GridKey> keys_;
};

// `D` or `m,k`, joined by `;` over the sorted keys: e.g. `1,4;3,8;D`.
std::string key_string(const LandmarkKey& key);
// With scale-index prefix: `s2:1,4;3,8;D`.
std::string key_string(std::size_t scale_index, const LandmarkKey& key);

// Finitely supported vector over landmark keys at one scale. phi_scale
// output stores only strictly positive entries; difference vectors reuse
// the same container with signed values.
struct SparseVec {
  double scale = 0;
  std::map<LandmarkKey, double> entries;

  double norm() const;
};

double sparse_distance(const SparseVec& a, const SparseVec& b);
SparseVec sparse_sub(const SparseVec& a, const SparseVec& b);
SparseVec sparse_scaled(const SparseVec& a, double factor);

// The concrete diagram (mR, kR)... for each key, Delta for `D`.
Diagram landmark_diagram(const LandmarkKey& key, double R);

// Keys g of RG+ with point_distance(p, g) < 3R/2. At most 4 by the cover
// multiplicity lemma.
std::set<GridKey> grid_candidates(const Point& p, double R);

// All multisets formed by one grid candidate per point of x; superset of
// the support of phi_R(x), size <= 4^n.
std::set<LandmarkKey> landmark_candidates(const Diagram& x, double R);

// max(3R/2 - d_B(x, landmark), 0).
double phi_component(const Diagram& x, const LandmarkKey& key, double R);

// The single-scale map phi_R(x) as a sparse vector.
SparseVec phi_scale(const Diagram& x, double R);

}  // namespace pdembed
