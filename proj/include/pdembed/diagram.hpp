#pragma once

#include <compare>
#include <cstddef>
#include <vector>

namespace pdembed {

// A single element of D^1: either the diagonal class Delta or an
// off-diagonal point (birth, death) with death > birth >= 0.
class Point {
public:
  static Point diag() { return Point(); }
  Point(double birth, double death);

  bool is_diagonal() const { return diag_; }
  double birth() const { return birth_; }
  double death() const { return death_; }

  // |birth - death| / 2, or 0 for Delta.
  double to_diagonal() const;

  friend auto operator<=>(const Point&, const Point&) = default;

private:
  Point() : diag_(true), birth_(0), death_(0) {}
  bool diag_;
  double birth_;
  double death_;
};

// Distance in D^1: min of the l_inf term and the match-both-to-Delta term.
double point_distance(const Point& p, const Point& q);

// A multiset of exactly n points of D^1 (Delta-padded), canonically sorted
// with Delta entries first. Equality is multiset equality.
class Diagram {
public:
  explicit Diagram(std::vector<Point> points);

  std::size_t arity() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  // Largest death coordinate among off-diagonal points; 0 if all-Delta.
  double max_death() const;

  // Appends n - arity copies of Delta. Isometric inclusion D^k -> D^n.
  Diagram padded(std::size_t n) const;

  static Diagram all_diagonal(std::size_t n);

  friend bool operator==(const Diagram&, const Diagram&) = default;

private:
  std::vector<Point> points_;
};

// Ground-truth oracle: min over all n! permutations of the max matched
// point distance. Guarded to n <= 8.
double bottleneck_bruteforce(const Diagram& x, const Diagram& y);

// Bottleneck distance via candidate-set binary search with bipartite
// matching feasibility. Agrees exactly with the brute-force oracle: the
// answer is always one of the n^2 pairwise point distances.
double bottleneck_distance(const Diagram& x, const Diagram& y);

}  // namespace pdembed
