#pragma once

#include <vector>

#include "pdembed/diagram.hpp"

namespace pdembed {

// n+1 pairwise distinct strictly negative anchor abscissas; anchor i sits
// at (s_i, s_i) on the extended diagonal.
struct AnchorSet {
  std::vector<double> values;

  static AnchorSet make(std::vector<double> values);
  // s_i = -L * i / (n+1), i = 1..n+1.
  static AnchorSet defaults(double L, std::size_t n);

  std::size_t count() const { return values.size(); }
};

// Angle of (x - s, y - s) from the positive horizontal axis; pi/4 for
// Delta. Lies in [pi/4, pi/2) on the frame.
double angle_value(const Point& p, double s);

// For each anchor, the ascending list of the n angle values of x,
// concatenated: a vector of length n * (n+1).
std::vector<double> injective_embed(const Diagram& x, const AnchorSet& anchors,
                                    double frame);

// Level-line reconstruction: invert injective_embed. Throws if the input
// is not a consistent image within tolerance tau, or if distinct angle
// values crowd within 10*tau of each other (ill-conditioned input).
Diagram reconstruct(const std::vector<double>& image, const AnchorSet& anchors,
                    std::size_t n, double frame, double tau = 1e-9);

}  // namespace pdembed
