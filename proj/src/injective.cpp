#include "pdembed/injective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace pdembed {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

struct Cluster {
  double value = 0;
  std::size_t mult = 0;
};

// Group sorted values into clusters of width tau; reject clusters whose
// representatives are separated by less than 10 tau.
std::vector<Cluster> cluster_values(std::vector<double> values, double tau) {
  std::sort(values.begin(), values.end());
  std::vector<Cluster> out;
  for (double v : values) {
    if (out.empty() || v - out.back().value > tau) {
      out.push_back(Cluster{v, 1});
    } else {
      ++out.back().mult;
    }
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].value - out[i - 1].value < 10 * tau) {
      throw std::runtime_error("ill-conditioned image: angle values too close");
    }
  }
  return out;
}

}  // namespace

AnchorSet AnchorSet::make(std::vector<double> values) {
  if (values.size() < 2) throw std::invalid_argument("need at least two anchors");
  for (double s : values) {
    if (!(s < 0)) throw std::invalid_argument("anchors must be strictly negative");
  }
  std::set<double> unique(values.begin(), values.end());
  if (unique.size() != values.size()) {
    throw std::invalid_argument("anchors must be pairwise distinct");
  }
  return AnchorSet{std::move(values)};
}

AnchorSet AnchorSet::defaults(double L, std::size_t n) {
  if (!(L > 0)) throw std::invalid_argument("frame size must be positive");
  std::vector<double> values;
  values.reserve(n + 1);
  for (std::size_t i = 1; i <= n + 1; ++i) {
    values.push_back(-L * static_cast<double>(i) / static_cast<double>(n + 1));
  }
  return AnchorSet{std::move(values)};
}

double angle_value(const Point& p, double s) {
  if (!(s < 0)) throw std::invalid_argument("anchor must be strictly negative");
  if (p.is_diagonal()) return kQuarterPi;
  return std::atan2(p.death() - s, p.birth() - s);
}

std::vector<double> injective_embed(const Diagram& x, const AnchorSet& anchors,
                                    double frame) {
  if (anchors.count() != x.arity() + 1) {
    throw std::invalid_argument("need arity + 1 anchors");
  }
  for (const Point& p : x.points()) {
    if (!p.is_diagonal() && p.death() > frame) {
      throw std::domain_error("diagram point outside frame [0,L]^2");
    }
  }
  std::vector<double> out;
  out.reserve(x.arity() * anchors.count());
  for (double s : anchors.values) {
    std::vector<double> block;
    block.reserve(x.arity());
    for (const Point& p : x.points()) block.push_back(angle_value(p, s));
    std::sort(block.begin(), block.end());
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

Diagram reconstruct(const std::vector<double>& image, const AnchorSet& anchors,
                    std::size_t n, double frame, double tau) {
  if (anchors.count() != n + 1) throw std::invalid_argument("need n + 1 anchors");
  if (image.size() != n * (n + 1)) {
    throw std::invalid_argument("image length must be n * (n + 1)");
  }

  // One cluster family per anchor.
  std::vector<std::vector<Cluster>> families(n + 1);
  std::size_t delta_mult = n;
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<double> block(image.begin() + static_cast<long>(i * n),
                              image.begin() + static_cast<long>((i + 1) * n));
    auto clusters = cluster_values(std::move(block), tau);
    std::size_t dm = 0;
    std::vector<Cluster> rest;
    for (const Cluster& c : clusters) {
      if (std::abs(c.value - kQuarterPi) <= tau) {
        dm = c.mult;
      } else {
        rest.push_back(c);
      }
    }
    delta_mult = std::min(delta_mult, dm);
    families[i] = std::move(rest);
  }

  const double match_tol = 5 * tau;
  const double frame_tol = 1e-7 * std::max(1.0, frame);

  struct Recovered {
    double x, y;
    std::size_t mult;
  };
  std::vector<Recovered> points;

  // Candidates are intersections of level lines from the first two anchor
  // families; each is kept only if every family matches it.
  const double s0 = anchors.values[0];
  const double s1 = anchors.values[1];
  for (const Cluster& ca : families[0]) {
    for (const Cluster& cb : families[1]) {
      const double ux = std::cos(ca.value), uy = std::sin(ca.value);
      const double vx = std::cos(cb.value), vy = std::sin(cb.value);
      const double det = vx * uy - ux * vy;
      if (std::abs(det) < 1e-14) continue;
      const double bx = s1 - s0, by = s1 - s0;
      // Solve t*u - r*v = (bx, by).
      const double t = (bx * (-vy) - (-vx) * by) / det;
      if (!(t > 0)) continue;
      double px = s0 + t * ux;
      double py = s0 + t * uy;
      if (px < -frame_tol || py > frame + frame_tol || !(py - px > 0)) continue;
      px = std::clamp(px, 0.0, frame);
      py = std::clamp(py, 0.0, frame);
      if (!(py > px)) continue;

      std::size_t mult = n;
      bool ok = true;
      for (std::size_t i = 0; i <= n && ok; ++i) {
        const double theta = angle_value(Point(px, py), anchors.values[i]);
        ok = false;
        for (const Cluster& c : families[i]) {
          if (std::abs(theta - c.value) <= match_tol) {
            mult = std::min(mult, c.mult);
            ok = true;
            break;
          }
        }
      }
      if (!ok) continue;

      bool duplicate = false;
      for (const Recovered& r : points) {
        if (std::max(std::abs(r.x - px), std::abs(r.y - py)) < 1e-6 * std::max(1.0, frame)) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) points.push_back(Recovered{px, py, mult});
    }
  }

  std::size_t total = delta_mult;
  for (const Recovered& r : points) total += r.mult;
  if (total != n) {
    throw std::runtime_error("no consistent reconstruction: input is not an image");
  }

  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < delta_mult; ++i) pts.push_back(Point::diag());
  for (const Recovered& r : points) {
    for (std::size_t i = 0; i < r.mult; ++i) pts.push_back(Point(r.x, r.y));
  }
  return Diagram(std::move(pts));
}

}  // namespace pdembed
