#pragma once

#include <vector>

#include "pdembed/diagram.hpp"
#include "pdembed/grid.hpp"

namespace pdembed {

enum class ScheduleKind { coarse, uniform, combined };

// The default closed-form scale/weight families:
//   coarse:  w_k = 1/k, R_k = k^2   (w_k R_k -> infinity)
//   uniform: w_k = 1/k, R_k = 1/k   (R_k -> 0)
// Both have sum w_k^2 = pi^2/6; the assembled maps are normalized by
// 6/pi^2 so that the certified distances obey the 1-Lipschitz contract.
// Combined mixes the two normalized maps with factor 1/sqrt(2).
class ScaleSchedule {
public:
  ScaleSchedule(ScheduleKind kind, std::size_t arity);

  ScheduleKind kind() const { return kind_; }
  std::size_t arity() const { return arity_; }
  const Diagram& basepoint() const { return basepoint_; }

  double weight(std::size_t k) const;       // k >= 1
  double scale_at(std::size_t k) const;     // k >= 1
  double weight_sq_sum() const;             // pi^2/6
  double norm_factor() const;               // 6/pi^2

private:
  ScheduleKind kind_;
  std::size_t arity_;
  Diagram basepoint_;  // all-Delta; used by the coarse part
};

struct CertifiedInterval {
  double lower = 0;
  double upper = 0;
};

// Per-scale blocks of Phi_1: w_k 2^{-n} (phi_{R_k}(x) - phi_{R_k}(x0)),
// k = 1..K. Unnormalized (no 6/pi^2 factor).
std::vector<SparseVec> embed_phi1_truncated(const Diagram& x,
                                            const ScaleSchedule& s,
                                            const Diagram& basepoint,
                                            std::size_t K);

// Per-scale blocks of Phi_2: w_k 2^{-n} phi_{R_k}(x), k = 1..K.
std::vector<SparseVec> embed_phi2_truncated(const Diagram& x,
                                            const ScaleSchedule& s,
                                            std::size_t K);

// Certified enclosure of the normalized embedded distance, width <= eps.
CertifiedInterval certified_distance(const Diagram& x, const Diagram& y,
                                     const ScaleSchedule& s, double eps);

// The step lower-distortion function (normalized).
double rho_minus(const ScaleSchedule& s, double t);

// Cumulative-sum variant: accounts for every scale below (coarse) or
// above (uniform) the active step.
double rho_minus_improved(const ScaleSchedule& s, double t);

}  // namespace pdembed
