#include "pdembed/multiscale.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pdembed {

namespace {

constexpr double kPi = std::numbers::pi;

double pow2(double x) { return x * x; }

double base_factor(std::size_t n) {
  // 2^{-n-2.5} / 3
  return std::pow(2.0, -(static_cast<double>(n) + 2.5)) / 3.0;
}

}  // namespace

ScaleSchedule::ScaleSchedule(ScheduleKind kind, std::size_t arity)
    : kind_(kind), arity_(arity), basepoint_(Diagram::all_diagonal(arity)) {
  if (arity == 0) throw std::invalid_argument("arity must be positive");
}

double ScaleSchedule::weight(std::size_t k) const {
  if (kind_ == ScheduleKind::combined) {
    throw std::logic_error("combined schedule has no single weight family");
  }
  if (k < 1) throw std::invalid_argument("scale index starts at 1");
  return 1.0 / static_cast<double>(k);
}

double ScaleSchedule::scale_at(std::size_t k) const {
  if (kind_ == ScheduleKind::combined) {
    throw std::logic_error("combined schedule has no single scale family");
  }
  if (k < 1) throw std::invalid_argument("scale index starts at 1");
  const double kd = static_cast<double>(k);
  return kind_ == ScheduleKind::coarse ? kd * kd : 1.0 / kd;
}

double ScaleSchedule::weight_sq_sum() const { return kPi * kPi / 6.0; }

double ScaleSchedule::norm_factor() const { return 6.0 / (kPi * kPi); }

std::vector<SparseVec> embed_phi1_truncated(const Diagram& x,
                                            const ScaleSchedule& s,
                                            const Diagram& basepoint,
                                            std::size_t K) {
  if (s.kind() != ScheduleKind::coarse) {
    throw std::invalid_argument("phi1 requires a coarse schedule");
  }
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (x.arity() != s.arity() || basepoint.arity() != s.arity()) {
    throw std::invalid_argument("arity mismatch with schedule");
  }
  const double two_neg_n = std::pow(2.0, -static_cast<double>(s.arity()));
  std::vector<SparseVec> blocks;
  blocks.reserve(K);
  for (std::size_t k = 1; k <= K; ++k) {
    const double R = s.scale_at(k);
    SparseVec diff = sparse_sub(phi_scale(x, R), phi_scale(basepoint, R));
    blocks.push_back(sparse_scaled(diff, s.weight(k) * two_neg_n));
  }
  return blocks;
}

std::vector<SparseVec> embed_phi2_truncated(const Diagram& x,
                                            const ScaleSchedule& s,
                                            std::size_t K) {
  if (s.kind() != ScheduleKind::uniform) {
    throw std::invalid_argument("phi2 requires a uniform schedule");
  }
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (x.arity() != s.arity()) {
    throw std::invalid_argument("arity mismatch with schedule");
  }
  const double two_neg_n = std::pow(2.0, -static_cast<double>(s.arity()));
  std::vector<SparseVec> blocks;
  blocks.reserve(K);
  for (std::size_t k = 1; k <= K; ++k) {
    const double R = s.scale_at(k);
    blocks.push_back(sparse_scaled(phi_scale(x, R), s.weight(k) * two_neg_n));
  }
  return blocks;
}

namespace {

double max_persistence_half(const Diagram& x) {
  // d_B(x, all-Delta diagram) = max_i to_diagonal(x_i).
  double m = 0;
  for (const Point& p : x.points()) m = std::max(m, p.to_diagonal());
  return m;
}

// Coarse schedule: beyond the scale where every death coordinate is below
// 2.5 R_k, each point's only candidate is Delta and the per-scale distance
// collapses to |mp(x) - mp(y)| at the all-Delta key. The tail is then a
// zeta-type series evaluated to a tight bracket.
CertifiedInterval certified_coarse(const Diagram& x, const Diagram& y,
                                   const ScaleSchedule& s, double eps) {
  const std::size_t n = s.arity();
  const double c = s.norm_factor();
  const double two_neg_n = std::pow(2.0, -static_cast<double>(n));
  const double maxdeath = std::max(x.max_death(), y.max_death());

  std::size_t K0 = 1;
  while (2.5 * s.scale_at(K0) <= maxdeath) ++K0;

  double head_sq = 0;
  for (std::size_t k = 1; k <= K0; ++k) {
    const double R = s.scale_at(k);
    const double diff = sparse_distance(phi_scale(x, R), phi_scale(y, R));
    head_sq += pow2(c * s.weight(k) * two_neg_n * diff);
  }

  const double delta = std::abs(max_persistence_half(x) - max_persistence_half(y));
  const double coeff = pow2(c * two_neg_n * delta);

  std::size_t K1 = K0 + 20000;
  for (;;) {
    double partial = 0;
    for (std::size_t k = K1; k > K0; --k) partial += 1.0 / pow2(static_cast<double>(k));
    const double lo = head_sq + coeff * (partial + 1.0 / static_cast<double>(K1 + 1));
    const double hi = head_sq + coeff * (partial + 1.0 / static_cast<double>(K1));
    CertifiedInterval out{std::sqrt(lo), std::sqrt(hi)};
    if (out.upper - out.lower <= eps) return out;
    K1 *= 2;
  }
}

CertifiedInterval certified_uniform(const Diagram& x, const Diagram& y,
                                    const ScaleSchedule& s, double eps) {
  const std::size_t n = s.arity();
  const double c = s.norm_factor();
  const double two_neg_n = std::pow(2.0, -static_cast<double>(n));
  const double d = bottleneck_distance(x, y);

  double head_sq = 0;
  std::size_t K = 0;
  const std::size_t cap = std::size_t{1} << 22;
  for (;;) {
    std::size_t next = K == 0 ? 16 : K * 2;
    for (std::size_t k = K + 1; k <= next; ++k) {
      const double R = s.scale_at(k);
      const double diff = sparse_distance(phi_scale(x, R), phi_scale(y, R));
      head_sq += pow2(c * s.weight(k) * two_neg_n * diff);
    }
    K = next;
    // Per-scale cap: c w_k min(d, 3 R_k); tails sum k^{-2} and k^{-4}.
    const double Kd = static_cast<double>(K);
    const double tail_sq =
        c * c * std::min(d * d / Kd, 9.0 / (3.0 * Kd * Kd * Kd));
    CertifiedInterval out{std::sqrt(head_sq), std::sqrt(head_sq + tail_sq)};
    if (out.upper - out.lower <= eps) return out;
    if (K >= cap) throw std::runtime_error("certified tail did not converge");
  }
}

}  // namespace

CertifiedInterval certified_distance(const Diagram& x, const Diagram& y,
                                     const ScaleSchedule& s, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (x.arity() != s.arity() || y.arity() != s.arity()) {
    throw std::invalid_argument("arity mismatch with schedule");
  }
  switch (s.kind()) {
    case ScheduleKind::coarse:
      return certified_coarse(x, y, s, eps);
    case ScheduleKind::uniform:
      return certified_uniform(x, y, s, eps);
    case ScheduleKind::combined: {
      const ScaleSchedule sc(ScheduleKind::coarse, s.arity());
      const ScaleSchedule su(ScheduleKind::uniform, s.arity());
      const CertifiedInterval a = certified_coarse(x, y, sc, eps);
      const CertifiedInterval b = certified_uniform(x, y, su, eps);
      // Phi = (Phi_1, Phi_2) / sqrt(2): squared distances average.
      return CertifiedInterval{
          std::sqrt((a.lower * a.lower + b.lower * b.lower) / 2.0),
          std::sqrt((a.upper * a.upper + b.upper * b.upper) / 2.0)};
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// Index of the step containing t: largest i with i^2 <= t (coarse),
// smallest i with 1/i <= t (uniform). 0 means "below every step".
std::size_t coarse_step_index(double t) {
  if (t < 1.0) return 0;
  auto i = static_cast<std::size_t>(std::floor(std::sqrt(t)));
  while (static_cast<double>(i + 1) * static_cast<double>(i + 1) <= t) ++i;
  while (i > 0 && static_cast<double>(i) * static_cast<double>(i) > t) --i;
  return i;
}

std::size_t uniform_step_index(double t) {
  if (!(t > 0)) return 0;
  auto i = static_cast<std::size_t>(std::max(1.0, std::ceil(1.0 / t)));
  while (1.0 / static_cast<double>(i) > t) ++i;
  while (i > 1 && 1.0 / static_cast<double>(i - 1) <= t) --i;
  return i;
}

double rho_kind(ScheduleKind kind, std::size_t n, double c, double t,
                bool improved) {
  const double base = base_factor(n);
  if (kind == ScheduleKind::coarse) {
    const std::size_t i = coarse_step_index(t);
    if (i == 0) return 0;
    const double id = static_cast<double>(i);
    if (!improved) return c * base * id;  // w_i R_i = i
    // sum_{j<=i} j^2 = i(i+1)(2i+1)/6
    return c * base * std::sqrt(id * (id + 1) * (2 * id + 1) / 6.0);
  }
  const std::size_t i = uniform_step_index(t);
  if (i == 0) return 0;
  const double id = static_cast<double>(i);
  if (!improved) return c * base / (id * id);  // w_i R_i = i^{-2}
  // sum_{j>=i} j^{-4} = pi^4/90 - sum_{j<i} j^{-4}
  double head = 0;
  for (std::size_t j = i; j-- > 1;) head += 1.0 / std::pow(static_cast<double>(j), 4);
  const double tail = kPi * kPi * kPi * kPi / 90.0 - head;
  return c * base * std::sqrt(std::max(tail, 0.0));
}

double rho_eval(const ScaleSchedule& s, double t, bool improved) {
  if (t < 0) throw std::invalid_argument("t must be nonnegative");
  const double c = s.norm_factor();
  switch (s.kind()) {
    case ScheduleKind::coarse:
      return rho_kind(ScheduleKind::coarse, s.arity(), c, t, improved);
    case ScheduleKind::uniform:
      return rho_kind(ScheduleKind::uniform, s.arity(), c, t, improved);
    case ScheduleKind::combined: {
      const double a = rho_kind(ScheduleKind::coarse, s.arity(), c, t, improved);
      const double b = rho_kind(ScheduleKind::uniform, s.arity(), c, t, improved);
      return std::sqrt((a * a + b * b) / 2.0);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

double rho_minus(const ScaleSchedule& s, double t) { return rho_eval(s, t, false); }

double rho_minus_improved(const ScaleSchedule& s, double t) {
  return rho_eval(s, t, true);
}

}  // namespace pdembed
