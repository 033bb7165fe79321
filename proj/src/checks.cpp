#include "pdembed/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "pdembed/bounded.hpp"
#include "pdembed/grid.hpp"
#include "pdembed/injective.hpp"
#include "pdembed/multiscale.hpp"

namespace pdembed {

Diagram sample_diagram(std::mt19937_64& rng, std::size_t n, double L,
                       double diag_prob) {
  if (!(diag_prob >= 0) || !(diag_prob <= 1)) {
    throw std::invalid_argument("diag_prob must lie in [0, 1]");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (unit(rng) < diag_prob) {
      pts.push_back(Point::diag());
      continue;
    }
    double a = unit(rng) * L;
    double b = unit(rng) * L;
    while (a == b) b = unit(rng) * L;
    pts.push_back(Point(std::min(a, b), std::max(a, b)));
  }
  return Diagram(std::move(pts));
}

namespace {

constexpr double kPhiScales[] = {0.5, 1.0, 3.0};

using CheckFn = std::function<CheckReport(const CheckConfig&)>;

CheckReport make_report(const std::string& name, std::size_t samples,
                        double worst, const CheckConfig& cfg) {
  return CheckReport{name, samples, worst, worst >= -cfg.tolerance, cfg.seed};
}

CheckReport check_oracle_equivalence(const CheckConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const std::size_t n = std::min<std::size_t>(cfg.arity, 6);
  double worst = 0;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Diagram x = sample_diagram(rng, n, cfg.frame, 0.2);
    const Diagram y = sample_diagram(rng, n, cfg.frame, 0.2);
    worst = std::min(worst,
                     -std::abs(bottleneck_distance(x, y) - bottleneck_bruteforce(x, y)));
  }
  return make_report("oracle-equivalence", cfg.samples, worst, cfg);
}

CheckReport check_lipschitz_phiR(const CheckConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const double bound = std::pow(2.0, static_cast<double>(cfg.arity));
  double worst = 0;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Diagram x = sample_diagram(rng, cfg.arity, cfg.frame, 0.2);
    const Diagram y = sample_diagram(rng, cfg.arity, cfg.frame, 0.2);
    const double d = bottleneck_distance(x, y);
    for (double R : kPhiScales) {
      const double img = sparse_distance(phi_scale(x, R), phi_scale(y, R));
      worst = std::min(worst, (bound * d - img) / std::max(1.0, R));
    }
  }
  return make_report("lipschitz-phiR", cfg.samples, worst, cfg);
}

CheckReport check_norm_floor(const CheckConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  double worst = 0;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Diagram x = sample_diagram(rng, cfg.arity, cfg.frame, 0.2);
    for (double R : kPhiScales) {
      worst = std::min(worst, (phi_scale(x, R).norm() - R / 8.0) / std::max(1.0, R));
    }
  }
  return make_report("norm-floor", cfg.samples, worst, cfg);
}

// Adversarial pairs: shift every death up by 3R + delta, then keep only
// pairs the oracle certifies at distance >= 3R.
CheckReport check_separation(const CheckConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const std::size_t n = std::min<std::size_t>(cfg.arity, 4);
  const std::size_t wanted = std::min<std::size_t>(cfg.samples, 200);
  double worst = 0;
  for (double R : kPhiScales) {
    const double delta = R / 10.0;
    std::size_t accepted = 0, attempts = 0;
    while (accepted < wanted && attempts < wanted * 50) {
      ++attempts;
      const Diagram x = sample_diagram(rng, n, cfg.frame, 0.0);
      std::vector<Point> shifted;
      for (const Point& p : x.points()) {
        shifted.push_back(Point(p.birth(), p.death() + 3 * R + delta));
      }
      const Diagram y(std::move(shifted));
      if (bottleneck_bruteforce(x, y) < 3 * R) continue;
      ++accepted;
      const double img = sparse_distance(phi_scale(x, R), phi_scale(y, R));
      worst = std::min(worst, (img - R * std::sqrt(2.0) / 8.0) / std::max(1.0, R));
    }
    if (accepted < wanted) {
      return make_report("separation", accepted, -1.0, cfg);
    }
  }
  return make_report("separation", wanted, worst, cfg);
}

CheckReport check_multiplicity(const CheckConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const double bound = std::pow(4.0, static_cast<double>(cfg.arity));
  double worst = 0;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Diagram x = sample_diagram(rng, cfg.arity, cfg.frame, 0.2);
    for (double R : kPhiScales) {
      const auto support = phi_scale(x, R).entries.size();
      worst = std::min(worst, bound - static_cast<double>(support));
    }
  }
  return make_report("multiplicity", cfg.samples, worst, cfg);
}

CheckReport check_co_support_diameter(const CheckConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  double worst = 0;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Diagram x = sample_diagram(rng, cfg.arity, cfg.frame, 0.2);
    const Diagram y = sample_diagram(rng, cfg.arity, cfg.frame, 0.2);
    for (double R : kPhiScales) {
      const SparseVec fx = phi_scale(x, R);
      const SparseVec fy = phi_scale(y, R);
      bool shared = false;
      for (const auto& [k, v] : fx.entries) {
        if (fy.entries.count(k)) {
          shared = true;
          break;
        }
      }
      if (!shared) continue;
      const double d = bottleneck_distance(x, y);
      worst = std::min(worst, (3 * R - d) / std::max(1.0, R));
    }
  }
  return make_report("co-support-diameter", cfg.samples, worst, cfg);
}

BoundedEmbeddingSpec example_spec(std::size_t n) {
  return uniform_spec(1.0, 5.0, 4, n).spec;
}

CheckReport check_phi3_lipschitz(const CheckConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const auto spec = example_spec(cfg.arity);
  double worst = 0;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Diagram x = sample_diagram(rng, cfg.arity, spec.frame, 0.2);
    const Diagram y = sample_diagram(rng, cfg.arity, spec.frame, 0.2);
    const double d = bottleneck_distance(x, y);
    const double img = phi3_distance(phi3(x, spec), phi3(y, spec));
    worst = std::min(worst, d - img);
  }
  return make_report("phi3-lipschitz", cfg.samples, worst, cfg);
}

CheckReport check_phi3_steps(const CheckConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const auto spec = example_spec(cfg.arity);
  double worst = 0;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Diagram x = sample_diagram(rng, cfg.arity, spec.frame, 0.2);
    const Diagram y = sample_diagram(rng, cfg.arity, spec.frame, 0.2);
    const double d = bottleneck_distance(x, y);
    const double img = phi3_distance(phi3(x, spec), phi3(y, spec));
    for (double R : spec.scales) {
      if (d < R) continue;
      worst = std::min(worst, img - rho3_steps(spec, R));
    }
  }
  return make_report("phi3-steps", cfg.samples, worst, cfg);
}

CheckReport check_multiscale(const CheckConfig& cfg, bool distortion) {
  std::mt19937_64 rng(cfg.seed);
  const std::size_t samples = std::min<std::size_t>(cfg.samples, 200);
  const double eps = 1e-3;
  double worst = 0;
  for (ScheduleKind kind :
       {ScheduleKind::coarse, ScheduleKind::uniform, ScheduleKind::combined}) {
    const ScaleSchedule s(kind, cfg.arity);
    for (std::size_t i = 0; i < samples; ++i) {
      const Diagram x = sample_diagram(rng, cfg.arity, cfg.frame, 0.2);
      const Diagram y = sample_diagram(rng, cfg.arity, cfg.frame, 0.2);
      const double d = bottleneck_distance(x, y);
      const CertifiedInterval iv = certified_distance(x, y, s, eps);
      if (distortion) {
        worst = std::min(worst, iv.lower + eps - rho_minus(s, d));
      } else {
        worst = std::min(worst, d + eps - iv.upper);
      }
    }
  }
  return make_report(distortion ? "multiscale-distortion" : "multiscale-lipschitz",
                     samples, worst, cfg);
}

CheckReport check_witness_zero(const CheckConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t specs = 20;
  double worst = 0;
  for (std::size_t i = 0; i < specs; ++i) {
    const double m = 0.5 + 1.5 * unit(rng);
    const double M = m + 1.0 + 4.0 * unit(rng);
    const auto N = static_cast<std::size_t>(1 + std::floor(6.0 * unit(rng)));
    const auto spec = uniform_spec(m, M, N, cfg.arity).spec;
    const auto [x, y] = non_injectivity_witness(spec);
    const double img = phi3_distance(phi3(x, spec), phi3(y, spec));
    const double d = bottleneck_distance(x, y);
    worst = std::min(worst, -img);
    if (!(d > 0)) worst = std::min(worst, -1.0);
  }
  return make_report("witness-zero", specs, worst, cfg);
}

// Multiset comparison after reconstruction: same Delta count, matched
// coordinates within tolerance.
double roundtrip_error(const Diagram& a, const Diagram& b) {
  if (a.arity() != b.arity()) return 1.0;
  double err = 0;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    const Point& p = a[i];
    const Point& q = b[i];
    if (p.is_diagonal() != q.is_diagonal()) return 1.0;
    if (!p.is_diagonal()) {
      err = std::max(err, std::max(std::abs(p.birth() - q.birth()),
                                   std::abs(p.death() - q.death())));
    }
  }
  return err;
}

CheckReport check_inject_roundtrip(const CheckConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const std::size_t n = std::min<std::size_t>(cfg.arity, 4);
  const AnchorSet anchors = AnchorSet::defaults(cfg.frame, n);
  double worst = 0;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Diagram x = sample_diagram(rng, n, cfg.frame, 0.2);
    const auto image = injective_embed(x, anchors, cfg.frame);
    const Diagram back = reconstruct(image, anchors, n, cfg.frame);
    worst = std::min(worst, 1e-6 - roundtrip_error(x, back));
  }
  return make_report("inject-roundtrip", cfg.samples, worst, cfg);
}

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> reg = {
      {"oracle-equivalence", check_oracle_equivalence},
      {"lipschitz-phiR", check_lipschitz_phiR},
      {"norm-floor", check_norm_floor},
      {"separation", check_separation},
      {"multiplicity", check_multiplicity},
      {"co-support-diameter", check_co_support_diameter},
      {"phi3-lipschitz", check_phi3_lipschitz},
      {"phi3-steps", check_phi3_steps},
      {"multiscale-lipschitz",
       [](const CheckConfig& c) { return check_multiscale(c, false); }},
      {"multiscale-distortion",
       [](const CheckConfig& c) { return check_multiscale(c, true); }},
      {"witness-zero", check_witness_zero},
      {"inject-roundtrip", check_inject_roundtrip},
  };
  return reg;
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

std::vector<CheckReport> run_checks(const std::vector<std::string>& suite,
                                    const CheckConfig& config) {
  std::vector<CheckReport> reports;
  for (const std::string& name : suite) {
    const auto it = registry().find(name);
    if (it == registry().end()) {
      throw std::invalid_argument("unknown check: " + name);
    }
    reports.push_back(it->second(config));
  }
  return reports;
}

}  // namespace pdembed
