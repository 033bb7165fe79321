#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pdembed/diagram.hpp"
#include "pdembed/grid.hpp"

namespace pdembed {

// Finite-dimensional embedding spec on the frame [0, L]^2: strictly
// increasing scales R_1 < ... < R_N <= L and a unit weight vector.
struct BoundedEmbeddingSpec {
  double frame = 0;              // L
  std::vector<double> scales;    // R_1 < ... < R_N <= L
  std::vector<double> weights;   // unit vector
  std::size_t arity = 0;         // n

  static BoundedEmbeddingSpec make(double frame, std::vector<double> scales,
                                   std::vector<double> weights,
                                   std::size_t arity);
};

// Number of eligible grid keys at scale R for the frame: m R < L + 3R/2
// and k R < L + 3R/2. The diagonal is always eligible.
std::size_t eligible_grid_keys(double R, double L,
                               std::vector<GridKey>* out = nullptr);

// nu = C(G + n, n) multiset landmarks whose balls meet the frame.
// Saturates at UINT64_MAX.
std::uint64_t count_landmarks(double R, double L, std::size_t n);

// phi_3(x): per-scale sparse blocks w_k 2^{-n} phi_{R_k}(x).
std::vector<SparseVec> phi3(const Diagram& x, const BoundedEmbeddingSpec& spec);

double phi3_norm(const std::vector<SparseVec>& blocks);
double phi3_distance(const std::vector<SparseVec>& a,
                     const std::vector<SparseVec>& b);

// Dense layout: scale blocks in order, each ordered by the lexicographic
// multiset order over eligible keys with Delta first. Throws if the total
// length exceeds the cap.
std::vector<double> phi3_dense(const Diagram& x, const BoundedEmbeddingSpec& spec,
                               std::uint64_t cap = 1000000);
// The dense coordinate labels, same order.
std::vector<std::string> phi3_dense_header(const BoundedEmbeddingSpec& spec,
                                           std::uint64_t cap = 1000000);

// Step lower-distortion function of phi_3; domain [0, L].
double rho3_steps(const BoundedEmbeddingSpec& spec, double t);
// Linear lower bound: 0 up to R_1, then the minimal chord slope.
double rho3_linear(const BoundedEmbeddingSpec& spec, double t);

struct UniformSpecResult {
  BoundedEmbeddingSpec spec;
  double lambda = 0;
  double slope = 0;  // slope of the linear lower bound rho-hat
};

// Evenly spaced scales on [m, M] with constant weights 1/sqrt(N);
// lambda via the closed-form f/mu shortcut when a = (M-m)/(mN) <= 1,
// by direct minimization of the finite sequence otherwise.
UniformSpecResult uniform_spec(double m, double M, std::size_t N, std::size_t n);

// Two single-point (Delta-padded) diagrams with identical phi_3 images and
// strictly positive bottleneck distance.
std::pair<Diagram, Diagram> non_injectivity_witness(const BoundedEmbeddingSpec& spec);

}  // namespace pdembed
