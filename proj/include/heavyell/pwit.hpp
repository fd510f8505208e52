// Copyright 2026 The heavyell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Truncated Poisson weighted infinite trees and the root block of their
// bipartized resolvent.
//
// Vertices use heap numbering: the root is 0 and the children of v are
// B v + 1, ..., B v + B. The B edge weights below v are drawn from
// RngStream(tree_seed, v), so a vertex's weights do not depend on B^H, on
// the evaluation order, or on whether the tree is materialized.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "heavyell/errors.hpp"
#include "heavyell/heavy_sampler.hpp"
#include "heavyell/matrix.hpp"
#include "heavyell/resolvent_block.hpp"
#include "heavyell/rng.hpp"
#include "heavyell/spectral_measure.hpp"

namespace heavyell::pwit {

inline constexpr std::uint64_t kMaxMaterializedNodes = 10'000'000;
inline constexpr double kDefaultPruneTolerance = 1e-3;

// Number of vertices of the complete B-ary tree of depth H, or nullopt when
// it exceeds `cap`.
inline std::optional<std::uint64_t> tree_size(std::size_t branching, std::size_t depth,
                                              std::uint64_t cap = kMaxMaterializedNodes) {
  std::uint64_t total = 1;
  std::uint64_t level = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    if (level > cap / branching) return std::nullopt;
    level *= branching;
    total += level;
    if (total > cap) return std::nullopt;
  }
  return total;
}

struct EdgeWeight {
  cplx first{};
  cplx second{};
  double norm = 0.0;
};

/// The B children weights of one vertex, decreasing in norm.
inline std::vector<EdgeWeight> sample_vertex_weights(const SpectralMeasureSpec& spec,
                                                     std::size_t branching,
                                                     std::uint64_t tree_seed,
                                                     std::uint64_t vertex) {
  RngStream rng(tree_seed, vertex);
  const auto ppp = sampler::sample_radial_ppp(spec, branching, rng);
  std::vector<EdgeWeight> out(branching);
  for (std::size_t k = 0; k < branching; ++k) {
    const double r = ppp.radii[k];
    if (r == 0.0) continue;  // empty point process
    const Pair w = sampler::sample_angular(spec, rng);
    out[k] = {r * w.first, r * w.second, r};
  }
  return out;
}

/// Materialized complete B-ary tree of depth H with C^2 edge weights.
class TruncatedPwit {
 public:
  TruncatedPwit(std::size_t branching, std::size_t depth, std::vector<EdgeWeight> weights)
      : branching_(branching), depth_(depth), weights_(std::move(weights)) {}

  std::size_t branching() const noexcept { return branching_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t vertex_count() const noexcept { return weights_.size() + 1; }
  std::size_t edge_count() const noexcept { return weights_.size(); }

  // Weight of the edge from the parent of v to v, v >= 1.
  const EdgeWeight& weight(std::size_t v) const { return weights_.at(v - 1); }
  std::size_t first_child(std::size_t v) const noexcept { return branching_ * v + 1; }
  bool is_leaf(std::size_t v) const noexcept { return first_child(v) >= vertex_count(); }

 private:
  std::size_t branching_;
  std::size_t depth_;
  std::vector<EdgeWeight> weights_;
};

inline TruncatedPwit sample_truncated_pwit(const SpectralMeasureSpec& spec, std::size_t branching,
                                           std::size_t depth, std::uint64_t tree_seed) {
  if (branching == 0) throw ParameterError("PWIT branching must be >= 1");
  spec.validate();
  const auto size = tree_size(branching, depth);
  if (!size) {
    throw ParameterError("PWIT with B^H beyond the materialization guard; use root_block_streamed");
  }
  std::vector<EdgeWeight> weights(*size - 1);
  const std::uint64_t internal = (*size - 1) / branching;
  for (std::uint64_t v = 0; v < internal; ++v) {
    auto w = sample_vertex_weights(spec, branching, tree_seed, v);
    std::copy(w.begin(), w.end(), weights.begin() + static_cast<std::ptrdiff_t>(branching * v));
  }
  return TruncatedPwit(branching, depth, std::move(weights));
}

/// Root block by bottom-up recursion: leaves get -U^{-1}, an internal vertex
/// gets -(U + sum_k edge_term(y_k, R_k))^{-1}.
inline ResolventBlock recursive_resolvent(const TruncatedPwit& tree, const HalfPlanePoint& u) {
  const ResolventBlock uu = u_matrix(u);
  const ResolventBlock leaf = negative_inverse(uu);
  std::vector<ResolventBlock> r(tree.vertex_count(), leaf);
  for (std::size_t v = tree.vertex_count(); v-- > 0;) {
    if (tree.is_leaf(v)) continue;
    ResolventBlock m = uu;
    const std::size_t first = tree.first_child(v);
    for (std::size_t k = 0; k < tree.branching(); ++k) {
      const auto& y = tree.weight(first + k);
      m += edge_term(y.first, y.second, r[first + k]);
    }
    r[v] = negative_inverse(m);
  }
  return r[0];
}

/// The finite tree as an operator matrix: entry (v, child) is the first
/// weight coordinate, entry (child, v) the second.
inline DenseComplexMatrix adjacency_matrix(const TruncatedPwit& tree) {
  DenseComplexMatrix a(tree.vertex_count(), tree.vertex_count());
  for (std::size_t v = 1; v < tree.vertex_count(); ++v) {
    const std::size_t parent = (v - 1) / tree.branching();
    a(parent, v) = tree.weight(v).first;
    a(v, parent) = tree.weight(v).second;
  }
  return a;
}

/// Root block of the depth-H, B-ary tree without materializing it.
///
/// A child whose accumulated weight (product of squared edge norms from the
/// root) falls below `prune_tolerance` is treated as a leaf. With
/// prune_tolerance = 0 the result equals recursive_resolvent on the
/// materialized tree with the same seed.
inline ResolventBlock root_block_streamed(const SpectralMeasureSpec& spec, std::size_t branching,
                                          std::size_t depth, const HalfPlanePoint& u,
                                          std::uint64_t tree_seed, double prune_tolerance = 0.0) {
  if (branching == 0) throw ParameterError("PWIT branching must be >= 1");
  spec.validate();
  const ResolventBlock uu = u_matrix(u);
  const ResolventBlock leaf = negative_inverse(uu);

  struct Walker {
    const SpectralMeasureSpec& spec;
    std::size_t branching;
    std::size_t depth;
    std::uint64_t seed;
    double prune;
    const ResolventBlock& uu;
    const ResolventBlock& leaf;

    ResolventBlock eval(std::uint64_t v, std::size_t level, double path_weight) const {
      if (level == depth) return leaf;
      const auto weights = sample_vertex_weights(spec, branching, seed, v);
      ResolventBlock m = uu;
      for (std::size_t k = 0; k < branching; ++k) {
        const auto& y = weights[k];
        if (y.norm == 0.0) continue;
        const double child_weight = path_weight * y.norm * y.norm;
        const bool expand = level + 1 < depth && child_weight >= prune;
        const ResolventBlock child =
            expand ? eval(branching * v + 1 + k, level + 1, child_weight) : leaf;
        m += edge_term(y.first, y.second, child);
      }
      return negative_inverse(m);
    }
  };
  return Walker{spec, branching, depth, tree_seed, prune_tolerance, uu, leaf}.eval(0, 0, 1.0);
}

/// Monte Carlo mean of the root block over independent trees.
struct PwitResolventEstimate {
  ResolventBlock mean_block;
  std::size_t replicas = 0;
  // sqrt((Var Re + Var Im) / N) per component a, b, b', c; unavailable for N = 1.
  std::optional<std::array<double, 4>> standard_error;
  std::vector<ResolventBlock> samples;
};

inline PwitResolventEstimate summarize(std::vector<ResolventBlock> samples) {
  PwitResolventEstimate est;
  est.replicas = samples.size();
  if (samples.empty()) throw ParameterError("PWIT estimate needs replicas >= 1");
  const double n = static_cast<double>(samples.size());
  for (const auto& s : samples) est.mean_block += s;
  est.mean_block = (1.0 / n) * est.mean_block;
  if (samples.size() > 1) {
    std::array<double, 4> var{};
    for (const auto& s : samples) {
      var[0] += std::norm(s.a - est.mean_block.a);
      var[1] += std::norm(s.b - est.mean_block.b);
      var[2] += std::norm(s.b_prime - est.mean_block.b_prime);
      var[3] += std::norm(s.c - est.mean_block.c);
    }
    std::array<double, 4> se{};
    for (std::size_t i = 0; i < 4; ++i) se[i] = std::sqrt(var[i] / (n - 1.0) / n);
    est.standard_error = se;
  }
  est.samples = std::move(samples);
  return est;
}

/// Tree r uses seed derive_seed(base_seed, r). Trees small enough to
/// materialize are evaluated exactly; larger ones are streamed with the given
/// pruning tolerance.
inline PwitResolventEstimate pwit_stieltjes_estimate(const SpectralMeasureSpec& spec,
                                                     std::size_t branching, std::size_t depth,
                                                     const HalfPlanePoint& u,
                                                     std::size_t replicas, std::uint64_t base_seed,
                                                     double prune_tolerance = kDefaultPruneTolerance) {
  if (replicas == 0) throw ParameterError("PWIT estimate needs replicas >= 1");
  const bool small = tree_size(branching, depth, 200'000).has_value();
  std::vector<ResolventBlock> samples(replicas);
  for (std::size_t r = 0; r < replicas; ++r) {
    const std::uint64_t seed = derive_seed(base_seed, r);
    samples[r] = small ? recursive_resolvent(sample_truncated_pwit(spec, branching, depth, seed), u)
                       : root_block_streamed(spec, branching, depth, u, seed, prune_tolerance);
  }
  return summarize(std::move(samples));
}

/// Smallest t with sum_{k = t+1}^{horizon} Gamma_k^{-2/alpha} <= kappa.
/// `saturated` is set when no t < horizon qualifies.
struct StoppingTime {
  std::size_t tau = 0;
  bool saturated = false;
};

inline StoppingTime tau_stopping_time(double alpha, double kappa, std::size_t horizon,
                                      RngStream& rng) {
  if (horizon == 0) throw ParameterError("tau_stopping_time: horizon must be >= 1");
  if (!(kappa > 0.0)) throw ParameterError("tau_stopping_time: kappa must be positive");
  const auto gammas = sampler::sample_gamma_sequence(horizon, rng);
  // tail[t] = sum_{k > t} Gamma_k^{-2/alpha}, k 1-based.
  std::vector<double> tail(horizon + 1, 0.0);
  for (std::size_t t = horizon; t-- > 0;) {
    tail[t] = tail[t + 1] + std::pow(gammas[t], -2.0 / alpha);
  }
  for (std::size_t t = 0; t < horizon; ++t) {
    if (tail[t] <= kappa) return {t, false};
  }
  return {horizon, true};
}

}  // namespace heavyell::pwit
