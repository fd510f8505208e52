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

// Elliptic random matrices: sampling, scaling, the bipartized resolvent and
// the spectral statistics built on it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "heavyell/errors.hpp"
#include "heavyell/heavy_sampler.hpp"
#include "heavyell/linalg.hpp"
#include "heavyell/matrix.hpp"
#include "heavyell/resolvent_block.hpp"
#include "heavyell/rng.hpp"
#include "heavyell/spectral_measure.hpp"

namespace heavyell::ensemble {

using linalg::eigenvalues;
using linalg::singular_values;

struct ConstantDiagonal {
  double value = 1.0;
};
struct SameAsXi1 {};
struct ZeroDiagonal {};
using DiagonalLaw = std::variant<ConstantDiagonal, SameAsXi1, ZeroDiagonal>;

// How an off-diagonal mirrored pair is drawn.
enum class EntryLaw {
  kEllipticPair,      // (X_ij, X_ji) = sample_heavy_pair
  kIidSignedPareto,   // X_ij, X_ji independent, each eps U^{-1/alpha}
};

struct EllipticEnsembleConfig {
  std::size_t n = 1;
  SpectralMeasureSpec spec;
  sampler::RadialLaw radial{spec.alpha};
  DiagonalLaw diagonal = ConstantDiagonal{1.0};
  EntryLaw entries = EntryLaw::kEllipticPair;
  std::uint64_t seed = 0;

  static EllipticEnsembleConfig make(std::size_t n, SpectralMeasureSpec spec, std::uint64_t seed,
                                     DiagonalLaw diagonal = ConstantDiagonal{1.0}) {
    EllipticEnsembleConfig cfg;
    cfg.n = n;
    cfg.radial = sampler::RadialLaw{spec.alpha};
    cfg.spec = std::move(spec);
    cfg.diagonal = diagonal;
    cfg.seed = seed;
    return cfg;
  }
};

// Stream layout: pair (i, j), i < j, uses i n + j; diagonal i uses 2 n^2 + i.
inline std::uint64_t pair_stream(std::size_t n, std::size_t i, std::size_t j) noexcept {
  return static_cast<std::uint64_t>(i) * n + j;
}
inline std::uint64_t diagonal_stream(std::size_t n, std::size_t i) noexcept {
  return 2 * static_cast<std::uint64_t>(n) * n + i;
}

/// The unscaled matrix X_n.
inline DenseComplexMatrix build_elliptic_matrix(const EllipticEnsembleConfig& config) {
  const std::size_t n = config.n;
  if (n == 0) throw DimensionError("ensemble dimension must be positive");
  config.spec.validate();
  if (config.radial.alpha != config.spec.alpha) {
    throw ConfigError("radial law and spectral measure disagree on alpha");
  }
  const double alpha = config.spec.alpha;
  auto signed_pareto = [alpha](RngStream& rng) {
    const double r = std::pow(rng.uniform(), -1.0 / alpha);
    return rng.sign() * r;
  };

  DenseComplexMatrix x(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      RngStream rng(config.seed, pair_stream(n, i, j));
      if (config.entries == EntryLaw::kEllipticPair) {
        const Pair p = sampler::sample_heavy_pair(config.spec, config.radial, rng);
        x(i, j) = p.first;
        x(j, i) = p.second;
      } else {
        x(i, j) = signed_pareto(rng);
        x(j, i) = signed_pareto(rng);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    RngStream rng(config.seed, diagonal_stream(n, i));
    x(i, i) = std::visit(
        [&](const auto& law) -> cplx {
          using T = std::decay_t<decltype(law)>;
          if constexpr (std::is_same_v<T, ConstantDiagonal>) {
            return law.value;
          } else if constexpr (std::is_same_v<T, ZeroDiagonal>) {
            return 0.0;
          } else if (config.entries == EntryLaw::kIidSignedPareto) {
            return signed_pareto(rng);
          } else {
            return sampler::sample_heavy_pair(config.spec, config.radial, rng).first;
          }
        },
        config.diagonal);
  }
  return x;
}

/// A_n - z I with A_n = X / n^{1/alpha}.
inline DenseComplexMatrix scale_and_shift(const DenseComplexMatrix& x, double alpha, cplx z) {
  if (!x.square()) throw DimensionError("scale_and_shift: matrix must be square");
  const double a_n = std::pow(static_cast<double>(x.rows()), 1.0 / alpha);
  DenseComplexMatrix out = x;
  for (auto& v : out.data()) v /= a_n;
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) -= z;
  return out;
}

/// Hermitian 2n x 2n bipartization B(z): 2x2 block (i, j) is
/// (0, A_ij; conj A_ji, 0) and each diagonal block additionally loses
/// (0, z; conj z, 0). Index 2i is the vertex i, index 2i + 1 its mirror.
inline DenseComplexMatrix bipartize(const DenseComplexMatrix& a, cplx z) {
  if (!a.square()) throw DimensionError("bipartize: matrix must be square");
  const std::size_t n = a.rows();
  DenseComplexMatrix b(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx upper = a(i, j);
      if (i == j) upper -= z;
      b(2 * i, 2 * j + 1) = upper;
      b(2 * j + 1, 2 * i) = std::conj(upper);
    }
  }
  return b;
}

/// Diagonal 2x2 blocks of (B(z) - eta I)^{-1}.
inline std::vector<ResolventBlock> resolvent_diag_blocks(const DenseComplexMatrix& a,
                                                         const HalfPlanePoint& u) {
  DenseComplexMatrix shifted = bipartize(a, u.z());
  for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= u.eta();
  const DenseComplexMatrix r = linalg::inverse(shifted);
  std::vector<ResolventBlock> blocks(a.rows());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    blocks[k] = {r(2 * k, 2 * k), r(2 * k, 2 * k + 1), r(2 * k + 1, 2 * k),
                 r(2 * k + 1, 2 * k + 1)};
  }
  return blocks;
}

// (1/2n) sum_k (a_k + c_k).
inline cplx stieltjes_symmetrized(std::span<const ResolventBlock> blocks) {
  if (blocks.empty()) throw PreconditionError("stieltjes_symmetrized: no blocks");
  cplx sum{};
  for (const auto& blk : blocks) sum += blk.a + blk.c;
  return sum / (2.0 * static_cast<double>(blocks.size()));
}

// Stieltjes transform of (1/2n) sum (delta_s + delta_{-s}) at eta.
inline cplx stieltjes_from_singular_values(std::span<const double> svals, cplx eta) {
  if (svals.empty()) throw PreconditionError("stieltjes_from_singular_values: empty list");
  cplx sum{};
  for (double s : svals) sum += 1.0 / (s - eta) + 1.0 / (-s - eta);
  return sum / (2.0 * static_cast<double>(svals.size()));
}

/// (1/n) sum log max(s_i, clamp). When a zero singular value meets a zero
/// clamp the value is -inf and `saturated` is set.
struct LogPotential {
  double value = 0.0;
  bool saturated = false;
};

inline double default_clamp(std::size_t n) { return std::pow(static_cast<double>(n), -3.0); }

inline LogPotential log_potential(std::span<const double> svals, double clamp) {
  if (svals.empty()) throw PreconditionError("log_potential: empty list");
  if (!(clamp >= 0.0)) throw ParameterError("log_potential: clamp must be nonnegative");
  double sum = 0.0;
  for (double s : svals) {
    const double v = std::max(s, clamp);
    if (v <= 0.0) return {-std::numeric_limits<double>::infinity(), true};
    sum += std::log(v);
  }
  return {sum / static_cast<double>(svals.size()), false};
}

// (1/n) sum s_i^r.
inline double nu_moment(std::span<const double> svals, double r) {
  if (!(r > 0.0)) throw ParameterError("nu_moment: r must be positive");
  if (svals.empty()) throw PreconditionError("nu_moment: empty list");
  double sum = 0.0;
  for (double s : svals) sum += std::pow(s, r);
  return sum / static_cast<double>(svals.size());
}

/// s_n(A_n - z) for `trials` independent matrices; trial t uses seed
/// derive_seed(config.seed, t).
inline std::vector<double> least_singular_values(const EllipticEnsembleConfig& config, cplx z,
                                                 std::size_t trials) {
  if (trials == 0) throw ParameterError("least_singular_values: trials must be >= 1");
  std::vector<double> out(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    EllipticEnsembleConfig cfg = config;
    cfg.seed = derive_seed(config.seed, t);
    const auto a = scale_and_shift(build_elliptic_matrix(cfg), cfg.spec.alpha, z);
    out[t] = singular_values(a).back();
  }
  return out;
}

/// Empirical P(s_n <= t / sqrt(n)) at each t of the grid.
inline std::vector<std::pair<double, double>> lsv_tail_curve(std::span<const double> lsv_samples,
                                                             std::size_t n,
                                                             std::span<const double> t_grid) {
  if (lsv_samples.empty()) throw ParameterError("lsv_tail_curve: no samples");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(t_grid.size());
  const double root_n = std::sqrt(static_cast<double>(n));
  for (double t : t_grid) {
    const double level = t / root_n;
    const auto hits = std::count_if(lsv_samples.begin(), lsv_samples.end(),
                                    [level](double s) { return s <= level; });
    curve.emplace_back(t, static_cast<double>(hits) / static_cast<double>(lsv_samples.size()));
  }
  return curve;
}

inline std::vector<std::pair<double, double>> lsv_tail_curve(const EllipticEnsembleConfig& config,
                                                             cplx z, std::size_t trials,
                                                             std::span<const double> t_grid) {
  const auto samples = least_singular_values(config, z, trials);
  return lsv_tail_curve(samples, config.n, t_grid);
}

/// Both sides of sum s_i^{-2} = sum dist(R_i, span of other rows)^{-2}.
struct NegativeSecondMoment {
  double lhs = 0.0;
  double rhs = 0.0;
};

inline NegativeSecondMoment negative_second_moment_identity(const DenseComplexMatrix& m) {
  if (m.rows() == 0 || m.rows() > m.cols()) {
    throw PreconditionError("negative_second_moment_identity: need 1 <= rows <= cols");
  }
  const auto s = singular_values(m);
  if (!(s.back() > 1e-12 * s.front())) {
    throw PreconditionError("negative_second_moment_identity: matrix is rank deficient");
  }
  NegativeSecondMoment out;
  for (double v : s) out.lhs += 1.0 / (v * v);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double d = linalg::row_distance(m, i);
    out.rhs += 1.0 / (d * d);
  }
  return out;
}

}  // namespace heavyell::ensemble
