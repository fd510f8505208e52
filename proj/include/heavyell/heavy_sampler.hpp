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

// Samplers for heavy-tailed pairs, the Poisson process with intensity
// theta x m_alpha (m_alpha(dr) = alpha r^{-1-alpha} dr), and one-sided stable
// laws. Everything here is a pure function of its parameters and the
// RngStream handed in.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <type_traits>
#include <vector>

#include "heavyell/errors.hpp"
#include "heavyell/rng.hpp"
#include "heavyell/spectral_measure.hpp"

namespace heavyell::sampler {

// Unit Pareto radius: P(r >= t) = t^{-alpha} for t >= 1.
struct RadialLaw {
  double alpha = 1.0;

  double operator()(RngStream& rng) const { return std::pow(rng.uniform(), -1.0 / alpha); }
};

// The k largest points of the radial Poisson process, in decreasing order.
struct PoissonWeights {
  std::vector<double> gammas;  // Gamma_1 < Gamma_2 < ...
  std::vector<double> radii;   // Gamma_i^{-1/alpha} * total_mass^{1/alpha}
};

// Partial sums of the given exponentials.
inline std::vector<double> gamma_partial_sums(std::span<const double> exponentials) {
  if (exponentials.empty()) throw ParameterError("gamma sequence needs k >= 1");
  std::vector<double> gammas(exponentials.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < exponentials.size(); ++i) {
    sum += exponentials[i];
    gammas[i] = sum;
  }
  return gammas;
}

inline std::vector<double> sample_gamma_sequence(std::size_t k, RngStream& rng) {
  if (k == 0) throw ParameterError("gamma sequence needs k >= 1");
  std::vector<double> gammas(k);
  double sum = 0.0;
  for (auto& g : gammas) {
    sum += rng.exponential();
    g = sum;
  }
  return gammas;
}

inline PoissonWeights radii_from_gammas(std::vector<double> gammas, double alpha,
                                        double total_mass) {
  if (gammas.empty()) throw ParameterError("gamma sequence needs k >= 1");
  PoissonWeights out;
  out.radii.resize(gammas.size());
  const double scale = std::pow(total_mass, 1.0 / alpha);
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    out.radii[i] = scale * std::pow(gammas[i], -1.0 / alpha);
  }
  out.gammas = std::move(gammas);
  return out;
}

inline PoissonWeights sample_radial_ppp(const SpectralMeasureSpec& spec, std::size_t k,
                                        RngStream& rng) {
  return radii_from_gammas(sample_gamma_sequence(k, rng), spec.alpha, spec.total_mass);
}

/// Draw w from the angular measure normalized to a probability measure.
inline Pair sample_angular(const SpectralMeasureSpec& spec, RngStream& rng) {
  if (!(spec.total_mass > 0.0)) throw ConfigError("angular measure has zero total mass");
  return std::visit(
      [&rng](const auto& law) -> Pair {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, DiscreteAtoms>) {
          if (law.atoms.size() == 1) return law.atoms.front().direction;
          double total = 0.0;
          for (const auto& atom : law.atoms) total += atom.weight;
          if (!(total > 0.0)) throw ConfigError("angular measure has zero total mass");
          double target = rng.uniform() * total;
          for (const auto& atom : law.atoms) {
            if (target < atom.weight) return atom.direction;
            target -= atom.weight;
          }
          return law.atoms.back().direction;
        } else if constexpr (std::is_same_v<T, ArcUniform>) {
          const double center = law.centers[rng.index(law.centers.size())];
          const double w = center + law.halfwidth * (2.0 * rng.uniform() - 1.0);
          return {cplx{std::cos(w), 0.0}, cplx{std::sin(w), 0.0}};
        } else if constexpr (std::is_same_v<T, FullCircle>) {
          const double w = 2.0 * std::numbers::pi * rng.uniform();
          return {cplx{std::cos(w), 0.0}, cplx{std::sin(w), 0.0}};
        } else {
          const bool first_axis = (rng() >> 63) == 0;
          cplx phase{1.0, 0.0};
          switch (law.phase) {
            case AxisPhase::kPlus:
              break;
            case AxisPhase::kSign:
              phase = rng.sign();
              break;
            case AxisPhase::kUniformPhase:
              phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
              break;
          }
          return first_axis ? Pair{phase, cplx{}} : Pair{cplx{}, phase};
        }
      },
      spec.angular);
}

/// Draw (xi1, xi2) = total_mass^{1/alpha} r w with r unit Pareto and w
/// angular. With total_mass = 1 this gives P(|(xi1, xi2)| >= t) = t^{-alpha}
/// and a_n = n^{1/alpha}.
inline Pair sample_heavy_pair(const SpectralMeasureSpec& spec, const RadialLaw& radial,
                              RngStream& rng) {
  if (radial.alpha != spec.alpha) throw ParameterError("radial law and spec disagree on alpha");
  const double r = radial(rng);
  if (spec.total_mass == 0.0) return {};  // empty point process
  const Pair w = sample_angular(spec, rng);
  return (std::pow(spec.total_mass, 1.0 / spec.alpha) * r) * w;
}

/// Positive beta-stable Z with E exp(-s Z) = exp(-s^beta), 0 < beta < 1.
///
/// Kanter's representation: Z = (A(U) / E)^{(1-beta)/beta} with
/// A(u) = sin(beta pi u)^{beta/(1-beta)} sin((1-beta) pi u) / sin(pi u)^{1/(1-beta)},
/// U uniform on (0,1), E unit exponential.
inline double sample_one_sided_stable(double beta, RngStream& rng) {
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("one-sided stable needs beta in (0,1)");
  const double u = std::numbers::pi * rng.uniform();
  const double e = rng.exponential();
  const double log_a = beta / (1.0 - beta) * std::log(std::sin(beta * u)) +
                       std::log(std::sin((1.0 - beta) * u)) -
                       std::log(std::sin(u)) / (1.0 - beta);
  return std::exp((1.0 - beta) / beta * (log_a - std::log(e)));
}

using StableVector = std::array<cplx, 4>;

// Sum of r_i^2 v_i over the given terms, added in the given order.
inline StableVector stable_series_sum(std::span<const double> radii,
                                      std::span<const StableVector> vectors) {
  if (radii.size() != vectors.size()) throw DimensionError("radii and vectors differ in length");
  StableVector s{};
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r2 = radii[i] * radii[i];
    for (std::size_t c = 0; c < 4; ++c) s[c] += r2 * vectors[i][c];
  }
  return s;
}

/// Truncated series S = sum_{i <= k} r_i^2 v_i for the alpha/2-stable vector,
/// with r the radial Poisson process and v_i i.i.d. from block_law.
/// block_law is invoked as block_law(rng) and must return a StableVector.
template <class BlockLaw>
StableVector sample_stable_vector_series(const SpectralMeasureSpec& spec, BlockLaw&& block_law,
                                         std::size_t k_terms, RngStream& rng) {
  const PoissonWeights weights = sample_radial_ppp(spec, k_terms, rng);
  std::vector<StableVector> vectors;
  vectors.reserve(k_terms);
  for (std::size_t i = 0; i < k_terms; ++i) vectors.push_back(block_law(rng));
  return stable_series_sum(weights.radii, vectors);
}

}  // namespace heavyell::sampler
