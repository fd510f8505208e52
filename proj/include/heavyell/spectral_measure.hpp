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

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "heavyell/errors.hpp"

namespace heavyell {

using cplx = std::complex<double>;

// A point (w1, w2) of C^2. Angular samples have unit norm.
struct Pair {
  cplx first{};
  cplx second{};

  double norm() const noexcept { return std::sqrt(std::norm(first) + std::norm(second)); }
};

inline Pair operator*(double s, const Pair& p) noexcept { return {s * p.first, s * p.second}; }

// --- angular laws ---------------------------------------------------------

struct AngularAtom {
  Pair direction;
  double weight = 1.0;
};

// Finitely many weighted unit vectors of C^2.
struct DiscreteAtoms {
  std::vector<AngularAtom> atoms;
};

// w uniform on the union of arcs [c - h, c + h], applied to the real pair
// (cos w, sin w). Every arc carries the same mass.
struct ArcUniform {
  std::vector<double> centers;
  double halfwidth = 0.0;
};

// w uniform on [0, 2 pi), pair (cos w, sin w).
struct FullCircle {};

// Phase attached to the nonzero coordinate of an axis sample.
enum class AxisPhase { kPlus, kSign, kUniformPhase };

// Mass 1/2 on each coordinate axis; the nonzero coordinate carries a phase.
struct IndependentAxes {
  AxisPhase phase = AxisPhase::kSign;
};

using AngularLaw = std::variant<DiscreteAtoms, ArcUniform, FullCircle, IndependentAxes>;

/// Tail index and angular measure of a heavy-tailed pair.
///
/// `total_mass` is the mass of the angular measure. For DiscreteAtoms it must
/// equal the sum of the atom weights; the other families take it as a free
/// scale. A zero total mass describes the empty point process (every radius
/// vanishes); it is accepted by the radial samplers but not by sample_angular.
struct SpectralMeasureSpec {
  double alpha = 1.0;
  AngularLaw angular = FullCircle{};
  double total_mass = 1.0;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 2.0)) {
      throw ParameterError("alpha must lie in (0, 2), got " + std::to_string(alpha));
    }
    if (!(total_mass >= 0.0) || !std::isfinite(total_mass)) {
      throw ConfigError("total_mass must be finite and nonnegative");
    }
    if (const auto* atoms = std::get_if<DiscreteAtoms>(&angular)) {
      if (atoms->atoms.empty()) throw ConfigError("DiscreteAtoms needs at least one atom");
      double sum = 0.0;
      for (const auto& atom : atoms->atoms) {
        if (!(atom.weight >= 0.0)) throw ConfigError("atom weights must be nonnegative");
        if (std::abs(atom.direction.norm() - 1.0) > 1e-12) {
          throw ConfigError("atom directions must have unit norm");
        }
        sum += atom.weight;
      }
      if (std::abs(sum - total_mass) > 1e-12) {
        throw ConfigError("atom weights must sum to total_mass");
      }
    } else if (const auto* arcs = std::get_if<ArcUniform>(&angular)) {
      if (arcs->centers.empty()) throw ConfigError("ArcUniform needs at least one center");
      if (!(arcs->halfwidth >= 0.0 && arcs->halfwidth <= std::numbers::pi)) {
        throw ConfigError("ArcUniform halfwidth must lie in [0, pi]");
      }
    }
  }

  bool is_real() const noexcept {
    if (const auto* atoms = std::get_if<DiscreteAtoms>(&angular)) {
      for (const auto& atom : atoms->atoms) {
        if (atom.direction.first.imag() != 0.0 || atom.direction.second.imag() != 0.0) {
          return false;
        }
      }
      return true;
    }
    if (const auto* axes = std::get_if<IndependentAxes>(&angular)) {
      return axes->phase != AxisPhase::kUniformPhase;
    }
    return true;
  }
};

// --- presets ---------------------------------------------------------------

inline SpectralMeasureSpec full_circle(double alpha) {
  SpectralMeasureSpec spec{alpha, FullCircle{}, 1.0};
  spec.validate();
  return spec;
}

inline SpectralMeasureSpec independent_axes(double alpha, AxisPhase phase = AxisPhase::kSign) {
  SpectralMeasureSpec spec{alpha, IndependentAxes{phase}, 1.0};
  spec.validate();
  return spec;
}

// Arcs of halfwidth b * pi / 4 around the given centers.
inline SpectralMeasureSpec arcs(double alpha, std::vector<double> centers, double b) {
  SpectralMeasureSpec spec{alpha, ArcUniform{std::move(centers), b * std::numbers::pi / 4.0}, 1.0};
  spec.validate();
  return spec;
}

// total_mass is the sum of the weights.
inline SpectralMeasureSpec atoms(double alpha, std::vector<AngularAtom> list) {
  double sum = 0.0;
  for (const auto& atom : list) sum += atom.weight;
  SpectralMeasureSpec spec{alpha, DiscreteAtoms{std::move(list)}, sum};
  spec.validate();
  return spec;
}

// --- angular moments -------------------------------------------------------

/// First moments of the normalized angular law: E|w1|^2, E|w2|^2, E[w1 w2].
struct AngularMoments {
  double first_sq = 0.0;
  double second_sq = 0.0;
  cplx product{};
};

inline AngularMoments angular_moments(const SpectralMeasureSpec& spec) {
  return std::visit(
      [](const auto& law) -> AngularMoments {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, DiscreteAtoms>) {
          AngularMoments m;
          double total = 0.0;
          for (const auto& atom : law.atoms) total += atom.weight;
          if (total <= 0.0) throw ConfigError("angular measure has zero mass");
          for (const auto& atom : law.atoms) {
            const double p = atom.weight / total;
            m.first_sq += p * std::norm(atom.direction.first);
            m.second_sq += p * std::norm(atom.direction.second);
            m.product += p * atom.direction.first * atom.direction.second;
          }
          return m;
        } else if constexpr (std::is_same_v<T, ArcUniform>) {
          // Over [c - h, c + h]: E cos^2 = 1/2 + cos(2c) sinc(2h) / 2,
          // E cos sin = sin(2c) sinc(2h) / 2.
          const double h = law.halfwidth;
          const double sinc = h > 0.0 ? std::sin(2.0 * h) / (2.0 * h) : 1.0;
          AngularMoments m;
          const double k = 1.0 / static_cast<double>(law.centers.size());
          for (double c : law.centers) {
            m.first_sq += k * (0.5 + 0.5 * std::cos(2.0 * c) * sinc);
            m.product += k * 0.5 * std::sin(2.0 * c) * sinc;
          }
          m.second_sq = 1.0 - m.first_sq;
          return m;
        } else if constexpr (std::is_same_v<T, FullCircle>) {
          return {0.5, 0.5, cplx{}};
        } else {
          return {0.5, 0.5, cplx{}};
        }
      },
      spec.angular);
}

inline std::string describe(const SpectralMeasureSpec& spec) {
  return std::visit(
      [](const auto& law) -> std::string {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, DiscreteAtoms>) {
          return "atoms(" + std::to_string(law.atoms.size()) + ")";
        } else if constexpr (std::is_same_v<T, ArcUniform>) {
          return "arcs(" + std::to_string(law.centers.size()) + " centers)";
        } else if constexpr (std::is_same_v<T, FullCircle>) {
          return "circle";
        } else {
          return "iid";
        }
      },
      spec.angular);
}

}  // namespace heavyell
