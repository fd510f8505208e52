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

// Girko Hermitization on a uniform grid: log potentials of A - z from singular
// values, and the eigenvalue measure recovered as (1/2 pi) times their
// discrete Laplacian. Also the Condition C2 support check for the presets.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "heavyell/ensemble.hpp"
#include "heavyell/errors.hpp"
#include "heavyell/matrix.hpp"
#include "heavyell/spectral_measure.hpp"

namespace heavyell {

/// nx x ny nodes re_min + i h, im_min + j h. Values on the grid are stored
/// with i (real part) as the slow index.
struct ComplexGrid {
  double re_min = -3.0;
  double im_min = -3.0;
  double h = 0.05;
  std::size_t nx = 121;
  std::size_t ny = 121;

  // Square window [lo, hi]^2; the node count is rounded to the nearest step.
  static ComplexGrid square(double lo, double hi, double h) {
    if (!(h > 0.0) || !(hi > lo)) throw ParameterError("grid needs h > 0 and hi > lo");
    const auto steps = static_cast<std::size_t>(std::llround((hi - lo) / h));
    return {lo, lo, h, steps + 1, steps + 1};
  }

  std::size_t size() const noexcept { return nx * ny; }
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * ny + j; }
  cplx point(std::size_t i, std::size_t j) const noexcept {
    return {re_min + static_cast<double>(i) * h, im_min + static_cast<double>(j) * h};
  }
};

struct LogPotentialGrid {
  ComplexGrid grid;
  std::vector<double> values;
  std::size_t saturated = 0;  // nodes where the clamp was active
};

/// U(z) = (1/n) sum log max(s_i(A - z), clamp) at every node. `a` is the
/// already scaled matrix A_n.
inline LogPotentialGrid log_potential_grid(const DenseComplexMatrix& a, const ComplexGrid& grid,
                                           double clamp) {
  if (!a.square()) throw DimensionError("log_potential_grid: matrix must be square");
  LogPotentialGrid out{grid, std::vector<double>(grid.size()), 0};
  DenseComplexMatrix shifted = a;
  for (std::size_t i = 0; i < grid.nx; ++i) {
    for (std::size_t j = 0; j < grid.ny; ++j) {
      const cplx z = grid.point(i, j);
      for (std::size_t k = 0; k < a.rows(); ++k) shifted(k, k) = a(k, k) - z;
      const auto s = linalg::singular_values(shifted);
      if (s.back() < clamp) ++out.saturated;
      out.values[grid.index(i, j)] = ensemble::log_potential(s, clamp).value;
    }
  }
  return out;
}

struct HermitizationMeasure {
  ComplexGrid grid;
  std::vector<double> mass;  // clipped at 0; boundary nodes carry no mass
  double total_mass = 0.0;   // after clipping
  double clipped = 0.0;      // total negative mass removed
  double net_mass = 0.0;     // signed stencil sum, total_mass - clipped
};

/// Node mass (U_E + U_W + U_N + U_S - 4 U) / (2 pi) on interior nodes, i.e.
/// the 5-point Laplacian times h^2 / (2 pi).
inline HermitizationMeasure mu_from_hermitization(const ComplexGrid& grid,
                                                  std::span<const double> u_values) {
  if (grid.nx < 5 || grid.ny < 5) throw PreconditionError("Hermitization grid must be >= 5x5");
  if (u_values.size() != grid.size()) throw DimensionError("log-potential count != grid size");
  for (double v : u_values) {
    if (!std::isfinite(v)) throw PreconditionError("log potential must be finite (clamp it)");
  }
  HermitizationMeasure out{grid, std::vector<double>(grid.size(), 0.0), 0.0, 0.0, 0.0};
  for (std::size_t i = 1; i + 1 < grid.nx; ++i) {
    for (std::size_t j = 1; j + 1 < grid.ny; ++j) {
      const double lap = u_values[grid.index(i + 1, j)] + u_values[grid.index(i - 1, j)] +
                         u_values[grid.index(i, j + 1)] + u_values[grid.index(i, j - 1)] -
                         4.0 * u_values[grid.index(i, j)];
      const double m = lap / (2.0 * std::numbers::pi);
      if (m < 0.0) {
        out.clipped -= m;
      } else {
        out.mass[grid.index(i, j)] = m;
        out.total_mass += m;
      }
    }
  }
  out.net_mass = out.total_mass - out.clipped;
  return out;
}

/// Cloud-in-cell histogram: each point spreads mass 1/size bilinearly over
/// the four nodes around it. Mass landing on boundary nodes or outside the
/// grid is dropped, matching the support of mu_from_hermitization.
inline std::vector<double> grid_histogram(const ComplexGrid& grid, std::span<const cplx> points) {
  std::vector<double> hist(grid.size(), 0.0);
  if (points.empty()) return hist;
  const double w = 1.0 / static_cast<double>(points.size());
  auto deposit = [&](long i, long j, double m) {
    if (i < 1 || j < 1 || i + 1 >= static_cast<long>(grid.nx) || j + 1 >= static_cast<long>(grid.ny)) {
      return;
    }
    hist[grid.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j))] += m;
  };
  for (const cplx& p : points) {
    const double fx = (p.real() - grid.re_min) / grid.h;
    const double fy = (p.imag() - grid.im_min) / grid.h;
    if (!(fx > -1.0 && fy > -1.0 && fx < static_cast<double>(grid.nx) &&
          fy < static_cast<double>(grid.ny))) {
      continue;
    }
    const long i = static_cast<long>(std::floor(fx));
    const long j = static_cast<long>(std::floor(fy));
    const double dx = fx - static_cast<double>(i);
    const double dy = fy - static_cast<double>(j);
    deposit(i, j, w * (1 - dx) * (1 - dy));
    deposit(i + 1, j, w * dx * (1 - dy));
    deposit(i, j + 1, w * (1 - dx) * dy);
    deposit(i + 1, j + 1, w * dx * dy);
  }
  return hist;
}

// (1/2) sum |p - q|.
inline double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionError("total_variation: size mismatch");
  double tv = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) tv += std::abs(p[k] - q[k]);
  return 0.5 * tv;
}

/// Condition C2(i): supp theta_d must not lie in a complex line
/// {a z1 + b z2 = 0}. A violation carries the witness (a, b), scaled so that
/// its first nonzero coordinate is 1.
struct C2Check {
  bool satisfied = true;
  std::optional<Pair> witness;
};

namespace detail {

inline C2Check common_line(std::span<const Pair> directions) {
  if (directions.empty()) return {};
  const Pair& w = directions.front();
  for (const Pair& v : directions) {
    // v lies on the line through w iff det(w, v) = 0.
    if (std::abs(w.first * v.second - w.second * v.first) > 1e-12) return {true, std::nullopt};
  }
  Pair ab{w.second, -w.first};
  const cplx lead = std::abs(ab.first) > 1e-12 ? ab.first : ab.second;
  ab = {ab.first / lead, ab.second / lead};
  return {false, ab};
}

}  // namespace detail

inline C2Check validate_c2_support(const SpectralMeasureSpec& spec) {
  return std::visit(
      [](const auto& law) -> C2Check {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, DiscreteAtoms>) {
          std::vector<Pair> dirs;
          for (const auto& atom : law.atoms) {
            if (atom.weight > 0.0) dirs.push_back(atom.direction);
          }
          return detail::common_line(dirs);
        } else if constexpr (std::is_same_v<T, ArcUniform>) {
          if (law.halfwidth > 0.0) return {};
          std::vector<Pair> dirs;
          for (double c : law.centers) dirs.push_back({std::cos(c), std::sin(c)});
          return detail::common_line(dirs);
        } else {
          return {};
        }
      },
      spec.angular);
}

}  // namespace heavyell
