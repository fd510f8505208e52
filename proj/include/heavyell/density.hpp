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

// Stieltjes inversion: density(E) = Im m(E + i eps) / pi on a real grid.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "heavyell/errors.hpp"

namespace heavyell {

struct DensityGrid {
  std::vector<double> abscissae;
  std::vector<double> values;
  double eta_imag = 0.0;
  double clipped = 0.0;  // largest negative value set to 0

  double trapezoid_mass() const {
    double mass = 0.0;
    for (std::size_t k = 1; k < abscissae.size(); ++k) {
      mass += 0.5 * (values[k] + values[k - 1]) * (abscissae[k] - abscissae[k - 1]);
    }
    return mass;
  }
};

inline DensityGrid density_from_stieltjes(
    std::span<const std::pair<double, std::complex<double>>> m_curve, double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("density_from_stieltjes: epsilon must be positive");
  DensityGrid out;
  out.eta_imag = epsilon;
  for (std::size_t k = 0; k < m_curve.size(); ++k) {
    if (k > 0 && !(m_curve[k].first > m_curve[k - 1].first)) {
      throw PreconditionError("density_from_stieltjes: abscissae must increase");
    }
    const double d = m_curve[k].second.imag() / std::numbers::pi;
    if (d < 0.0) out.clipped = std::max(out.clipped, -d);
    out.abscissae.push_back(m_curve[k].first);
    out.values.push_back(std::max(d, 0.0));
  }
  return out;
}

}  // namespace heavyell
