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

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "heavyell/errors.hpp"

namespace heavyell {

/// Uniformly weighted point multiset: each point carries mass 1/size.
/// Covers spectral measures (complex points) and singular-value measures
/// (real points stored with zero imaginary part).
class EmpiricalMeasure {
 public:
  EmpiricalMeasure() = default;
  explicit EmpiricalMeasure(std::vector<std::complex<double>> points)
      : points_(std::move(points)) {}
  static EmpiricalMeasure from_real(std::span<const double> values) {
    std::vector<std::complex<double>> pts(values.begin(), values.end());
    return EmpiricalMeasure(std::move(pts));
  }
  // (1/2n) sum (delta_s + delta_{-s}).
  static EmpiricalMeasure symmetrized(std::span<const double> values) {
    std::vector<std::complex<double>> pts;
    pts.reserve(2 * values.size());
    for (double s : values) {
      pts.emplace_back(s);
      pts.emplace_back(-s);
    }
    return EmpiricalMeasure(std::move(pts));
  }

  std::size_t size() const noexcept { return points_.size(); }
  std::span<const std::complex<double>> points() const noexcept { return points_; }
  double weight() const noexcept { return points_.empty() ? 0.0 : 1.0 / points_.size(); }

  template <class F>
  auto integrate(F&& f) const {
    if (points_.empty()) throw PreconditionError("empty measure");
    using R = decltype(f(points_.front()));
    R acc{};
    for (const auto& p : points_) acc += f(p);
    return acc * weight();
  }

  // Mass of (-inf, x] using real parts.
  double cdf(double x) const {
    const auto count = std::count_if(points_.begin(), points_.end(),
                                     [x](const auto& p) { return p.real() <= x; });
    return static_cast<double>(count) * weight();
  }

  // int (x - eta)^{-1}, real parts as atoms.
  std::complex<double> stieltjes(std::complex<double> eta) const {
    return integrate([eta](const auto& p) { return 1.0 / (p.real() - eta); });
  }

  // int |x|^r.
  double moment(double r) const {
    return integrate([r](const auto& p) { return std::pow(std::abs(p), r); });
  }

 private:
  std::vector<std::complex<double>> points_;
};

}  // namespace heavyell
