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

// Small statistics toolkit for Monte Carlo checks: sample moments, standard
// errors, medians and Kolmogorov-Smirnov statistics.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "heavyell/errors.hpp"

namespace heavyell::stats {

struct Summary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double standard_error = 0.0;
  std::size_t count = 0;
};

inline Summary summarize(std::span<const double> xs) {
  if (xs.empty()) throw PreconditionError("summarize: empty sample");
  Summary s;
  s.count = xs.size();
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double m2 = 0.0;
  for (double x : xs) m2 += (x - mean) * (x - mean);
  s.mean = mean;
  if (xs.size() > 1) {
    s.variance = m2 / static_cast<double>(xs.size() - 1);
    s.standard_error = std::sqrt(s.variance / static_cast<double>(xs.size()));
  }
  return s;
}

inline double median(std::vector<double> xs) {
  if (xs.empty()) throw PreconditionError("median: empty sample");
  const std::size_t mid = xs.size() / 2;
  std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid), xs.end());
  const double upper = xs[mid];
  if (xs.size() % 2 == 1) return upper;
  const double lower = *std::max_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

// |x - y| / sqrt(se_x^2 + se_y^2).
inline double z_score(double x, double se_x, double y, double se_y) {
  const double se = std::sqrt(se_x * se_x + se_y * se_y);
  if (se == 0.0) return x == y ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(x - y) / se;
}

/// sup |F_a - F_b| between two empirical CDFs.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw PreconditionError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

/// sup |F_n - F| against a continuous CDF.
inline double ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) throw PreconditionError("ks_one_sample: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

// Asymptotic Kolmogorov critical coefficient c(a) = sqrt(-log(a / 2) / 2).
inline double ks_coefficient(double level) { return std::sqrt(-0.5 * std::log(level / 2.0)); }

inline double ks_critical_one_sample(std::size_t n, double level) {
  return ks_coefficient(level) / std::sqrt(static_cast<double>(n));
}

inline double ks_critical_two_sample(std::size_t n, std::size_t m, double level) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return ks_coefficient(level) * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace heavyell::stats
