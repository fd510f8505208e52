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

// The 2x2 resolvent block (a, b; b', c) shared by the matrix, tree and
// population-dynamics routes, plus the point U(z, eta) = (eta, z; conj z, eta).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "heavyell/errors.hpp"

namespace heavyell {

using cplx = std::complex<double>;

/// (z, eta) with Im(eta) > 0.
class HalfPlanePoint {
 public:
  HalfPlanePoint(cplx z, cplx eta) : z_(z), eta_(eta) {
    if (!(eta.imag() > 0.0)) {
      throw ParameterError("eta must lie in the open upper half plane, got Im(eta) = " +
                           std::to_string(eta.imag()));
    }
  }
  cplx z() const noexcept { return z_; }
  cplx eta() const noexcept { return eta_; }

 private:
  cplx z_;
  cplx eta_;
};

/// Row-major 2x2 complex matrix (a, b; b_prime, c).
struct ResolventBlock {
  cplx a{};
  cplx b{};
  cplx b_prime{};
  cplx c{};

  ResolventBlock& operator+=(const ResolventBlock& o) noexcept {
    a += o.a;
    b += o.b;
    b_prime += o.b_prime;
    c += o.c;
    return *this;
  }
  friend ResolventBlock operator+(ResolventBlock x, const ResolventBlock& y) noexcept {
    return x += y;
  }
  friend ResolventBlock operator*(double s, const ResolventBlock& x) noexcept {
    return {s * x.a, s * x.b, s * x.b_prime, s * x.c};
  }
  friend ResolventBlock operator*(const ResolventBlock& x, const ResolventBlock& y) noexcept {
    return {x.a * y.a + x.b * y.b_prime, x.a * y.b + x.b * y.c,
            x.b_prime * y.a + x.c * y.b_prime, x.b_prime * y.b + x.c * y.c};
  }

  cplx determinant() const noexcept { return a * c - b * b_prime; }

  double max_abs_diff(const ResolventBlock& o) const noexcept {
    return std::max({std::abs(a - o.a), std::abs(b - o.b), std::abs(b_prime - o.b_prime),
                     std::abs(c - o.c)});
  }
};

inline ResolventBlock u_matrix(const HalfPlanePoint& u) noexcept {
  return {u.eta(), u.z(), std::conj(u.z()), u.eta()};
}

/// -M^{-1}. Throws NumericError when M is numerically singular; for
/// M = U + S with Im(eta) > 0 and S built from valid blocks that cannot happen.
inline ResolventBlock negative_inverse(const ResolventBlock& m) {
  const cplx det = m.determinant();
  const double scale = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.b_prime),
                                 std::abs(m.c), std::numeric_limits<double>::min()});
  if (!(std::abs(det) > 1e-300) || !(std::abs(det) > 1e-15 * scale * scale) ||
      !std::isfinite(det.real()) || !std::isfinite(det.imag())) {
    throw NumericError("2x2 block is singular; the Im(eta) > 0 invariant was violated");
  }
  const cplx inv = -1.0 / det;
  return {inv * m.c, -inv * m.b, -inv * m.b_prime, inv * m.a};
}

// Leaf value -U^{-1}: the resolvent of a vertex with no neighbours.
inline ResolventBlock free_resolvent(const HalfPlanePoint& u) {
  return negative_inverse(u_matrix(u));
}

/// Edge term (0, y1; conj y2, 0) R (0, y2; conj y1, 0) for an edge with
/// weight (y1, y2) into a child whose block is R. Expands to
/// (c |y1|^2, b' y1 y2; b conj(y1 y2), a |y2|^2).
inline ResolventBlock edge_term(cplx y1, cplx y2, const ResolventBlock& child) noexcept {
  const cplx prod = y1 * y2;
  return {child.c * std::norm(y1), child.b_prime * prod, child.b * std::conj(prod),
          child.a * std::norm(y2)};
}

/// Modulus bounds |a|, |c| <= 1/Im eta and |b|, |b'| <= 1/(2 Im eta), and on
/// the imaginary axis the structure Re a = Re c = 0, b' = conj b.
struct BlockCheck {
  bool modulus_ok = true;
  bool structure_ok = true;
  bool ok() const noexcept { return modulus_ok && structure_ok; }
};

inline BlockCheck check_block(const ResolventBlock& r, cplx eta, double tol = 1e-10) {
  BlockCheck out;
  const double inv = 1.0 / eta.imag();
  const double slack = 1.0 + 1e-9;
  out.modulus_ok = std::abs(r.a) <= inv * slack && std::abs(r.c) <= inv * slack &&
                   std::abs(r.b) <= 0.5 * inv * slack && std::abs(r.b_prime) <= 0.5 * inv * slack;
  if (eta.real() == 0.0) {
    out.structure_ok = std::abs(r.a.real()) <= tol && std::abs(r.c.real()) <= tol &&
                       std::abs(r.b_prime - std::conj(r.b)) <= tol;
  }
  return out;
}

}  // namespace heavyell
