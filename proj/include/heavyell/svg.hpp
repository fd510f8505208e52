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

// Minimal SVG scatter plot. Points outside the window are skipped; the caller
// keeps the full data elsewhere.

#include <complex>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>

#include "heavyell/errors.hpp"
#include "heavyell/io.hpp"

namespace heavyell::svg {

struct Window {
  double re_min = -3.0, re_max = 3.0;
  double im_min = -3.0, im_max = 3.0;

  bool contains(std::complex<double> z) const noexcept {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
  }
};

inline constexpr int kSize = 800;

// Returns the number of points drawn.
inline std::size_t write_scatter(const std::filesystem::path& path,
                                 std::span<const std::complex<double>> points, const Window& win,
                                 const std::string& title) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  const double sx = kSize / (win.re_max - win.re_min);
  const double sy = kSize / (win.im_max - win.im_min);
  auto px = [&](double re) { return (re - win.re_min) * sx; };
  auto py = [&](double im) { return (win.im_max - im) * sy; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  out << "<title>" << title << "</title>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (win.im_min < 0 && win.im_max > 0) {
    out << "<line x1=\"0\" y1=\"" << io::fmt(py(0)) << "\" x2=\"" << kSize << "\" y2=\""
        << io::fmt(py(0)) << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
  }
  if (win.re_min < 0 && win.re_max > 0) {
    out << "<line x1=\"" << io::fmt(px(0)) << "\" y1=\"0\" x2=\"" << io::fmt(px(0)) << "\" y2=\""
        << kSize << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
  }
  std::size_t drawn = 0;
  for (const auto& z : points) {
    if (!win.contains(z)) continue;
    out << "<circle cx=\"" << io::fmt(px(z.real())) << "\" cy=\"" << io::fmt(py(z.imag()))
        << "\" r=\"1.5\" fill=\"#1f4e9c\"/>\n";
    ++drawn;
  }
  out << "</svg>\n";
  return drawn;
}

}  // namespace heavyell::svg
