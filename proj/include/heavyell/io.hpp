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

// File formats: CSV emitters, the atom CSV reader, the key = value config
// reader and the `theta` preset grammar.

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heavyell/density.hpp"
#include "heavyell/errors.hpp"
#include "heavyell/hermitization.hpp"
#include "heavyell/pwit.hpp"
#include "heavyell/resolvent_block.hpp"
#include "heavyell/spectral_measure.hpp"

namespace heavyell::io {

// Shortest round-trip decimal form.
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::string_view header) : out_(path) {
    if (!out_) throw Error("cannot open " + path.string() + " for writing");
    out_ << header << '\n';
  }
  template <class... T>
  void row(const T&... values) {
    std::size_t k = 0;
    ((out_ << (k++ ? "," : "") << fmt(static_cast<double>(values))), ...);
    out_ << '\n';
  }
  ~CsvWriter() { out_.flush(); }

 private:
  std::ofstream out_;
};

inline void write_eigenvalues(const std::filesystem::path& path, std::span<const cplx> eigs) {
  CsvWriter w(path, "re,im");
  for (const auto& l : eigs) w.row(l.real(), l.imag());
}

inline void write_singular_values(const std::filesystem::path& path, std::span<const double> s) {
  CsvWriter w(path, "s");
  for (double v : s) w.row(v);
}

inline void write_stieltjes(const std::filesystem::path& path,
                            std::span<const std::pair<double, cplx>> curve) {
  CsvWriter w(path, "eta_im,m_re,m_im");
  for (const auto& [eta, m] : curve) w.row(eta, m.real(), m.imag());
}

inline void write_pwit_estimate(const std::filesystem::path& path, const HalfPlanePoint& u,
                                const pwit::PwitResolventEstimate& est) {
  CsvWriter w(path, "z_re,z_im,eta_im,a_re,a_im,b_re,b_im,bp_re,bp_im,c_re,c_im,se_a");
  const auto& m = est.mean_block;
  const double se = est.standard_error ? (*est.standard_error)[0] : std::nan("");
  w.row(u.z().real(), u.z().imag(), u.eta().imag(), m.a.real(), m.a.imag(), m.b.real(),
        m.b.imag(), m.b_prime.real(), m.b_prime.imag(), m.c.real(), m.c.imag(), se);
}

inline void write_population(const std::filesystem::path& path,
                             std::span<const ResolventBlock> pool) {
  CsvWriter w(path, "a_re,a_im,b_re,b_im,bp_re,bp_im,c_re,c_im");
  for (const auto& b : pool) {
    w.row(b.a.real(), b.a.imag(), b.b.real(), b.b.imag(), b.b_prime.real(), b.b_prime.imag(),
          b.c.real(), b.c.imag());
  }
}

inline void write_density(const std::filesystem::path& path, const DensityGrid& d) {
  CsvWriter w(path, "E,density");
  for (std::size_t k = 0; k < d.values.size(); ++k) w.row(d.abscissae[k], d.values[k]);
}

inline void write_mu_grid(const std::filesystem::path& path, const HermitizationMeasure& mu) {
  CsvWriter w(path, "z_re,z_im,mass");
  for (std::size_t i = 0; i < mu.grid.nx; ++i) {
    for (std::size_t j = 0; j < mu.grid.ny; ++j) {
      const cplx z = mu.grid.point(i, j);
      w.row(z.real(), z.imag(), mu.mass[mu.grid.index(i, j)]);
    }
  }
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

inline double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

/// Angles as plain radians or multiples of pi: "1.5", "pi", "3pi/2",
/// "0.25*pi", "pi/4", "5*pi/4".
inline double parse_angle(std::string s) {
  s = trim(s);
  const auto at = s.find("pi");
  if (at == std::string::npos) return parse_double(s);
  std::string coef = trim(s.substr(0, at));
  if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
  double v = (coef.empty() ? 1.0 : parse_double(coef)) * std::numbers::pi;
  std::string rest = trim(s.substr(at + 2));
  if (!rest.empty()) {
    if (rest.front() != '/') throw ConfigError("bad angle: '" + s + "'");
    v /= parse_double(trim(rest.substr(1)));
  }
  return v;
}

/// Atom CSV, header re1,im1,re2,im2,weight.
inline std::vector<AngularAtom> read_atoms(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open atom file " + path.string());
  std::string line;
  std::getline(in, line);
  if (trim(line) != "re1,im1,re2,im2,weight") {
    throw ConfigError("atom file header must be re1,im1,re2,im2,weight");
  }
  std::vector<AngularAtom> atoms;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 5) throw ConfigError("atom row needs 5 fields: " + line);
    atoms.push_back({{cplx(parse_double(f[0]), parse_double(f[1])),
                      cplx(parse_double(f[2]), parse_double(f[3]))},
                     parse_double(f[4])});
  }
  return atoms;
}

/// theta = iid | circle | arcs(centers=...; b=...) | atoms(file=...).
/// Relative atom paths resolve against `base_dir`.
inline SpectralMeasureSpec parse_theta(const std::string& text, double alpha,
                                       const std::filesystem::path& base_dir = {}) {
  const std::string t = trim(text);
  if (t == "iid") return independent_axes(alpha);
  if (t == "circle") return full_circle(alpha);
  const auto open = t.find('(');
  if (open == std::string::npos || t.back() != ')') throw ConfigError("unknown theta preset '" + t + "'");
  const std::string name = trim(t.substr(0, open));
  std::map<std::string, std::string> args;
  for (const auto& item : split(t.substr(open + 1, t.size() - open - 2), ';')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("theta argument needs key=value: '" + item + "'");
    args[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  if (name == "arcs") {
    if (!args.count("centers") || !args.count("b")) throw ConfigError("arcs needs centers and b");
    std::vector<double> centers;
    for (const auto& c : split(args["centers"], ',')) centers.push_back(parse_angle(c));
    return arcs(alpha, std::move(centers), parse_double(args["b"]));
  }
  if (name == "atoms") {
    if (!args.count("file")) throw ConfigError("atoms needs file=...");
    std::filesystem::path p = args["file"];
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return atoms(alpha, read_atoms(p));
  }
  throw ConfigError("unknown theta preset '" + name + "'");
}

/// key = value lines; '#' starts a comment. Later keys overwrite earlier ones.
inline std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected key = value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace heavyell::io
