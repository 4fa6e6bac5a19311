#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "octolat/grid.hpp"
#include "octolat/octonion.hpp"

namespace octolat {

using Json = nlohmann::ordered_json;

/// Smallest window covering the support; a single cell at the origin when the
/// function vanishes identically, so every grid has a nonempty wire form.
inline LatticeWindow bounding_window(const GridFunction<Octonion>& f) {
  LatticeWindow w;
  w.extent.fill(1);
  if (f.values.empty()) return w;
  LatticePoint lo = f.values.begin()->first;
  LatticePoint hi = lo;
  for (const auto& [p, v] : f.values) {
    for (std::size_t k = 0; k < kDim; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  w.origin = lo;
  for (std::size_t k = 0; k < kDim; ++k) w.extent[k] = hi[k] - lo[k] + 1;
  return w;
}

/// Dense wire form: values enumerate the bounding window in lexicographic
/// order, one 8-tuple of coefficients per point.
inline Json gridfn_to_json(const GridFunction<Octonion>& f) {
  const LatticeWindow w = bounding_window(f);
  Json j;
  j["schema"] = 1;
  j["h"] = f.h;
  j["origin"] = w.origin;
  j["extent"] = w.extent;
  Json values = Json::array();
  w.for_each([&](const LatticePoint& p) {
    const Octonion x = f.at(p);
    Json cell = Json::array();
    for (int k = 0; k < 8; ++k) cell.push_back(x[k]);
    values.push_back(std::move(cell));
  });
  j["values"] = std::move(values);
  return j;
}

inline GridFunction<Octonion> gridfn_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("grid json: object expected");
  if (j.value("schema", 0) != 1) throw std::invalid_argument("grid json: unsupported schema");
  GridFunction<Octonion> f;
  f.h = j.at("h").get<double>();
  if (!(f.h > 0.0)) throw std::invalid_argument("grid json: h must be positive");
  LatticeWindow w;
  const auto& origin = j.at("origin");
  const auto& extent = j.at("extent");
  if (origin.size() != kDim || extent.size() != kDim) {
    throw std::invalid_argument("grid json: origin/extent must have 8 entries");
  }
  for (std::size_t k = 0; k < kDim; ++k) {
    w.origin[k] = origin[k].get<int>();
    w.extent[k] = extent[k].get<int>();
    if (w.extent[k] <= 0) throw std::invalid_argument("grid json: extent must be positive");
  }
  const auto& values = j.at("values");
  if (static_cast<std::int64_t>(values.size()) != w.volume()) {
    throw std::invalid_argument("grid json: values count does not match window volume");
  }
  std::size_t idx = 0;
  w.for_each([&](const LatticePoint& p) {
    const auto& cell = values[idx++];
    if (cell.size() != 8) throw std::invalid_argument("grid json: each value needs 8 coefficients");
    Octonion x;
    for (int k = 0; k < 8; ++k) x[k] = cell[static_cast<std::size_t>(k)].get<double>();
    f.set(p, x);
  });
  return f;
}

inline void save_gridfn(const std::string& path, const GridFunction<Octonion>& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << gridfn_to_json(f).dump(2) << "\n";
}

inline GridFunction<Octonion> load_gridfn(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  Json j;
  in >> j;
  return gridfn_from_json(j);
}

}  // namespace octolat
