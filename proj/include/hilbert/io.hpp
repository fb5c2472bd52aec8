#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hilbert/experiments.hpp"

namespace hilbert::io {

using json = nlohmann::json;

inline json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline Vector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::DegenerateInput, "expected a non-empty number array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::DegenerateInput, "expected a number");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

/// {"dimension": n, "vertices": [[...], ...], "halfspaces": [{"normal": [...], "offset": b}, ...]}
/// When halfspaces are present they must match the computed facets as a set.
inline Polytope polytope_from_json(const json& j, double eps = kEpsGeom) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("vertices")) {
    throw Error(ErrorCode::DegenerateInput, "polytope JSON needs \"dimension\" and \"vertices\"");
  }
  const int n = j.at("dimension").get<int>();
  std::vector<Vector> verts;
  for (const auto& v : j.at("vertices")) {
    verts.push_back(vector_from_json(v));
    if (verts.back().size() != n) throw Error(ErrorCode::DimensionMismatch, "vertex length differs from dimension");
  }
  Polytope poly = build_polytope(verts, eps);

  if (j.contains("halfspaces")) {
    std::vector<Halfspace> given;
    for (const auto& h : j.at("halfspaces")) {
      Vector normal = vector_from_json(h.at("normal"));
      double offset = h.at("offset").get<double>();
      const double norm = normal.norm();
      if (normal.size() != n || !(norm > 0.0)) throw Error(ErrorCode::DegenerateInput, "bad halfspace normal");
      given.push_back(Halfspace{normal / norm, offset / norm});
    }
    auto matches = [&](const Halfspace& a, const Halfspace& b) {
      return (a.normal - b.normal).norm() <= eps && std::abs(a.offset - b.offset) <= eps;
    };
    auto covered = [&](const std::vector<Halfspace>& from, const std::vector<Halfspace>& in) {
      return std::all_of(from.begin(), from.end(), [&](const Halfspace& a) {
        return std::any_of(in.begin(), in.end(), [&](const Halfspace& b) { return matches(a, b); });
      });
    };
    if (!covered(given, poly.facets()) || !covered(poly.facets(), given)) {
      throw Error(ErrorCode::HalfspaceMismatch, "given halfspaces differ from the computed facets");
    }
  }
  return poly;
}

inline json polytope_to_json(const Polytope& poly) {
  json out;
  out["dimension"] = poly.dimension();
  out["vertices"] = json::array();
  for (const auto& v : poly.vertices()) out["vertices"].push_back(to_json(v));
  out["halfspaces"] = json::array();
  for (const auto& h : poly.facets()) out["halfspaces"].push_back({{"normal", to_json(h.normal)}, {"offset", h.offset}});
  return out;
}

inline Polytope load_polytope(const std::string& path, double eps = kEpsGeom) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::DegenerateInput, path + ": " + e.what());
  }
  return polytope_from_json(j, eps);
}

inline json report_to_json(const RatioReport& r) {
  return json{{"requested", r.requested},
              {"sample_count", r.sample_count},
              {"skipped", r.skipped},
              {"min_ratio", r.min_ratio},
              {"max_ratio", r.max_ratio},
              {"half_min_ratio", r.half_min_ratio},
              {"half_max_ratio", r.half_max_ratio},
              {"constant", r.constant()},
              {"half_constant", r.half_constant()},
              {"constant_growth", r.constant_growth()},
              {"max_growth", r.max_growth()},
              {"histogram", r.histogram}};
}

/// %.17g, so doubles round-trip.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Comma-separated rows with a header line.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header) { row_strings(header); }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    for (double v : values) cells.push_back(format_double(v));
    row_strings(cells);
  }

  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

inline std::vector<std::string> report_csv_header() {
  return {"label", "requested", "sample_count", "skipped", "min_ratio", "max_ratio",
          "half_min_ratio", "half_max_ratio", "constant", "constant_growth"};
}

inline void report_csv_row(CsvWriter& csv, const std::string& label, const RatioReport& r) {
  csv.row_strings({label, std::to_string(r.requested), std::to_string(r.sample_count), std::to_string(r.skipped),
                   format_double(r.min_ratio), format_double(r.max_ratio), format_double(r.half_min_ratio),
                   format_double(r.half_max_ratio), format_double(r.constant()),
                   format_double(r.constant_growth())});
}

}  // namespace hilbert::io
