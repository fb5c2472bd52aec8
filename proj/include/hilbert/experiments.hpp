#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hilbert/sampling.hpp"
#include "hilbert/subdivision.hpp"

namespace hilbert {

/// Empirical bounds of a positive ratio over a sample.
struct RatioReport {
  static constexpr std::size_t kBuckets = 20;

  std::size_t requested = 0;
  std::size_t sample_count = 0;
  std::size_t skipped = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = -std::numeric_limits<double>::infinity();
  /// Same bounds restricted to the first half of the sample indices.
  double half_min_ratio = std::numeric_limits<double>::infinity();
  double half_max_ratio = -std::numeric_limits<double>::infinity();
  /// Equal-width buckets over [min_ratio, max_ratio].
  std::vector<std::size_t> histogram;

  /// max(max_ratio, 1/min_ratio): the two-sided distortion constant.
  double constant() const { return std::max(max_ratio, 1.0 / min_ratio); }
  double half_constant() const { return std::max(half_max_ratio, 1.0 / half_min_ratio); }
  /// Relative growth of constant() from the half sample to the full sample.
  double constant_growth() const { return constant() / half_constant() - 1.0; }
  double max_growth() const { return max_ratio / half_max_ratio - 1.0; }
};

/// Collects ratios indexed by sample number and produces a RatioReport.
class RatioAccumulator {
 public:
  explicit RatioAccumulator(std::size_t requested) : requested_(requested) {}

  void add(std::size_t index, std::optional<double> ratio) {
    if (!ratio) {
      ++skipped_;
      return;
    }
    if (!std::isfinite(*ratio) || *ratio <= 0.0) {
      throw Error(ErrorCode::Overflow, "ratio is not finite and positive");
    }
    values_.push_back(*ratio);
    if (index < (requested_ + 1) / 2) half_.push_back(*ratio);
  }

  RatioReport finish() const {
    RatioReport r;
    r.requested = requested_;
    r.sample_count = values_.size();
    r.skipped = skipped_;
    if (!values_.empty()) {
      const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
      r.min_ratio = *lo;
      r.max_ratio = *hi;
    }
    if (!half_.empty()) {
      const auto [lo, hi] = std::minmax_element(half_.begin(), half_.end());
      r.half_min_ratio = *lo;
      r.half_max_ratio = *hi;
    }
    r.histogram.assign(RatioReport::kBuckets, 0);
    const double width = (r.max_ratio - r.min_ratio) / RatioReport::kBuckets;
    for (double v : values_) {
      std::size_t b = 0;
      if (width > 0.0) {
        b = std::min(RatioReport::kBuckets - 1, static_cast<std::size_t>((v - r.min_ratio) / width));
      }
      ++r.histogram[b];
    }
    return r;
  }

 private:
  std::size_t requested_;
  std::size_t skipped_ = 0;
  std::vector<double> values_;
  std::vector<double> half_;
};

/// d_P(x, y) / |F(x) - F(y)|, or nothing when d_P(x, y) <= 1e-9.
inline std::optional<double> bilipschitz_ratio(const FlatteningAtlas& atlas, const HilbertStructure& metric,
                                               const Vector& x, const Vector& y) {
  const double d = metric.distance(x, y);
  if (d <= 1e-9) return std::nullopt;
  const double image = (atlas.flatten(x) - atlas.flatten(y)).norm();
  if (!(image > 0.0)) throw Error(ErrorCode::LocationFailure, "distinct points share an image");
  return d / image;
}

/// Ratio d_P / |F(x) - F(y)| over seeded pairs. Pair i draws both points from
/// stream (seed, i); every fifth pair is drawn at facet slack exactly equal
/// to a stress margin.
inline RatioReport estimate_bilipschitz(const FlatteningAtlas& atlas, const SampleConfig& cfg) {
  cfg.validate();
  const HilbertStructure metric(atlas.polytope());
  const InteriorSampler sampler(atlas.polytope());
  RatioAccumulator acc(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) {
    auto rng = sample_stream(cfg.seed, i);
    const Vector x = sampler.draw(rng, cfg, i);
    const Vector y = sampler.draw(rng, cfg, i);
    acc.add(i, bilipschitz_ratio(atlas, metric, x, y));
  }
  return acc.finish();
}

/// F_A(x, v) / F_B(x, v) over seeded x in `region` and unit v. Both A and B
/// must contain the region.
inline RatioReport finsler_ratio_report(const Polytope& region, const Polytope& numerator,
                                        const Polytope& denominator, const SampleConfig& cfg,
                                        std::uint64_t stream_offset = 0) {
  cfg.validate();
  const HilbertStructure a(numerator);
  const HilbertStructure b(denominator);
  const InteriorSampler sampler(region);
  RatioAccumulator acc(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) {
    auto rng = sample_stream(cfg.seed, stream_offset + i);
    const Vector x = sampler.draw(rng, cfg, i);
    const Vector v = unit_direction(rng, x.size());
    acc.add(i, a.finsler_norm(x, v) / b.finsler_norm(x, v));
  }
  return acc.finish();
}

struct CellConstants {
  std::vector<RatioReport> cells;

  /// sup over cells of each cell's two-sided constant.
  double sup_constant() const {
    double s = 0.0;
    for (const auto& c : cells) s = std::max(s, c.constant());
    return s;
  }
  double half_sup_constant() const {
    double s = 0.0;
    for (const auto& c : cells) s = std::max(s, c.half_constant());
    return s;
  }
};

/// Chart image L_i(P), written in simplex chart coordinates.
inline Polytope cell_image_polytope(const FlatteningAtlas& atlas, std::size_t cell) {
  std::vector<Vector> image;
  for (const auto& v : atlas.polytope().vertices()) image.push_back(simplex_chart(atlas.chart(cell)(v)));
  return build_polytope(image, atlas.polytope().eps());
}

/// The standard cell-simplex in simplex chart coordinates.
inline Polytope standard_cell_polytope(int n) {
  std::vector<Vector> verts;
  for (const auto& v : standard_cell(n).vertices) verts.push_back(simplex_chart(v));
  return build_polytope(verts);
}

/// Per cell i, F_{H_n}(x, v) / F_{P_i}(x, v) for x in the standard cell and
/// unit v, with P_i = L_i(P). Everything is evaluated in simplex chart
/// coordinates, where both geometries are full-dimensional polytopes.
inline CellConstants estimate_cell_constants(const FlatteningAtlas& atlas, const SampleConfig& cfg) {
  cfg.validate();
  const int n = atlas.dimension();
  const Polytope region = standard_cell_polytope(n);
  CellConstants out;
  for (std::size_t i = 0; i < atlas.cells().size(); ++i) {
    out.cells.push_back(finsler_ratio_report(region, standard_simplex_polytope(n), cell_image_polytope(atlas, i),
                                             cfg, static_cast<std::uint64_t>(i) * cfg.count));
  }
  return out;
}

/// Checks the nesting hypotheses for S in C1 in C2 (all n-simplices):
/// containment, a single facet hyperplane shared by all three, strictness
/// away from it, and for each k < n exactly one k-face of S lying in a k-face
/// of C1 and of C2. Throws HypothesisViolated.
inline void check_nested_hypotheses(const Polytope& s, const Polytope& c1, const Polytope& c2) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::HypothesisViolated, why); };
  const int n = s.dimension();
  if (c1.dimension() != n || c2.dimension() != n) fail("dimensions differ");
  for (const Polytope* p : {&s, &c1, &c2}) {
    if (p->vertices().size() != static_cast<std::size_t>(n + 1)) fail("all three bodies must be simplices");
  }
  const double eps = s.eps();
  auto inside = [&](const Polytope& inner, const Polytope& outer) {
    return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                       [&](const Vector& v) { return contains(outer, v, eps) != Location::Outside; });
  };
  if (!inside(s, c1)) fail("S is not contained in C1");
  if (!inside(c1, c2)) fail("C1 is not contained in C2");

  auto same_plane = [&](const Halfspace& a, const Halfspace& b) {
    return (a.normal - b.normal).norm() <= eps && std::abs(a.offset - b.offset) <= eps;
  };
  auto facet_on = [&](const Polytope& body, const Halfspace& h) {
    return std::any_of(body.facets().begin(), body.facets().end(),
                       [&](const Halfspace& f) { return same_plane(f, h); });
  };
  std::optional<Halfspace> shared;
  for (const auto& h : s.facets()) {
    if (facet_on(c1, h) && facet_on(c2, h)) {
      if (shared) fail("more than one facet of S is shared");
      shared = h;
    }
  }
  if (!shared) fail("no facet of S lies on a facet of both C1 and C2");

  auto same_body = [&](const Polytope& a, const Polytope& b) {
    return std::all_of(a.vertices().begin(), a.vertices().end(), [&](const Vector& v) {
      return std::any_of(b.vertices().begin(), b.vertices().end(),
                         [&](const Vector& w) { return (v - w).norm() <= eps; });
    });
  };
  auto strict_off_plane = [&](const Polytope& inner, const Polytope& outer) {
    for (const auto& v : inner.vertices()) {
      if (std::abs(shared->slack(v)) <= eps) continue;
      if (outer.min_slack(v) <= eps) return false;
    }
    return true;
  };
  if (!strict_off_plane(s, c1)) fail("S touches the boundary of C1 away from the shared facet");
  if (!same_body(c1, c2) && !strict_off_plane(c1, c2)) {
    fail("C1 touches the boundary of C2 away from the shared facet");
  }

  // Faces of S lying in a face of the same dimension of `outer`.
  const FaceLattice s_lat = face_lattice(s);
  auto matching_faces = [&](const Polytope& outer, int k) {
    const FaceLattice o_lat = face_lattice(outer);
    std::vector<std::size_t> hits;
    for (std::size_t fi : s_lat.faces_of_dim(k)) {
      const auto& f = s_lat.faces[fi];
      for (std::size_t gi : o_lat.faces_of_dim(k)) {
        const auto& g = o_lat.faces[gi];
        const bool in = std::all_of(f.vertex_ids.begin(), f.vertex_ids.end(), [&](int vid) {
          const Vector& v = s.vertices()[static_cast<std::size_t>(vid)];
          return std::all_of(g.active_facets.begin(), g.active_facets.end(), [&](int h) {
            return std::abs(outer.facets()[static_cast<std::size_t>(h)].slack(v)) <= eps;
          });
        });
        if (in) {
          hits.push_back(fi);
          break;
        }
      }
    }
    return hits;
  };
  for (int k = 0; k < n; ++k) {
    const auto h1 = matching_faces(c1, k);
    const auto h2 = matching_faces(c2, k);
    if (h1.size() != 1 || h2.size() != 1 || h1 != h2) {
      fail("need exactly one " + std::to_string(k) + "-face of S inside a " + std::to_string(k) +
           "-face of C1 and C2");
    }
  }
}

/// Q(x, v) = F_{C1}(x, v) / F_{C2}(x, v) for x in S and unit v.
inline RatioReport nested_ratio_experiment(const Polytope& s, const Polytope& c1, const Polytope& c2,
                                           const SampleConfig& cfg) {
  check_nested_hypotheses(s, c1, c2);
  return finsler_ratio_report(s, c1, c2, cfg);
}

/// max |d_{H_n}(x, y) - |phi(x) - phi(y)|| over seeded interior pairs with
/// all coordinates >= 1e-6.
inline double isometry_check(int n, const SampleConfig& cfg) {
  if (n < 1 || n > 4) throw Error(ErrorCode::InvalidArgument, "isometry check supports 1 <= n <= 4");
  if (cfg.count < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
  auto draw = [n](std::mt19937_64& rng) {
    for (std::size_t attempt = 0; attempt < InteriorSampler::kMaxAttempts; ++attempt) {
      Vector w(n + 1);
      for (int i = 0; i <= n; ++i) w(i) = -std::log(1.0 - uniform01(rng));
      const Vector x = w / w.sum();
      if (x.minCoeff() >= 1e-6) return SimplexPoint::normalized(x);
    }
    throw Error(ErrorCode::SamplingExhausted, "simplex sampler exhausted");
  };
  double worst = 0.0;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    auto rng = sample_stream(cfg.seed, i);
    const SimplexPoint x = draw(rng);
    const SimplexPoint y = draw(rng);
    worst = std::max(worst, std::abs(simplex_distance(x, y) - dlh_norm(phi(x) - phi(y))));
  }
  return worst;
}

/// Cell-centred resolution x resolution grid over the bounding box of a 2-D
/// polytope; rows (x0, x1, F0, F1) for the grid points strictly inside.
inline std::vector<std::array<double, 4>> emit_grid(const FlatteningAtlas& atlas, int resolution) {
  if (atlas.dimension() != 2) throw Error(ErrorCode::InvalidArgument, "grid export needs a 2-D polytope");
  if (resolution < 0) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 0");
  const auto [lo, hi] = atlas.polytope().bounding_box();
  std::vector<std::array<double, 4>> rows;
  for (int j = 0; j < resolution; ++j) {
    for (int i = 0; i < resolution; ++i) {
      Vector x(2);
      x(0) = lo(0) + (i + 0.5) / resolution * (hi(0) - lo(0));
      x(1) = lo(1) + (j + 0.5) / resolution * (hi(1) - lo(1));
      if (!atlas.polytope().is_interior(x)) continue;
      const Vector y = atlas.flatten(x);
      rows.push_back({x(0), x(1), y(0), y(1)});
    }
  }
  return rows;
}

}  // namespace hilbert
