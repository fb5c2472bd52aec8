#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "hilbert/polytope.hpp"

namespace hilbert {

struct SampleConfig {
  std::uint64_t seed = 0;
  std::size_t count = 1;
  /// Minimum facet slack of sampled points.
  double interior_margin = 1e-3;
  /// Facet slacks used by the boundary-stress quota; empty means
  /// {interior_margin}.
  std::vector<double> stress_margins;

  void validate() const {
    if (count < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
    if (!(interior_margin >= kEpsInt)) {
      throw Error(ErrorCode::InvalidArgument, "interior margin must be >= 1e-7");
    }
    for (double m : stress_margins) {
      if (!(m >= kEpsInt)) throw Error(ErrorCode::InvalidArgument, "stress margin must be >= 1e-7");
    }
  }

  double stress_margin(std::size_t slot) const {
    if (stress_margins.empty()) return interior_margin;
    return stress_margins[slot % stress_margins.size()];
  }
};

/// One in five samples (indices 4, 9, 14, ...) is a boundary-stress sample,
/// so every prefix of the sample keeps the 20% quota.
inline constexpr std::size_t kStressPeriod = 5;

inline bool is_stress_index(std::size_t index) { return index % kStressPeriod == kStressPeriod - 1; }

/// Independent generator for sample `index`, so results do not depend on the
/// order in which samples are evaluated.
inline std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Standard normal via Box-Muller; spelled out so streams are identical
/// across standard libraries.
inline double standard_normal(std::mt19937_64& rng) {
  constexpr double kTwoPi = 6.283185307179586476925;
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

inline Vector unit_direction(std::mt19937_64& rng, Eigen::Index n) {
  while (true) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = standard_normal(rng);
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

/// Rejection sampler over a polytope's bounding box, restricted to points
/// with facet slack >= margin. One attempt in 10^4 must succeed.
class InteriorSampler {
 public:
  static constexpr std::size_t kMaxAttempts = 10000;

  explicit InteriorSampler(const Polytope& poly) : poly_(&poly) {
    auto [lo, hi] = poly.bounding_box();
    lo_ = std::move(lo);
    extent_ = hi - lo_;
  }

  /// Uniform point of {x : min slack(x) >= margin}.
  Vector uniform(std::mt19937_64& rng, double margin) const {
    const auto n = lo_.size();
    for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
      Vector x(n);
      for (Eigen::Index i = 0; i < n; ++i) x(i) = lo_(i) + uniform01(rng) * extent_(i);
      if (poly_->min_slack(x) >= margin) return x;
    }
    throw Error(ErrorCode::SamplingExhausted, "acceptance rate below 1e-4");
  }

  /// Point whose minimum facet slack is exactly `margin`: a uniform point is
  /// pushed along a random facet normal onto the shifted facet, and kept if
  /// it still clears the other facets.
  Vector stressed(std::mt19937_64& rng, double margin) const {
    const auto& facets = poly_->facets();
    for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
      Vector x = uniform(rng, margin);
      const auto& h = facets[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(facets.size()))];
      x += (h.slack(x) - margin) * h.normal;
      if (poly_->min_slack(x) >= margin * (1.0 - 1e-9)) return x;
    }
    throw Error(ErrorCode::SamplingExhausted, "boundary-stress acceptance rate below 1e-4");
  }

  /// Sample `index` of a run: stress quota on every fifth index.
  Vector draw(std::mt19937_64& rng, const SampleConfig& cfg, std::size_t index) const {
    if (is_stress_index(index)) return stressed(rng, cfg.stress_margin(index / kStressPeriod));
    return uniform(rng, cfg.interior_margin);
  }

 private:
  const Polytope* poly_;
  Vector lo_;
  Vector extent_;
};

/// cfg.count seeded uniform points with facet slack >= cfg.interior_margin.
inline std::vector<Vector> sample_interior(const Polytope& poly, const SampleConfig& cfg) {
  cfg.validate();
  const InteriorSampler sampler(poly);
  std::vector<Vector> out;
  out.reserve(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) {
    auto rng = sample_stream(cfg.seed, i);
    out.push_back(sampler.uniform(rng, cfg.interior_margin));
  }
  return out;
}

}  // namespace hilbert
