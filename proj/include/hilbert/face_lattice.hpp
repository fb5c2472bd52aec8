#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "hilbert/polytope.hpp"

namespace hilbert {

struct Face {
  int dim = 0;
  std::vector<int> vertex_ids;     // sorted
  std::vector<int> active_facets;  // sorted; empty for the whole polytope
};

/// All faces of a polytope, sorted by dimension and then lexicographically by
/// vertex set. `covers[i]` lists the (dim+1)-faces containing face i.
struct FaceLattice {
  int dimension = 0;
  std::vector<Face> faces;
  std::vector<std::vector<std::size_t>> covers;

  std::vector<std::size_t> faces_of_dim(int k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (faces[i].dim == k) out.push_back(i);
    }
    return out;
  }

  /// Index of the face with exactly this vertex set, or faces.size().
  std::size_t find(const std::vector<int>& vertex_ids) const {
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (faces[i].vertex_ids == vertex_ids) return i;
    }
    return faces.size();
  }
};

/// A maximal chain f_0 < f_1 < ... < f_{n-1}, stored as lattice indices.
struct Flag {
  std::vector<std::size_t> chain;

  friend bool operator==(const Flag&, const Flag&) = default;
  friend auto operator<=>(const Flag&, const Flag&) = default;
};

inline Vector barycenter(const Face& face, const Polytope& poly) {
  Vector sum = Vector::Zero(poly.dimension());
  for (int id : face.vertex_ids) sum += poly.vertices()[static_cast<std::size_t>(id)];
  return sum / static_cast<double>(face.vertex_ids.size());
}

/// Every face is the common vertex set of some family of facets, so the
/// proper faces are the closure of the facet vertex sets under intersection.
inline FaceLattice face_lattice(const Polytope& poly) {
  const auto& incidence = poly.incidence();
  std::set<std::vector<int>> sets(incidence.begin(), incidence.end());
  std::vector<std::vector<int>> frontier(sets.begin(), sets.end());
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& a : frontier) {
      for (const auto& b : incidence) {
        std::vector<int> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (!common.empty() && sets.insert(common).second) next.push_back(std::move(common));
      }
    }
    frontier = std::move(next);
  }

  FaceLattice lat;
  lat.dimension = poly.dimension();
  const auto& verts = poly.vertices();
  for (const auto& ids : sets) {
    Face f;
    f.vertex_ids = ids;
    std::vector<Vector> pts;
    for (int id : ids) pts.push_back(verts[static_cast<std::size_t>(id)]);
    f.dim = affine_rank(detail::as_columns(pts), poly.eps());
    for (std::size_t j = 0; j < incidence.size(); ++j) {
      if (std::includes(incidence[j].begin(), incidence[j].end(), ids.begin(), ids.end())) {
        f.active_facets.push_back(static_cast<int>(j));
      }
    }
    lat.faces.push_back(std::move(f));
  }
  Face whole;
  whole.dim = poly.dimension();
  whole.vertex_ids.resize(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) whole.vertex_ids[i] = static_cast<int>(i);
  lat.faces.push_back(std::move(whole));

  std::stable_sort(lat.faces.begin(), lat.faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vertex_ids < b.vertex_ids;
  });

  lat.covers.resize(lat.faces.size());
  for (std::size_t i = 0; i < lat.faces.size(); ++i) {
    for (std::size_t j = 0; j < lat.faces.size(); ++j) {
      const auto& lo = lat.faces[i];
      const auto& hi = lat.faces[j];
      if (hi.dim != lo.dim + 1) continue;
      if (std::includes(hi.vertex_ids.begin(), hi.vertex_ids.end(), lo.vertex_ids.begin(),
                        lo.vertex_ids.end())) {
        lat.covers[i].push_back(j);
      }
    }
  }
  return lat;
}

/// All maximal chains of proper faces, in lexicographic order of face indices.
inline std::vector<Flag> enumerate_flags(const FaceLattice& lat) {
  std::vector<Flag> flags;
  if (lat.dimension < 1) return flags;
  Flag current;
  auto extend = [&](auto&& self, std::size_t face) -> void {
    current.chain.push_back(face);
    if (lat.faces[face].dim == lat.dimension - 1) {
      flags.push_back(current);
    } else {
      for (std::size_t up : lat.covers[face]) self(self, up);
    }
    current.chain.pop_back();
  };
  for (std::size_t v : lat.faces_of_dim(0)) extend(extend, v);
  return flags;
}

}  // namespace hilbert
