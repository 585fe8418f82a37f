#pragma once

#include <array>
#include <vector>

#include "omav/core/types.hpp"

namespace omav::design {

/// Unit sphere triangulation obtained by repeated 4:1 subdivision of an
/// icosahedron. Level k has 20 * 4^k faces and 10 * 4^k + 2 vertices.
struct SphereGrid {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
};

SphereGrid icosphere(int level);

/// Smallest subdivision level with at least `min_faces` faces.
int levelForFaces(int min_faces);

/// Volume of the star-shaped polyhedron whose vertex i lies at radii[i] *
/// vertices[i]; sum of the origin tetrahedra over all faces.
double radialVolume(const SphereGrid& grid, const std::vector<double>& radii);

}  // namespace omav::design
