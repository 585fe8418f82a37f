#include "omav/design/sphere.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace omav::design {

SphereGrid icosphere(int level) {
  if (level < 0 || level > 7) throw std::invalid_argument("icosphere level must be in [0, 7]");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  SphereGrid g;
  const double raw[12][3] = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
                             {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
                             {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (const auto& v : raw) g.vertices.push_back(Vec3(v[0], v[1], v[2]).normalized());
  g.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoints;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      g.vertices.push_back((g.vertices[a] + g.vertices[b]).normalized());
      const int idx = static_cast<int>(g.vertices.size()) - 1;
      midpoints.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(g.faces.size() * 4);
    for (const auto& f : g.faces) {
      const int ab = midpoint(f[0], f[1]);
      const int bc = midpoint(f[1], f[2]);
      const int ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    g.faces = std::move(next);
  }
  return g;
}

int levelForFaces(int min_faces) {
  int level = 0;
  int faces = 20;
  while (faces < min_faces && level < 7) {
    faces *= 4;
    ++level;
  }
  return level;
}

double radialVolume(const SphereGrid& grid, const std::vector<double>& radii) {
  if (radii.size() != grid.vertices.size()) {
    throw std::invalid_argument("radialVolume: one radius per vertex required");
  }
  double volume = 0.0;
  for (const auto& f : grid.faces) {
    const Vec3 a = radii[f[0]] * grid.vertices[f[0]];
    const Vec3 b = radii[f[1]] * grid.vertices[f[1]];
    const Vec3 c = radii[f[2]] * grid.vertices[f[2]];
    volume += std::abs(a.dot(b.cross(c))) / 6.0;
  }
  return volume;
}

}  // namespace omav::design
