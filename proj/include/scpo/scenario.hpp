#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scpo/grid.hpp"

namespace scpo {

// Synthetic scenes. Every scenario lives in its own area and carries the
// grid parameters it was designed for.
//
//   river          (0,0)-(10,10). Strip obstacle x in [4.95, 5.05], full
//                  height. Two 30-point blobs stratified over the 1x1 cells
//                  of rows 4-5, columns 3-4 (left) and 5-6 (right). m=100, h=1.
//   blobs          (0,0)-(100,100). Three Gaussian blobs (sigma 4, 300 points
//                  each) at (25,30), (70,70), (75,20); 50 uniform noise points;
//                  one triangular wall through the first blob. m=100, h=1.
//   uniform_noise  (0,0)-(10,10). 500 uniform points, no obstacles. m=100, h=1.
//   u_shape        (0,0)-(10,10). Rectangle obstacle (3.5,3.5)-(6.5,8.5) inside
//                  a U-shaped band (x in [1,3] or [7,9] for y in [1,9], plus
//                  y in [1,3]); 8 points per unit cell of the band. The mean of
//                  all points falls inside the obstacle. m=100, h=0.5.
struct Scenario {
  std::string name;
  std::vector<Point> points;
  ObstacleSet obstacles;
  GridConfig config;
};

const std::vector<std::string>& scenario_names();

// Throws UnknownScenario.
Scenario generate_scenario(std::string_view name, std::uint64_t seed);

// The u_shape scene with `count` points spread evenly over the band's unit
// cells; used by the scaling benchmark.
Scenario u_shape_scenario(std::size_t count, std::uint64_t seed);

}  // namespace scpo
