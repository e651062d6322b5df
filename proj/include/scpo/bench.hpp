#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scpo/grid.hpp"

namespace scpo {

struct BenchConfig {
  std::vector<std::size_t> scales;
  int m = 400;
  double h = 0.5;
  std::uint64_t seed = 42;
  int repetitions = 7;
};

struct BenchRow {
  std::size_t n_points = 0;
  std::string stage;  // grid_pass, marking, regions, centers
  double seconds = 0.0;  // fastest sample over repetitions
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;

  double seconds(std::size_t n_points, const std::string& stage) const;
};

// Times each pipeline stage separately on the u_shape scene at every scale,
// with fixed m, obstacles and seed. Measures only; interpretation is left to
// the caller.
BenchReport run_bench(const BenchConfig& cfg);

std::string bench_to_json(const BenchReport& report);

}  // namespace scpo
