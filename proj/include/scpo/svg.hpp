#pragma once

#include <filesystem>
#include <string>

#include "scpo/clustering.hpp"

namespace scpo {

// Cluster map: hatched obstructed cells, grid lines, filled obstacles, points
// coloured by region (outliers grey) and a cross on every center.
std::string render_svg(const ClusteringResult& result, const Grid& g, const ObstacleSet& obs);

void write_svg(const ClusteringResult& result, const Grid& g, const ObstacleSet& obs,
               const std::filesystem::path& path);

}  // namespace scpo
