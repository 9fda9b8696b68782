#pragma once

#include <string>

#include "mixagg/grid_distribution.hpp"
#include "mixagg/particle_distribution.hpp"

namespace mixagg {

// Wire schemas:
//   GridDistribution1D     {"grid":[...],"cdf":[...],"interp":"step"|"linear"}
//   ParticleDistributionND {"points":[[...],...],"weights":[...],"radius":R?}

std::string to_json(const GridDistribution1D& d);
GridDistribution1D grid_distribution_from_json(const std::string& text);

std::string to_json(const ParticleDistributionND& d);
ParticleDistributionND particle_distribution_from_json(const std::string& text);

}  // namespace mixagg
