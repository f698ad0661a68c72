#pragma once

#include <random>

#include "blochvar/potential.hpp"

namespace bloch {

/// Real and imaginary parts uniform in [-scale, scale].
Potential random_complex_potential(const LatticeConfig& cfg, std::mt19937_64& rng, double scale = 1.0);

/// Entries uniform in [-scale, scale].
Potential random_real_potential(const LatticeConfig& cfg, std::mt19937_64& rng, double scale = 1.0);

/// Entries with magnitude uniform in [min_abs, max_abs] and random sign,
/// redrawn until the potential is nonconstant.
Potential random_nonconstant_real_potential(const LatticeConfig& cfg, std::mt19937_64& rng, double min_abs,
                                            double max_abs);

}  // namespace bloch
