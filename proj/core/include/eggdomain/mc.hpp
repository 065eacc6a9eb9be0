#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "eggdomain/egg.hpp"

namespace eggdomain {

using Rng = std::mt19937_64;

/// Uniform sample from the unit disk in C.
cplx sample_unit_disk(Rng& rng);

/// Uniform sample from the unit ball of C^n (a 2n-dimensional real ball).
std::vector<cplx> sample_unit_ball(Rng& rng, int n);

/// Volume of the bounding region {|W| < 1} x {|Z| < 1}, i.e. pi * pi^n / n!.
double bounding_volume(int n);

/// Exact volume of the egg domain: pi^{n+1} Gamma(1/K) / (K Gamma(1/K + n + 1)).
double egg_volume(const EggDomainSpec& spec);

/// Rejection sample from the egg domain, optionally enforcing a minimum
/// membership defect (useful for keeping test points away from the boundary).
DomainPoint sample_interior_point(const EggDomainSpec& spec, Rng& rng, double min_defect = 0.0);

} // namespace eggdomain
