#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace mces {

using Rng = std::mt19937_64;

/// Independent stream for chain `stream` of a run seeded with `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

Eigen::VectorXd standard_normal(Eigen::Index n, Rng& rng);

/// Uniform draw on [0, 1).
double uniform01(Rng& rng);

}  // namespace mces
