#pragma once

#include <cstdint>
#include <random>

#include "npick/problem.hpp"
#include "npick/solver.hpp"

namespace npick {

// Deterministic random source. The raw engine is seeded mt19937_64 and every
// transform below is written out explicitly, so streams are identical across
// standard libraries (std::*_distribution is not portable).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1).
    double uniform();
    double uniform(double lo, double hi);
    // Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi);
    double gaussian();
    Complex complex_gaussian();

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

ComplexMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);

struct SampleOptions {
    int max_n = 6;
    int max_pq = 3;
    double rho_cap = 0.8;
    double lambda_floor = 0.05;
};

// Random solvable instance: gaussian data with the spectral radius of Z
// scaled under rho_cap, B scaled so the state Gramian stays away from zero,
// and Btilde shrunk until the Pick matrix is strictly positive with margin
// lambda_floor.
ProblemData sample_instance(Rng& rng, const SampleOptions& opts = {});

// Strict constant contraction of the given shape, norm at most max_norm.
SchurParameter sample_constant_parameter(Rng& rng, Eigen::Index e, Eigen::Index q,
                                         double max_norm = 0.9);

// Parameter with a random contractive realization (1..3 states).
SchurParameter sample_dynamic_parameter(Rng& rng, Eigen::Index e, Eigen::Index q,
                                        double max_norm = 0.9);

}  // namespace npick
