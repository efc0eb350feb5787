#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

struct SpectralOptions {
  double tolerance = 1e-8;       // on the residual |Lx - lambda x| relative to 2 * max degree
  int max_iterations = 400;      // Lanczos steps per restart
  int max_restarts = 8;
  std::size_t dense_limit = 600; // up to this size use a dense eigensolver
  std::uint64_t seed = 0x5eedULL;
};

struct FiedlerResult {
  double lambda2 = 0.0;
  std::vector<double> vector;  // unit norm, orthogonal to constants
  double residual = 0.0;
  int iterations = 0;
};

// Second-smallest eigenvalue of the combinatorial Laplacian L = D - A of a
// connected graph with at least two vertices, and an eigenvector for it.
// Large graphs use shift-and-invert Lanczos with full reorthogonalization.
// Throws NumericError carrying the residual when it fails to converge.
FiedlerResult fiedler_vector(const Graph& g, const SpectralOptions& options = {});

}  // namespace coarse
