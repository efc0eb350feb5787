#include "coarse/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <fmt/format.h>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

using Eigen::VectorXd;

VectorXd laplacian_apply(const Graph& g, const VectorXd& x) {
  VectorXd y(x.size());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    double acc = static_cast<double>(g.degree(v)) * x[v];
    for (auto w : g.neighbors(v)) acc -= x[w];
    y[v] = acc;
  }
  return y;
}

void remove_mean(VectorXd& x) { x.array() -= x.mean(); }

// Fixes the sign so that the first clearly nonzero entry is positive.
void normalize_sign(VectorXd& x) {
  const double scale = x.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > 1e-9 * scale) {
      if (x[i] < 0) x = -x;
      return;
    }
}

FiedlerResult finish(const Graph& g, VectorXd x, int iterations) {
  remove_mean(x);
  x.normalize();
  normalize_sign(x);
  FiedlerResult r;
  VectorXd lx = laplacian_apply(g, x);
  r.lambda2 = x.dot(lx);
  r.residual = (lx - r.lambda2 * x).norm();
  r.iterations = iterations;
  r.vector.assign(x.data(), x.data() + x.size());
  return r;
}

FiedlerResult dense_fiedler(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    lap(v, v) = static_cast<double>(g.degree(v));
    for (auto w : g.neighbors(v)) lap(v, w) = -1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success) throw NumericError("dense eigensolver failed", -1.0);
  return finish(g, solver.eigenvectors().col(1), 1);
}

FiedlerResult lanczos_fiedler(const Graph& g, const SpectralOptions& opt) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  constexpr double kShift = 1e-7;
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(g.vertex_count() + 2 * g.edge_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    trips.emplace_back(v, v, static_cast<double>(g.degree(v)) + kShift);
    for (auto w : g.neighbors(v)) trips.emplace_back(v, w, -1.0);
  }
  Eigen::SparseMatrix<double> shifted(n, n);
  shifted.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) throw NumericError("sparse factorization of the shifted Laplacian failed", -1.0);

  const double norm_bound = 2.0 * static_cast<double>(std::max<std::size_t>(g.max_degree(), 1));
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal;
  VectorXd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start[i] = normal(rng);

  const int steps = static_cast<int>(std::min<Eigen::Index>(opt.max_iterations, n - 1));
  double last_residual = -1.0;
  int total_iterations = 0;
  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    remove_mean(start);
    start.normalize();
    std::vector<VectorXd> basis{start};
    std::vector<double> alpha, beta;
    VectorXd ritz;
    for (int j = 0; j < steps; ++j) {
      VectorXd w = ldlt.solve(basis.back());
      remove_mean(w);
      alpha.push_back(w.dot(basis.back()));
      // Full reorthogonalization, twice for stability.
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) w -= w.dot(q) * q;
      remove_mean(w);
      ++total_iterations;
      double b = w.norm();
      bool last = (j + 1 == steps) || b < 1e-14;
      if (last || (j + 1) % 10 == 0) {
        const auto m = static_cast<Eigen::Index>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
          t(i, i) = alpha[static_cast<std::size_t>(i)];
          if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t);
        VectorXd s = small.eigenvectors().col(m - 1);
        ritz = VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < m; ++i) ritz += s[i] * basis[static_cast<std::size_t>(i)];
        auto candidate = finish(g, ritz, total_iterations);
        last_residual = candidate.residual;
        if (candidate.residual <= opt.tolerance * norm_bound) return candidate;
      }
      if (last) break;
      beta.push_back(b);
      basis.push_back(w / b);
    }
    start = ritz;
  }
  throw NumericError(fmt::format("Lanczos did not converge for the Fiedler vector after {} iterations (residual {:.3e})",
                                 total_iterations, last_residual),
                     last_residual);
}

}  // namespace

FiedlerResult fiedler_vector(const Graph& g, const SpectralOptions& options) {
  if (g.vertex_count() < 2) throw InputError("spectral bound needs at least two vertices");
  if (!is_connected(g)) throw InputError("spectral bound needs a connected graph");
  if (g.vertex_count() <= options.dense_limit) return dense_fiedler(g);
  return lanczos_fiedler(g, options);
}

}  // namespace coarse
