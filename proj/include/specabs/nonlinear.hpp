#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "specabs/graph.hpp"
#include "specabs/partition.hpp"
#include "specabs/spectral.hpp"

namespace specabs {

/// Functional minimized when choosing the threshold of a sweep cut.
enum class SweepCriterion { Cheeger, Ratio, Normalized };

struct PLaplacianParams {
  /// Target exponent, 1 < p <= 2.
  double p = 1.2;
  /// Number of geometric reductions of the exponent from 2 down to p.
  std::size_t continuation_steps = 5;
  /// Descent stops when an accepted step lowers the objective by less than
  /// this fraction.
  double inner_tolerance = 1e-8;
  std::size_t max_iterations = 500;
  SweepCriterion criterion = SweepCriterion::Cheeger;

  /// Throws ExponentOutOfRange or InvalidArgument.
  void validate() const;
};

/// (Delta_p f)_i = sum_j w_ij |f_i - f_j|^{p-1} sign(f_i - f_j).
/// Errors: ExponentOutOfRange, DimensionMismatch, InvalidArgument (non-finite f).
Eigen::VectorXd p_laplacian_apply(const Graph& g, const Eigen::VectorXd& f, double p);

/// R_p(f) = sum_edges w_ij |f_i - f_j|^p / min_c sum_i |f_i - c|^p.
double p_rayleigh(const Graph& g, const Eigen::VectorXd& f, double p);

struct SweepCut {
  Partition partition;
  double value = 0.0;
};

/// Scans the n - 1 prefixes of the nodes sorted by f (ties by index) and keeps
/// the prefix minimizing `criterion`; the first minimum wins.
SweepCut threshold_sweep(const Graph& g, const Eigen::VectorXd& f, SweepCriterion criterion);

struct PSpectralResult {
  Partition partition;
  /// Final nonconstant vector, shifted and scaled so min_c sum |f - c|^p = 1.
  Eigen::VectorXd f;
  /// R_p at the target exponent for the returned f and for the initial
  /// Fiedler vector.
  double objective = 0.0;
  double initial_objective = 0.0;
  /// Objective after every accepted descent iteration, per continuation step.
  std::vector<std::vector<double>> trace;
  double sweep_value = 0.0;
};

/// Nonlinear bisection: start at the Fiedler vector, run gradient descent on
/// R_p while lowering the exponent geometrically from 2 to params.p, then
/// sweep-threshold the result. Errors: DisconnectedGraph, ConvergenceFailure,
/// plus parameter errors.
PSpectralResult p_spectral_bisect(const Graph& g, const PLaplacianParams& params, std::uint64_t seed);

/// Same, reusing a precomputed two-pair spectrum of g's Laplacian.
PSpectralResult p_spectral_bisect(const Graph& g, const Spectrum& spectrum, const PLaplacianParams& params);

Partition p_spectral_bipartition(const Graph& g, const PLaplacianParams& params, std::uint64_t seed);

/// recursive_split with p_spectral_bisect as the bisector.
Partition p_recursive_bipartition(const Graph& g, std::size_t k, const PLaplacianParams& params, std::uint64_t seed);

/// Operating-point Jacobian of a state-variable model together with a mask of
/// which interdependencies are linear.
struct CouplingSystem {
  Eigen::MatrixXd couplings;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> linear_mask;
};

struct JacobianGraph {
  Graph graph;
  /// Largest connected component, ascending; ties favour the component with
  /// the smallest minimum node.
  std::vector<std::size_t> largest_component;
};

/// Unit-weight graph with edge {i, j} when either direction is marked linear
/// and max(|J_ij|, |J_ji|) > threshold. Diagonal ignored. Nodes are labelled
/// "x0", "x1", ... Errors: DimensionMismatch, InvalidArgument.
JacobianGraph jacobian_graph(const CouplingSystem& system, double threshold);

}  // namespace specabs
