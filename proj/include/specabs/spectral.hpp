#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "specabs/graph.hpp"

namespace specabs {

/// Eigenvalues at or below this are treated as zero in connectivity tests.
inline constexpr double kZeroEigenvalue = 1e-9;

/// Ascending eigenpairs of a Laplacian. A complete spectrum has n pairs; a
/// partial one holds the smallest pair_count() pairs only.
///
/// Eigenvectors are unit columns. Within a degenerate eigenvalue group the
/// basis is fixed by projecting a fixed-seed sequence of pseudo-random probe
/// vectors onto the group's eigenspace and Gram-Schmidt orthogonalizing them
/// in sequence order, so the basis depends only on the subspace. Every
/// column's first entry with magnitude above 1e-12 is positive.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  LaplacianKind source_kind = LaplacianKind::Combinatorial;

  Eigen::Index node_count() const { return eigenvectors.rows(); }
  Eigen::Index pair_count() const { return eigenvalues.size(); }
  bool complete() const { return pair_count() == node_count(); }
};

struct SolverOptions {
  /// Largest n handled by the dense solver in eigendecompose_smallest.
  Eigen::Index dense_limit = 2048;
  double residual_tolerance = 1e-8;
  std::size_t max_restarts = 1000;
  /// Seeds the iterative solver's starting block.
  std::uint64_t seed = 0;
};

/// Full spectrum by dense symmetric decomposition. Errors: NotSymmetric,
/// ConvergenceFailure.
Spectrum eigendecompose(const LaplacianMatrix& l);

/// The `count` smallest eigenpairs. Dense for n <= options.dense_limit,
/// otherwise block Lanczos with thick restarts.
Spectrum eigendecompose_smallest(const LaplacianMatrix& l, std::size_t count, const SolverOptions& options = {});

/// x^T L x / x^T x. Throws ZeroVector for x == 0.
double rayleigh_quotient(const LaplacianMatrix& l, const Eigen::VectorXd& x);

/// Same quotient for the combinatorial Laplacian of g, evaluated edge-wise as
/// sum w_ij (x_i - x_j)^2 / x^T x.
double edge_rayleigh_quotient(const Graph& g, const Eigen::VectorXd& x);

/// lambda_2. Throws TooFewNodes when n < 2.
double algebraic_connectivity(const Spectrum& s);

/// Unit eigenvector of lambda_2. Throws DisconnectedGraph if lambda_2 <= 1e-9.
Eigen::VectorXd fiedler_vector(const Spectrum& s);

/// Row i holds node i's coordinates (v_2[i], ..., v_{dim+1}[i]).
struct Embedding {
  Eigen::MatrixXd coordinates;

  Eigen::Index node_count() const { return coordinates.rows(); }
  Eigen::Index dim() const { return coordinates.cols(); }
};

/// Throws DimensionOutOfRange unless 1 <= dim <= n - 1 and the spectrum holds
/// at least dim + 1 pairs.
Embedding spectral_embedding(const Spectrum& s, std::size_t dim);

/// Spectrum of g's combinatorial Laplacian restricted to the pairs needed for
/// dim-dimensional embeddings (dim + 1 pairs).
Spectrum laplacian_spectrum(const Graph& g, std::size_t pairs, const SolverOptions& options = {});

namespace detail {

/// Puts (values, vectors) into the canonical form described on Spectrum.
/// Values must already be ascending.
void canonicalize_eigenbasis(const Eigen::VectorXd& values, Eigen::MatrixXd& vectors);

/// Smallest `count` eigenpairs of a symmetric matrix by block Lanczos with
/// full reorthogonalization and thick restarts.
void lanczos_smallest(const Eigen::MatrixXd& matrix, std::size_t count, const SolverOptions& options,
                      Eigen::VectorXd& values, Eigen::MatrixXd& vectors);

}  // namespace detail

}  // namespace specabs
