#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "specabs/error.hpp"
#include "specabs/sbm.hpp"
#include "specabs/spectral.hpp"

namespace specabs::detail {

namespace {

// Orthonormalizes column `col` of `block` against basis.leftCols(used) and the
// earlier block columns. Returns false if nothing independent is left.
bool orthonormalize_column(const Eigen::MatrixXd& basis, Eigen::Index used, Eigen::MatrixXd& block, Eigen::Index col) {
  const double before = block.col(col).norm();
  if (before == 0.0) return false;
  for (int pass = 0; pass < 2; ++pass) {
    if (used > 0) {
      Eigen::VectorXd coeff = basis.leftCols(used).transpose() * block.col(col);
      block.col(col) -= basis.leftCols(used) * coeff;
    }
    for (Eigen::Index c = 0; c < col; ++c) block.col(col) -= block.col(c).dot(block.col(col)) * block.col(c);
  }
  const double after = block.col(col).norm();
  if (after <= 1e-10 * before) return false;
  block.col(col) /= after;
  return true;
}

void orthonormalize_block(const Eigen::MatrixXd& basis, Eigen::Index used, Eigen::MatrixXd& block,
                          UniformSource& rng) {
  for (Eigen::Index c = 0; c < block.cols(); ++c) {
    int attempts = 0;
    while (!orthonormalize_column(basis, used, block, c)) {
      if (++attempts > 16) throw Error(ErrorCode::ConvergenceFailure, "could not extend Krylov basis");
      for (Eigen::Index i = 0; i < block.rows(); ++i) block(i, c) = rng.next() - 0.5;
    }
  }
}

}  // namespace

void lanczos_smallest(const Eigen::MatrixXd& matrix, std::size_t count, const SolverOptions& options,
                      Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
  const Eigen::Index n = matrix.rows();
  const auto nev = static_cast<Eigen::Index>(count);
  const Eigen::Index block_size = std::max<Eigen::Index>(1, std::min<Eigen::Index>(nev, 8));
  const Eigen::Index keep = std::min(n, nev + block_size);
  if (n <= keep + 2 * block_size) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(matrix);
    if (dense.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "dense fallback failed");
    values = dense.eigenvalues().head(nev);
    vectors = dense.eigenvectors().leftCols(nev);
    return;
  }
  Eigen::Index max_dim = std::min(n, keep + std::max<Eigen::Index>(40, 6 * block_size));
  max_dim = keep + ((max_dim - keep) / block_size) * block_size;

  // Largest eigenvalues of sigma*I - A are the smallest of A.
  const double sigma = matrix.cwiseAbs().rowwise().sum().maxCoeff();
  auto apply = [&](const Eigen::MatrixXd& x) -> Eigen::MatrixXd { return sigma * x - matrix * x; };

  UniformSource rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  Eigen::MatrixXd basis(n, max_dim);
  Eigen::MatrixXd image(n, max_dim);
  Eigen::Index used = 0;

  Eigen::MatrixXd pending(n, block_size);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index c = 0; c < block_size; ++c) pending(i, c) = rng.next() - 0.5;
  }
  orthonormalize_block(basis, used, pending, rng);

  for (std::size_t restart = 0; restart <= options.max_restarts; ++restart) {
    while (used + block_size <= max_dim) {
      basis.middleCols(used, block_size) = pending;
      image.middleCols(used, block_size) = apply(pending);
      pending = image.middleCols(used, block_size);
      used += block_size;
      if (used >= n) break;
      orthonormalize_block(basis, used, pending, rng);
    }

    Eigen::MatrixXd projected = basis.leftCols(used).transpose() * image.leftCols(used);
    projected = 0.5 * (projected + projected.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(projected);
    if (small.info() != Eigen::Success) {
      throw Error(ErrorCode::ConvergenceFailure, "Rayleigh-Ritz step failed");
    }

    // Ritz values of the shifted operator, largest first.
    const Eigen::Index retained = std::min(keep, used);
    Eigen::MatrixXd coeffs = small.eigenvectors().rightCols(retained).rowwise().reverse();
    Eigen::VectorXd theta = small.eigenvalues().tail(retained).reverse();
    Eigen::MatrixXd ritz = basis.leftCols(used) * coeffs;
    Eigen::MatrixXd ritz_image = image.leftCols(used) * coeffs;

    bool converged = true;
    for (Eigen::Index c = 0; c < nev; ++c) {
      const double lambda = sigma - theta(c);
      const double residual = (ritz_image.col(c) - theta(c) * ritz.col(c)).norm();
      if (residual > options.residual_tolerance * std::max(1.0, std::abs(lambda))) {
        converged = false;
        break;
      }
    }
    if (converged || used >= n) {
      values.resize(nev);
      vectors.resize(n, nev);
      for (Eigen::Index c = 0; c < nev; ++c) {
        values(c) = sigma - theta(c);
        vectors.col(c) = ritz.col(c).normalized();
      }
      if (!converged) {
        throw Error(ErrorCode::ConvergenceFailure, "Krylov space exhausted before eigenpairs converged");
      }
      return;
    }

    basis.leftCols(retained) = ritz;
    image.leftCols(retained) = ritz_image;
    used = retained;
    orthonormalize_block(basis, used, pending, rng);
  }
  throw Error(ErrorCode::ConvergenceFailure,
              "iterative eigensolver did not converge within " + std::to_string(options.max_restarts) + " restarts");
}

}  // namespace specabs::detail
