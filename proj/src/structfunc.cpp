#include "specabs/structfunc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "specabs/error.hpp"
#include "specabs/parallel.hpp"

namespace specabs {

namespace {

constexpr double kBetaMax = 10.0;
constexpr double kBetaStep = 0.1;
constexpr int kGridPoints = 101;
constexpr double kGoldenTolerance = 1e-12;

void check_fc_matrix(const Eigen::MatrixXd& m, const char* name) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(name) + " is not square");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorCode::NotSymmetric, std::string(name) + " is not symmetric");
  }
}

/// Observed matrix expressed in the Laplacian eigenbasis: only its diagonal
/// interacts with the model, the off-diagonal energy is a constant floor.
struct ProjectedTarget {
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd diagonal;
  double off_diagonal_energy = 0.0;
};

struct BetaFit {
  double beta = 0.0;
  double scale = 0.0;
  double offset = 0.0;
  double error = 0.0;
};

BetaFit solve_at(const ProjectedTarget& target, double beta) {
  const Eigen::Index n = target.diagonal.size();
  Eigen::MatrixXd design(n, 2);
  design.col(0) = (-beta * target.eigenvalues.array()).exp().matrix();
  design.col(1).setOnes();
  const Eigen::Vector2d coeffs = design.completeOrthogonalDecomposition().solve(target.diagonal);
  const double diag_error = (design * coeffs - target.diagonal).squaredNorm();
  return BetaFit{beta, coeffs(0), coeffs(1), std::sqrt(diag_error + target.off_diagonal_energy)};
}

}  // namespace

Eigen::MatrixXd predict_fc(const Spectrum& spectrum, const FcModel& model) {
  if (!spectrum.complete()) {
    throw Error(ErrorCode::DimensionOutOfRange, "functional prediction needs the complete spectrum");
  }
  const Eigen::MatrixXd& u = spectrum.eigenvectors;
  const Eigen::VectorXd decay = (-model.beta * spectrum.eigenvalues.array()).exp().matrix();
  Eigen::MatrixXd f = model.scale * (u * decay.asDiagonal() * u.transpose());
  f = 0.5 * (f + f.transpose()).eval();
  f.diagonal().array() += model.offset;
  return f;
}

Eigen::MatrixXd predict_fc(const Graph& g, const FcModel& model, LaplacianKind kind) {
  return predict_fc(eigendecompose(laplacian(g, kind)), model);
}

FcFit fit_fc(const Graph& g, const Eigen::MatrixXd& observed, LaplacianKind kind) {
  check_fc_matrix(observed, "observed matrix");
  if (observed.rows() != static_cast<Eigen::Index>(g.node_count())) {
    throw Error(ErrorCode::DimensionMismatch, "observed matrix is " + std::to_string(observed.rows()) + "x" +
                                                  std::to_string(observed.cols()) + " for a " +
                                                  std::to_string(g.node_count()) + "-node graph");
  }
  const Spectrum spectrum = eigendecompose(laplacian(g, kind));

  ProjectedTarget target;
  target.eigenvalues = spectrum.eigenvalues;
  const Eigen::MatrixXd rotated = spectrum.eigenvectors.transpose() * observed * spectrum.eigenvectors;
  target.diagonal = rotated.diagonal();
  for (Eigen::Index j = 0; j < rotated.cols(); ++j) {
    for (Eigen::Index i = 0; i < rotated.rows(); ++i) {
      if (i != j) target.off_diagonal_energy += rotated(i, j) * rotated(i, j);
    }
  }

  std::vector<BetaFit> grid(kGridPoints);
  parallel_for(grid.size(), [&](std::size_t i) { grid[i] = solve_at(target, kBetaStep * static_cast<double>(i)); });
  BetaFit best = grid.front();
  for (const BetaFit& candidate : grid) {
    if (candidate.error < best.error) best = candidate;
  }

  // Golden-section refinement within one grid step of the best grid point.
  double lo = std::max(0.0, best.beta - kBetaStep);
  double hi = std::min(kBetaMax, best.beta + kBetaStep);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  BetaFit f1 = solve_at(target, x1);
  BetaFit f2 = solve_at(target, x2);
  for (int iter = 0; iter < 200 && hi - lo > kGoldenTolerance; ++iter) {
    if (f1.error <= f2.error) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = solve_at(target, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = solve_at(target, x2);
    }
  }
  for (const BetaFit& candidate : {f1, f2}) {
    if (candidate.error < best.error) best = candidate;
  }

  FcFit fit;
  fit.model = FcModel{best.beta, best.scale, best.offset};
  fit.frobenius_error = (predict_fc(spectrum, fit.model) - observed).norm();
  return fit;
}

double spectra_similarity(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  check_fc_matrix(a, "first matrix");
  check_fc_matrix(b, "second matrix");
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "matrices are " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.rows()) + " and " + std::to_string(b.rows()) +
                                                  "x" + std::to_string(b.rows()));
  }
  if (a.rows() < 3) throw Error(ErrorCode::DimensionMismatch, "spectra comparison needs n >= 3");

  auto centered_spectrum = [](const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "eigenvalue solver failed");
    Eigen::VectorXd values = solver.eigenvalues();
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    values.array() -= values.mean();
    if (values.norm() <= 1e-12 * scale * std::sqrt(static_cast<double>(values.size()))) {
      throw Error(ErrorCode::DegenerateVariance, "spectrum has zero variance");
    }
    return values;
  };
  const Eigen::VectorXd x = centered_spectrum(a);
  const Eigen::VectorXd y = centered_spectrum(b);
  const double r = x.dot(y) / (x.norm() * y.norm());
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace specabs
