#pragma once

#include <Eigen/Dense>

#include "specabs/graph.hpp"
#include "specabs/spectral.hpp"

namespace specabs {

/// F = scale * exp(-beta * L) + offset * I.
struct FcModel {
  double beta = 1.0;
  double scale = 1.0;
  double offset = 0.0;
};

struct FcFit {
  FcModel model;
  double frobenius_error = 0.0;
};

/// Predicted functional connectivity from the eigen-decomposition of g's
/// Laplacian (symmetric-normalized unless stated otherwise), summed as
/// scale * sum_k exp(-beta lambda_k) u_k u_k^T + offset * I.
Eigen::MatrixXd predict_fc(const Graph& g, const FcModel& model, LaplacianKind kind = LaplacianKind::Normalized);

/// Same, reusing a complete spectrum.
Eigen::MatrixXd predict_fc(const Spectrum& spectrum, const FcModel& model);

/// Least-squares fit of FcModel to an observed symmetric matrix. beta is
/// searched on the grid 0, 0.1, ..., 10 (lowest beta wins ties) and refined by
/// golden-section search within one grid step; scale and offset are solved in
/// closed form for each beta. Errors: DimensionMismatch, NotSymmetric.
FcFit fit_fc(const Graph& g, const Eigen::MatrixXd& observed, LaplacianKind kind = LaplacianKind::Normalized);

/// Pearson correlation of the ascending eigenvalue lists of two symmetric
/// matrices. Errors: DimensionMismatch (sizes differ or n < 3),
/// DegenerateVariance, NotSymmetric.
double spectra_similarity(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace specabs
