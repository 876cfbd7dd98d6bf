#include "specabs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specabs/error.hpp"
#include "specabs/sbm.hpp"

namespace specabs {

namespace {

constexpr double kSignificant = 1e-12;
// Relative gap below which neighbouring eigenvalues share an eigenspace.
constexpr double kDegenerateGap = 1e-9;
constexpr double kProjectionFloor = 1e-6;
constexpr std::uint64_t kProbeSeed = 0x9e3779b97f4a7c15ULL;

void check_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NotSymmetric, "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw Error(ErrorCode::NotSymmetric, "max |a_ij - a_ji| = " + std::to_string(asym));
  }
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kSignificant) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

namespace detail {

void canonicalize_eigenbasis(const Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
  const Eigen::Index m = values.size();
  const Eigen::Index n = vectors.rows();
  if (m == 0) return;
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());

  Eigen::Index begin = 0;
  while (begin < m) {
    Eigen::Index end = begin + 1;
    while (end < m && values(end) - values(end - 1) <= kDegenerateGap * scale) ++end;
    const Eigen::Index width = end - begin;

    if (width > 1) {
      const Eigen::MatrixXd basis = vectors.middleCols(begin, width);
      Eigen::MatrixXd chosen(n, width);
      Eigen::Index found = 0;
      UniformSource probes(kProbeSeed);
      for (Eigen::Index j = 0; j < 4 * width && found < width; ++j) {
        Eigen::VectorXd probe(n);
        for (auto& x : probe) x = 2.0 * probes.next() - 1.0;
        Eigen::VectorXd u = basis * (basis.transpose() * probe);
        for (int pass = 0; pass < 2; ++pass) {
          for (Eigen::Index c = 0; c < found; ++c) u -= chosen.col(c).dot(u) * chosen.col(c);
        }
        const double norm = u.norm();
        if (norm > kProjectionFloor) chosen.col(found++) = u / norm;
      }
      for (Eigen::Index c = 0; found < width && c < width; ++c) {
        Eigen::VectorXd u = basis.col(c);
        for (int pass = 0; pass < 2; ++pass) {
          for (Eigen::Index q = 0; q < found; ++q) u -= chosen.col(q).dot(u) * chosen.col(q);
        }
        if (u.norm() > kProjectionFloor) chosen.col(found++) = u.normalized();
      }
      vectors.middleCols(begin, width) = chosen;
    }
    for (Eigen::Index c = begin; c < end; ++c) fix_sign(vectors.col(c));
    begin = end;
  }
}

}  // namespace detail

Spectrum eigendecompose(const LaplacianMatrix& l) {
  check_symmetric(l.entries);
  Spectrum s;
  s.source_kind = l.kind;
  if (l.size() == 0) return s;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l.entries);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "dense symmetric eigensolver did not converge");
  }
  s.eigenvalues = solver.eigenvalues();
  s.eigenvectors = solver.eigenvectors();
  detail::canonicalize_eigenbasis(s.eigenvalues, s.eigenvectors);
  return s;
}

Spectrum eigendecompose_smallest(const LaplacianMatrix& l, std::size_t count, const SolverOptions& options) {
  const auto n = l.size();
  if (count == 0 || static_cast<Eigen::Index>(count) > n) {
    throw Error(ErrorCode::DimensionOutOfRange,
                "requested " + std::to_string(count) + " eigenpairs of a " + std::to_string(n) + "-node Laplacian");
  }
  if (n <= options.dense_limit) {
    Spectrum full = eigendecompose(l);
    const auto m = static_cast<Eigen::Index>(count);
    full.eigenvalues.conservativeResize(m);
    full.eigenvectors.conservativeResize(Eigen::NoChange, m);
    return full;
  }
  check_symmetric(l.entries);
  Spectrum s;
  s.source_kind = l.kind;
  detail::lanczos_smallest(l.entries, count, options, s.eigenvalues, s.eigenvectors);
  detail::canonicalize_eigenbasis(s.eigenvalues, s.eigenvectors);
  return s;
}

double rayleigh_quotient(const LaplacianMatrix& l, const Eigen::VectorXd& x) {
  if (x.size() != l.size()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(x.size()) + " vs matrix size " +
                                                  std::to_string(l.size()));
  }
  const double norm2 = x.squaredNorm();
  if (!(norm2 > 0.0)) throw Error(ErrorCode::ZeroVector, "Rayleigh quotient of the zero vector");
  return x.dot(l.entries * x) / norm2;
}

double edge_rayleigh_quotient(const Graph& g, const Eigen::VectorXd& x) {
  if (x.size() != static_cast<Eigen::Index>(g.node_count())) {
    throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(x.size()) + " vs " +
                                                  std::to_string(g.node_count()) + " nodes");
  }
  const double norm2 = x.squaredNorm();
  if (!(norm2 > 0.0)) throw Error(ErrorCode::ZeroVector, "Rayleigh quotient of the zero vector");
  double energy = 0.0;
  for (const Edge& e : g.edges()) {
    const double diff = x(e.source) - x(e.target);
    energy += e.weight * diff * diff;
  }
  return energy / norm2;
}

double algebraic_connectivity(const Spectrum& s) {
  if (s.node_count() < 2 || s.pair_count() < 2) {
    throw Error(ErrorCode::TooFewNodes, "algebraic connectivity needs at least two eigenpairs");
  }
  return s.eigenvalues(1);
}

Eigen::VectorXd fiedler_vector(const Spectrum& s) {
  const double lambda2 = algebraic_connectivity(s);
  if (lambda2 <= kZeroEigenvalue) {
    throw Error(ErrorCode::DisconnectedGraph, "lambda_2 = " + std::to_string(lambda2) + " (graph is disconnected)");
  }
  return s.eigenvectors.col(1);
}

Embedding spectral_embedding(const Spectrum& s, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  if (d < 1 || d > s.node_count() - 1 || d + 1 > s.pair_count()) {
    throw Error(ErrorCode::DimensionOutOfRange, "embedding dimension " + std::to_string(dim) + " for " +
                                                    std::to_string(s.node_count()) + " nodes (" +
                                                    std::to_string(s.pair_count()) + " eigenpairs available)");
  }
  return Embedding{s.eigenvectors.middleCols(1, d)};
}

Spectrum laplacian_spectrum(const Graph& g, std::size_t pairs, const SolverOptions& options) {
  return eigendecompose_smallest(laplacian(g, LaplacianKind::Combinatorial), pairs, options);
}

}  // namespace specabs
