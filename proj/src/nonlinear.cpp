#include "specabs/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "specabs/error.hpp"

namespace specabs {

namespace {

void check_exponent(double p) {
  if (!(p > 1.0 && p <= 2.0)) {
    throw Error(ErrorCode::ExponentOutOfRange, "p = " + std::to_string(p) + " outside (1, 2]");
  }
}

void check_vector(const Graph& g, const Eigen::VectorXd& f) {
  if (f.size() != static_cast<Eigen::Index>(g.node_count())) {
    throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(f.size()) + " vs " +
                                                  std::to_string(g.node_count()) + " nodes");
  }
  if (!f.allFinite()) throw Error(ErrorCode::InvalidArgument, "vector has non-finite entries");
}

double signed_power(double x, double e) {
  if (x == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(x), e), x);
}

double edge_energy(const Graph& g, const Eigen::VectorXd& f, double p) {
  double total = 0.0;
  for (const Edge& e : g.edges()) total += e.weight * std::pow(std::abs(f(e.source) - f(e.target)), p);
  return total;
}

/// argmin_c sum_i |f_i - c|^p by bisection on the (decreasing) derivative.
double best_shift(const Eigen::VectorXd& f, double p) {
  double lo = f.minCoeff();
  double hi = f.maxCoeff();
  auto slope = [&](double c) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i) s += signed_power(f(i) - c, p - 1.0);
    return s;
  };
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (slope(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double spread(const Eigen::VectorXd& f, double c, double p) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) total += std::pow(std::abs(f(i) - c), p);
  return total;
}

struct Evaluation {
  double objective = 0.0;
  double shift = 0.0;
  double denominator = 0.0;
};

Evaluation evaluate(const Graph& g, const Eigen::VectorXd& f, double p) {
  Evaluation ev;
  ev.shift = best_shift(f, p);
  ev.denominator = spread(f, ev.shift, p);
  ev.objective = ev.denominator > 0.0 ? edge_energy(g, f, p) / ev.denominator : std::numeric_limits<double>::infinity();
  return ev;
}

/// Shift and scale so that the minimal spread equals 1; R_p is invariant.
Eigen::VectorXd normalized(const Eigen::VectorXd& f, const Evaluation& ev, double p) {
  return (f.array() - ev.shift) / std::pow(ev.denominator, 1.0 / p);
}

/// Gradient descent with Armijo backtracking along the unit gradient
/// direction. Every step and acceptance test is relative, so the path does not
/// depend on a uniform rescaling of the edge weights.
Eigen::VectorXd descend(const Graph& g, Eigen::VectorXd f, double p, const PLaplacianParams& params,
                        std::vector<double>& trace) {
  Evaluation ev = evaluate(g, f, p);
  f = normalized(f, ev, p);
  ev = evaluate(g, f, p);
  trace.push_back(ev.objective);

  double step = 0.25;
  for (std::size_t iter = 0; iter < params.max_iterations; ++iter) {
    Eigen::VectorXd grad = p * p_laplacian_apply(g, f, p);
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      grad(i) -= p * ev.objective * signed_power(f(i) - ev.shift, p - 1.0);
    }
    grad /= ev.denominator;
    const double grad_norm = grad.norm();
    if (!(grad_norm > 0.0) || !std::isfinite(grad_norm)) break;
    const Eigen::VectorXd direction = grad / grad_norm;

    bool accepted = false;
    Eigen::VectorXd next;
    Evaluation next_ev;
    double t = std::min(1.0, 2.0 * step);
    for (int halving = 0; halving < 60 && !accepted; ++halving, t *= 0.5) {
      const Eigen::VectorXd candidate = f - t * direction;
      const Evaluation trial = evaluate(g, candidate, p);
      if (!std::isfinite(trial.objective) || trial.objective > ev.objective - 1e-4 * t * grad_norm) continue;
      next = normalized(candidate, trial, p);
      next_ev = evaluate(g, next, p);
      accepted = next_ev.objective < ev.objective;
    }
    if (!accepted) break;

    const double decrease = (ev.objective - next_ev.objective) / ev.objective;
    f = std::move(next);
    ev = next_ev;
    step = 2.0 * t;
    trace.push_back(ev.objective);
    if (decrease < params.inner_tolerance) break;
  }
  return f;
}

}  // namespace

void PLaplacianParams::validate() const {
  check_exponent(p);
  if (continuation_steps < 1) throw Error(ErrorCode::InvalidArgument, "continuation_steps must be at least 1");
  if (!(inner_tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "inner_tolerance must be positive");
  if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be at least 1");
}

Eigen::VectorXd p_laplacian_apply(const Graph& g, const Eigen::VectorXd& f, double p) {
  check_exponent(p);
  check_vector(g, f);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(f.size());
  for (const Edge& e : g.edges()) {
    const double flow = e.weight * signed_power(f(e.source) - f(e.target), p - 1.0);
    out(e.source) += flow;
    out(e.target) -= flow;
  }
  return out;
}

double p_rayleigh(const Graph& g, const Eigen::VectorXd& f, double p) {
  check_exponent(p);
  check_vector(g, f);
  return evaluate(g, f, p).objective;
}

SweepCut threshold_sweep(const Graph& g, const Eigen::VectorXd& f, SweepCriterion criterion) {
  check_vector(g, f);
  const std::size_t n = g.node_count();
  if (n < 2) throw Error(ErrorCode::TooFewNodes, "threshold sweep needs at least two nodes");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f(a) < f(b); });

  double total_volume = 0.0;
  for (std::size_t v = 0; v < n; ++v) total_volume += g.degree(v);

  std::vector<bool> inside(n, false);
  double cut = 0.0;
  double volume = 0.0;
  double best_value = std::numeric_limits<double>::infinity();
  std::size_t best_prefix = 1;
  for (std::size_t t = 0; t + 1 < n; ++t) {
    const std::size_t v = order[t];
    inside[v] = true;
    volume += g.degree(v);
    for (const Neighbor& nb : g.neighbors(v)) cut += inside[nb.node] ? -nb.weight : nb.weight;

    const double size_in = static_cast<double>(t + 1);
    const double size_out = static_cast<double>(n - t - 1);
    const double volume_out = total_volume - volume;
    double value = 0.0;
    switch (criterion) {
      case SweepCriterion::Cheeger: {
        const double denom = std::min(volume, volume_out);
        value = cut == 0.0 ? 0.0 : (denom > 0.0 ? cut / denom : std::numeric_limits<double>::infinity());
        break;
      }
      case SweepCriterion::Ratio:
        value = cut / size_in + cut / size_out;
        break;
      case SweepCriterion::Normalized:
        value = cut == 0.0 ? 0.0
                           : (volume > 0.0 && volume_out > 0.0 ? cut / volume + cut / volume_out
                                                               : std::numeric_limits<double>::infinity());
        break;
    }
    if (value < best_value) {
      best_value = value;
      best_prefix = t + 1;
    }
  }

  std::vector<std::size_t> ids(n, 1);
  for (std::size_t t = 0; t < best_prefix; ++t) ids[order[t]] = 0;
  return SweepCut{Partition(std::move(ids)).canonical(), best_value};
}

PSpectralResult p_spectral_bisect(const Graph& g, const Spectrum& spectrum, const PLaplacianParams& params) {
  params.validate();
  const Eigen::VectorXd fiedler = fiedler_vector(spectrum);
  if (fiedler.size() != static_cast<Eigen::Index>(g.node_count())) {
    throw Error(ErrorCode::DimensionMismatch, "spectrum does not belong to this graph");
  }

  PSpectralResult result;
  Eigen::VectorXd f = fiedler;
  const auto steps = static_cast<double>(params.continuation_steps);
  for (std::size_t step = 1; step <= params.continuation_steps; ++step) {
    const double exponent =
        step == params.continuation_steps ? params.p : 2.0 * std::pow(params.p / 2.0, static_cast<double>(step) / steps);
    std::vector<double> trace;
    if (exponent < 2.0) {
      const double start = p_rayleigh(g, f, exponent);
      f = descend(g, f, exponent, params, trace);
      if (!std::isfinite(trace.back()) || trace.back() > start * (1.0 + 1e-9)) {
        throw Error(ErrorCode::ConvergenceFailure,
                    "objective did not decrease during continuation step " + std::to_string(step));
      }
    } else {
      trace.push_back(p_rayleigh(g, f, exponent));
    }
    result.trace.push_back(std::move(trace));
  }

  result.initial_objective = p_rayleigh(g, fiedler, params.p);
  result.objective = p_rayleigh(g, f, params.p);
  if (result.objective > result.initial_objective) {
    f = fiedler;
    result.objective = result.initial_objective;
  }
  const Evaluation ev = evaluate(g, f, params.p);
  result.f = normalized(f, ev, params.p);

  SweepCut sweep = threshold_sweep(g, result.f, params.criterion);
  result.partition = std::move(sweep.partition);
  result.sweep_value = sweep.value;
  return result;
}

PSpectralResult p_spectral_bisect(const Graph& g, const PLaplacianParams& params, std::uint64_t seed) {
  params.validate();
  if (g.node_count() < 2) throw Error(ErrorCode::TooFewNodes, "bisection needs at least two nodes");
  SolverOptions options;
  options.seed = seed;
  const Spectrum spectrum = laplacian_spectrum(g, 2, options);
  return p_spectral_bisect(g, spectrum, params);
}

Partition p_spectral_bipartition(const Graph& g, const PLaplacianParams& params, std::uint64_t seed) {
  return p_spectral_bisect(g, params, seed).partition;
}

Partition p_recursive_bipartition(const Graph& g, std::size_t k, const PLaplacianParams& params, std::uint64_t seed) {
  params.validate();
  SolverOptions options;
  options.seed = seed;
  return recursive_split(
      g, k,
      [&params](const Graph& sub, const Spectrum& spectrum) { return p_spectral_bisect(sub, spectrum, params).partition; },
      options);
}

JacobianGraph jacobian_graph(const CouplingSystem& system, double threshold) {
  const Eigen::Index n = system.couplings.rows();
  if (system.couplings.cols() != n || system.linear_mask.rows() != n || system.linear_mask.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "couplings are " + std::to_string(system.couplings.rows()) + "x" +
                                                  std::to_string(system.couplings.cols()) + ", mask is " +
                                                  std::to_string(system.linear_mask.rows()) + "x" +
                                                  std::to_string(system.linear_mask.cols()));
  }
  if (!(threshold >= 0.0)) throw Error(ErrorCode::InvalidArgument, "threshold must be nonnegative");

  std::vector<Edge> edges;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (!system.linear_mask(i, j) && !system.linear_mask(j, i)) continue;
      const double strength = std::max(std::abs(system.couplings(i, j)), std::abs(system.couplings(j, i)));
      if (strength > threshold) edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), 1.0});
    }
  }
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = "x" + std::to_string(i);

  JacobianGraph out;
  out.graph = graph_from_edges(std::move(labels), std::move(edges));
  for (auto& comp : connected_components(out.graph)) {
    if (comp.size() > out.largest_component.size()) out.largest_component = std::move(comp);
  }
  return out;
}

}  // namespace specabs
