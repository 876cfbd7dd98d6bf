#include "specabs/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "specabs/error.hpp"

namespace specabs {

namespace {

void check_covers(const Graph& g, const Partition& p) {
  if (p.size() != g.node_count()) {
    throw Error(ErrorCode::PartitionMismatch, "partition has " + std::to_string(p.size()) +
                                                  " nodes, graph has " + std::to_string(g.node_count()));
  }
}

struct WorkCluster {
  std::vector<std::size_t> members;
  Spectrum spectrum;
  double lambda2 = 0.0;
};

WorkCluster make_cluster(const Graph& g, std::vector<std::size_t> members, const SolverOptions& options) {
  WorkCluster c;
  c.members = std::move(members);
  if (c.members.size() >= 2) {
    c.spectrum = laplacian_spectrum(induced_subgraph(g, c.members), 2, options);
    c.lambda2 = c.spectrum.eigenvalues(1);
  }
  return c;
}

}  // namespace

Partition sign_bipartition(const Graph& g, const Eigen::VectorXd& v) {
  if (v.size() != static_cast<Eigen::Index>(g.node_count())) {
    throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(v.size()) + " vs " +
                                                  std::to_string(g.node_count()) + " nodes");
  }
  const double scale = v.size() > 0 ? v.cwiseAbs().maxCoeff() : 0.0;
  const double zero = 1e-12 * scale;
  std::vector<std::size_t> ids(g.node_count());
  std::size_t negatives = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    ids[i] = v(i) < -zero ? 1 : 0;
    negatives += ids[i];
  }
  if (negatives == 0 || negatives == ids.size()) {
    throw Error(ErrorCode::ConstantVector, "vector has no sign change");
  }
  return Partition(std::move(ids));
}

Partition recursive_split(const Graph& g, std::size_t k, const Bisector& bisect, const SolverOptions& options) {
  const std::size_t n = g.node_count();
  if (k == 0 || k > n) {
    throw Error(ErrorCode::KOutOfRange, "k = " + std::to_string(k) + " for " + std::to_string(n) + " nodes");
  }
  if (k == 1) return Partition::single(n);

  auto components = connected_components(g);
  if (components.size() > k) {
    throw Error(ErrorCode::KOutOfRange, "graph has " + std::to_string(components.size()) +
                                            " components, more than k = " + std::to_string(k));
  }
  std::vector<WorkCluster> clusters;
  for (auto& comp : components) clusters.push_back(make_cluster(g, std::move(comp), options));

  while (clusters.size() < k) {
    std::size_t pick = clusters.size();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      const WorkCluster& cand = clusters[c];
      if (cand.members.size() < 2) continue;
      if (pick == clusters.size()) {
        pick = c;
        continue;
      }
      const WorkCluster& best = clusters[pick];
      if (cand.lambda2 != best.lambda2) {
        if (cand.lambda2 < best.lambda2) pick = c;
      } else if (cand.members.size() != best.members.size()) {
        if (cand.members.size() > best.members.size()) pick = c;
      } else if (cand.members.front() < best.members.front()) {
        pick = c;
      }
    }
    if (pick == clusters.size()) {
      throw Error(ErrorCode::NotEnoughSplittableClusters,
                  "only " + std::to_string(clusters.size()) + " clusters reachable, k = " + std::to_string(k));
    }

    WorkCluster target = std::move(clusters[pick]);
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(pick));
    const Graph sub = induced_subgraph(g, target.members);

    Partition halves;
    if (target.lambda2 <= kZeroEigenvalue) {
      const auto parts = connected_components(sub);
      std::vector<std::size_t> ids(sub.node_count(), 1);
      for (std::size_t v : parts.front()) ids[v] = 0;
      halves = Partition(std::move(ids));
    } else {
      halves = bisect(sub, target.spectrum);
    }
    if (halves.size() != sub.node_count() || halves.cluster_count() != 2) {
      throw Error(ErrorCode::InvalidPartition, "bisector must return a 2-cluster partition of the subgraph");
    }

    std::vector<std::size_t> side[2];
    for (std::size_t local = 0; local < target.members.size(); ++local) {
      side[halves[local]].push_back(target.members[local]);
    }
    for (auto& members : side) {
      std::sort(members.begin(), members.end());
      clusters.push_back(make_cluster(g, std::move(members), options));
    }
  }

  std::vector<std::size_t> ids(n);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (std::size_t v : clusters[c].members) ids[v] = c;
  }
  return Partition(std::move(ids)).canonical();
}

Partition recursive_bipartition(const Graph& g, std::size_t k, const SolverOptions& options) {
  return recursive_split(
      g, k,
      [](const Graph& sub, const Spectrum& spectrum) { return sign_bipartition(sub, fiedler_vector(spectrum)); },
      options);
}

CutMetrics cut_metrics(const Graph& g, const Partition& p) {
  check_covers(g, p);
  const std::size_t k = p.cluster_count();
  std::vector<double> cut(k, 0.0);
  std::vector<double> volume(k, 0.0);
  const auto sizes = p.cluster_sizes();
  double total_volume = 0.0;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    volume[p[v]] += g.degree(v);
    total_volume += g.degree(v);
  }

  CutMetrics m;
  for (const Edge& e : g.edges()) {
    const std::size_t a = p[e.source];
    const std::size_t b = p[e.target];
    if (a == b) continue;
    m.cut_weight += e.weight;
    cut[a] += e.weight;
    cut[b] += e.weight;
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (cut[c] == 0.0) continue;
    m.ratio_cut += cut[c] / static_cast<double>(sizes[c]);
    m.normalized_cut += cut[c] / volume[c];
    const double smaller = std::min(volume[c], total_volume - volume[c]);
    m.cheeger = std::max(m.cheeger, cut[c] / smaller);
  }
  return m;
}

ConnectivityProfile connectivity_profile(const Graph& g, const Partition& p) {
  check_covers(g, p);
  const std::size_t n = g.node_count();
  ConnectivityProfile profile;
  profile.clusters.resize(p.cluster_count());
  const auto sizes = p.cluster_sizes();
  for (std::size_t c = 0; c < sizes.size(); ++c) profile.clusters[c].size = sizes[c];

  for (const Edge& e : g.edges()) {
    const std::size_t a = p[e.source];
    const std::size_t b = p[e.target];
    if (a == b) {
      profile.clusters[a].internal_weight += e.weight;
    } else {
      profile.clusters[a].external_weight += e.weight;
      profile.clusters[b].external_weight += e.weight;
    }
  }
  for (auto& c : profile.clusters) {
    const double s = static_cast<double>(c.size);
    const double internal_pairs = s * (s - 1.0) / 2.0;
    const double external_pairs = s * (static_cast<double>(n) - s);
    c.internal_density = internal_pairs > 0.0 ? c.internal_weight / internal_pairs : 0.0;
    if (c.external_weight == 0.0) {
      c.separation = std::numeric_limits<double>::infinity();
    } else {
      c.separation = c.internal_density / (c.external_weight / external_pairs);
    }
  }
  return profile;
}

}  // namespace specabs
