#include "specabs/hierarchy.hpp"

#include <string>

#include "specabs/error.hpp"

namespace specabs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t nominal_dim(const ClusterMethod& method) {
  if (const auto* kway = std::get_if<KwayEmbedding>(&method)) return kway->dim;
  return 1;
}

Partition cluster_level(const Graph& g, const LevelSpec& spec) {
  if (spec.k == g.node_count()) return Partition::identity(g.node_count());
  SolverOptions options;
  options.seed = spec.seed;
  return std::visit(
      Overloaded{
          [&](const RecursiveLinear&) { return recursive_bipartition(g, spec.k, options); },
          [&](const RecursiveP& m) { return p_recursive_bipartition(g, spec.k, m.params, spec.seed); },
          [&](const KwayEmbedding& m) {
            const Spectrum spectrum = laplacian_spectrum(g, m.dim + 1 <= g.node_count() ? m.dim + 1 : g.node_count(), options);
            return kway_embedding_cluster(spectral_embedding(spectrum, m.dim), spec.k, m.metric, spec.seed);
          },
      },
      spec.method);
}

}  // namespace

Hierarchy build_hierarchy(const Graph& g, const std::vector<LevelSpec>& specs) {
  if (specs.empty()) throw Error(ErrorCode::SpecMonotonicityViolation, "at least one level spec is required");
  if (specs.front().k > g.node_count()) {
    throw Error(ErrorCode::SpecMonotonicityViolation, "level 0 asks for " + std::to_string(specs.front().k) +
                                                          " clusters of " + std::to_string(g.node_count()) + " nodes");
  }
  for (std::size_t t = 1; t < specs.size(); ++t) {
    if (specs[t].k >= specs[t - 1].k) {
      throw Error(ErrorCode::SpecMonotonicityViolation,
                  "level " + std::to_string(t) + " k = " + std::to_string(specs[t].k) +
                      " must be smaller than level " + std::to_string(t - 1) + " k = " + std::to_string(specs[t - 1].k));
    }
  }

  Hierarchy h;
  h.base = g;
  const Graph* current = &h.base;
  for (std::size_t t = 0; t < specs.size(); ++t) {
    HierarchyLevel level;
    level.level_index = t;
    level.partition = cluster_level(*current, specs[t]);
    level.quotient = quotient_graph(*current, level.partition);
    level.profile = connectivity_profile(*current, level.partition);
    level.intra_weight = intra_cluster_weight(*current, level.partition);
    level.embedding_dim = nominal_dim(specs[t].method);
    h.levels.push_back(std::move(level));
    current = &h.levels.back().quotient;
  }
  return h;
}

Partition flatten(const Hierarchy& h, std::size_t level) {
  if (level >= h.levels.size()) {
    throw Error(ErrorCode::LevelOutOfRange,
                "level " + std::to_string(level) + " of a " + std::to_string(h.levels.size()) + "-level hierarchy");
  }
  std::vector<std::size_t> ids(h.levels.front().partition.assignment().begin(),
                               h.levels.front().partition.assignment().end());
  for (std::size_t t = 1; t <= level; ++t) {
    for (auto& id : ids) id = h.levels[t].partition[id];
  }
  return Partition(std::move(ids));
}

}  // namespace specabs
