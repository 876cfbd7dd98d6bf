#include "specabs/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <map>
#include <sstream>
#include <utility>

#include "specabs/error.hpp"
#include "specabs/io.hpp"
#include "specabs/nonlinear.hpp"
#include "specabs/partition.hpp"
#include "specabs/report.hpp"
#include "specabs/spectral.hpp"
#include "specabs/structfunc.hpp"

namespace specabs::cli {

namespace {

const std::vector<std::string> kCommands = {"spectrum",   "bipartition", "cluster", "p-cluster",
                                            "hierarchy",  "predict-fc",  "fit-fc",  "jacobian-graph"};

using Outputs = std::vector<std::pair<std::filesystem::path, std::string>>;

std::size_t parse_count(const std::string& key, const std::string& value) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::InvalidArgument, "level spec: " + key + "=" + value + " is not a nonnegative integer");
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::InvalidArgument, "level spec: " + key + "=" + value + " is not a number");
  }
  return out;
}

LaplacianKind laplacian_kind(const RunConfig& config, LaplacianKind fallback) {
  if (!config.laplacian) return fallback;
  if (*config.laplacian == "combinatorial") return LaplacianKind::Combinatorial;
  if (*config.laplacian == "normalized") return LaplacianKind::Normalized;
  throw Error(ErrorCode::InvalidArgument, "unknown Laplacian kind '" + *config.laplacian + "'");
}

PLaplacianParams p_params(const RunConfig& config) {
  PLaplacianParams params;
  params.p = config.p;
  params.continuation_steps = config.continuation_steps;
  return params;
}

/// Partition report plus a companion {cut_metrics, profile} file.
void emit_partition(const RunConfig& config, const Graph& g, const Partition& p, Json& report, Outputs& files) {
  report = partition_to_json(p, g.labels());
  if (!config.output.empty()) {
    Json metrics;
    metrics["cut_metrics"] = cut_metrics_to_json(cut_metrics(g, p));
    metrics["profile"] = profile_to_json(connectivity_profile(g, p));
    files.emplace_back(companion_path(config.output, ".metrics.json"), dump_json(metrics));
  }
}

/// Builds the report and companion files without touching the filesystem.
std::string execute(const RunConfig& config, Outputs& files) {
  Json report;
  const std::string& cmd = config.command;

  if (cmd == "jacobian-graph") {
    const CouplingSystem system = read_coupling_system(config.input, config.mask);
    report = jacobian_graph_to_json(jacobian_graph(system, config.threshold));
    return dump_json(report);
  }

  const Graph g = parse_graph_file(config.input);

  if (cmd == "spectrum") {
    const Spectrum s = eigendecompose(laplacian(g, laplacian_kind(config, LaplacianKind::Combinatorial)));
    report = spectrum_to_json(s);
    if (!config.output.empty()) files.emplace_back(companion_path(config.output, ".scree.csv"), scree_csv(s));
  } else if (cmd == "bipartition") {
    SolverOptions options;
    options.seed = config.seed;
    const Spectrum s = laplacian_spectrum(g, 2, options);
    emit_partition(config, g, sign_bipartition(g, fiedler_vector(s)), report, files);
  } else if (cmd == "cluster") {
    if (config.k == 0 || config.k > g.node_count()) {
      throw Error(ErrorCode::KOutOfRange,
                  "k=" + std::to_string(config.k) + " for " + std::to_string(g.node_count()) + " nodes");
    }
    const std::size_t dims = config.dims.value_or(config.k > 1 ? config.k - 1 : 1);
    SolverOptions options;
    options.seed = config.seed;
    const std::size_t pairs = std::min(dims + 1, g.node_count());
    const Spectrum s = laplacian_spectrum(g, pairs, options);
    const Partition p = kway_embedding_cluster(spectral_embedding(s, dims), config.k,
                                               parse_metric(config.metric, config.q), config.seed);
    emit_partition(config, g, p, report, files);
  } else if (cmd == "p-cluster") {
    emit_partition(config, g, p_recursive_bipartition(g, config.k, p_params(config), config.seed), report, files);
  } else if (cmd == "hierarchy") {
    if (config.levels.empty()) throw Error(ErrorCode::InvalidArgument, "hierarchy needs at least one --level");
    std::vector<LevelSpec> specs;
    for (const auto& text : config.levels) specs.push_back(parse_level_spec(text, config.seed));
    const Hierarchy h = build_hierarchy(g, specs);
    report = hierarchy_to_json(h);
    if (config.dot && !config.output.empty()) {
      files.emplace_back(companion_path(config.output, ".dot"), hierarchy_to_dot(h));
    }
  } else if (cmd == "predict-fc") {
    const FcModel model{config.beta, config.scale, config.offset};
    return matrix_to_csv(predict_fc(g, model, laplacian_kind(config, LaplacianKind::Normalized)), g.labels());
  } else if (cmd == "fit-fc") {
    const Eigen::MatrixXd observed = read_matrix_file(config.observed);
    const LaplacianKind kind = laplacian_kind(config, LaplacianKind::Normalized);
    const FcFit fit = fit_fc(g, observed, kind);
    const double similarity = spectra_similarity(predict_fc(g, fit.model, kind), observed);
    report = fit_report_to_json(fit, similarity);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown command '" + cmd + "'");
  }
  return dump_json(report);
}

}  // namespace

DistanceMetric parse_metric(const std::string& name, double q) {
  if (name == "euclidean") return {MetricKind::Euclidean, q};
  if (name == "manhattan") return {MetricKind::Manhattan, q};
  if (name == "fractional") return {MetricKind::Fractional, q};
  throw Error(ErrorCode::InvalidArgument, "unknown metric '" + name + "'");
}

LevelSpec parse_level_spec(const std::string& text, std::uint64_t default_seed) {
  std::map<std::string, std::string> fields;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::InvalidArgument, "level spec item '" + item + "' is not key=value");
    }
    if (!fields.emplace(item.substr(0, eq), item.substr(eq + 1)).second) {
      throw Error(ErrorCode::InvalidArgument, "level spec repeats key '" + item.substr(0, eq) + "'");
    }
  }
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = fields.find(key);
    if (it == fields.end()) return std::nullopt;
    std::string value = it->second;
    fields.erase(it);
    return value;
  };

  LevelSpec spec;
  const auto k = take("k");
  if (!k) throw Error(ErrorCode::InvalidArgument, "level spec '" + text + "' lacks k");
  spec.k = parse_count("k", *k);
  spec.seed = default_seed;
  if (auto seed = take("seed")) spec.seed = parse_count("seed", *seed);

  const std::string method = take("method").value_or("recursive-linear");
  if (method == "recursive-linear") {
    spec.method = RecursiveLinear{};
  } else if (method == "recursive-p") {
    RecursiveP m;
    if (auto p = take("p")) m.params.p = parse_real("p", *p);
    if (auto steps = take("steps")) m.params.continuation_steps = parse_count("steps", *steps);
    m.params.validate();
    spec.method = m;
  } else if (method == "kway-embedding") {
    KwayEmbedding m;
    m.dim = spec.k > 1 ? spec.k - 1 : 1;
    if (auto dims = take("dims")) m.dim = parse_count("dims", *dims);
    double q = 0.5;
    if (auto qs = take("q")) q = parse_real("q", *qs);
    m.metric = parse_metric(take("metric").value_or("euclidean"), q);
    spec.method = m;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown level method '" + method + "'");
  }
  if (!fields.empty()) {
    throw Error(ErrorCode::InvalidArgument, "level spec key '" + fields.begin()->first + "' not valid for " + method);
  }
  return spec;
}

std::filesystem::path companion_path(const std::filesystem::path& output, const std::string& suffix) {
  std::filesystem::path out = output;
  out.replace_extension();
  out += suffix;
  return out;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig config;
  CLI::App app{"Spectral graph clustering, abstraction hierarchies and structure-function fits", "specabs"};
  app.add_option("command", config.command, "Command to run")->required()->check(CLI::IsMember(kCommands));
  app.add_option("--input", config.input, "Graph file (.tsv edge list or .csv matrix); coupling CSV for jacobian-graph");
  app.add_option("--output", config.output, "Report path (stdout when omitted)");
  app.add_option("--observed", config.observed, "Observed functional connectivity CSV (fit-fc)");
  app.add_option("--mask", config.mask, "0/1 linearity mask CSV (jacobian-graph)");
  app.add_option("--seed", config.seed, "Random seed");
  app.add_option("--k", config.k, "Number of clusters");
  app.add_option("--p", config.p, "p-Laplacian exponent in (1, 2]");
  app.add_option("--steps", config.continuation_steps, "Continuation steps from p = 2 down to --p");
  app.add_option("--metric", config.metric, "K-means metric")
      ->check(CLI::IsMember({"euclidean", "manhattan", "fractional"}));
  app.add_option("--q", config.q, "Fractional metric exponent in (0, 1)");
  app.add_option("--dims", config.dims, "Embedding dimension (default k - 1)");
  app.add_option("--beta", config.beta, "Spectral decay rate");
  app.add_option("--scale", config.scale, "Global multiplier");
  app.add_option("--offset", config.offset, "Identity coefficient");
  app.add_option("--threshold", config.threshold, "Coupling magnitude cutoff");
  app.add_option("--level", config.levels, "Hierarchy level spec, e.g. k=4,method=recursive-linear")->take_all();
  app.add_option("--laplacian", config.laplacian, "Laplacian kind")
      ->check(CLI::IsMember({"combinatorial", "normalized"}));
  app.add_flag("--dot", config.dot, "Also write quotient graphs as DOT (hierarchy)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::InvalidArgument, e.what());
  }
  if (config.input.empty()) throw Error(ErrorCode::InvalidArgument, "--input is required");
  if (config.command == "fit-fc" && config.observed.empty()) {
    throw Error(ErrorCode::InvalidArgument, "fit-fc requires --observed");
  }
  if (config.command == "jacobian-graph" && config.mask.empty()) {
    throw Error(ErrorCode::InvalidArgument, "jacobian-graph requires --mask");
  }
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<std::filesystem::path> written;
  try {
    Outputs files;
    std::string report = execute(config, files);
    if (config.output.empty()) {
      out << report;
      return 0;
    }
    files.insert(files.begin(), {config.output, std::move(report)});
    for (const auto& [path, content] : files) {
      write_file_atomic(path, content);
      written.push_back(path);
    }
    return 0;
  } catch (const Error& e) {
    for (const auto& path : written) {
      std::error_code ignored;
      std::filesystem::remove(path, ignored);
    }
    err << dump_json(error_to_json(std::string(to_string(e.code())), e.detail()));
    return 1;
  } catch (const std::exception& e) {
    for (const auto& path : written) {
      std::error_code ignored;
      std::filesystem::remove(path, ignored);
    }
    err << dump_json(error_to_json("InternalError", e.what()));
    return 1;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_args(argc, argv, out);
  } catch (const Error& e) {
    err << dump_json(error_to_json(std::string(to_string(e.code())), e.detail()));
    return 2;
  }
  if (!config) return 0;
  return run(*config, out, err);
}

}  // namespace specabs::cli
