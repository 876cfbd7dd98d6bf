#include "specabs/report.hpp"

#include <algorithm>
#include <cmath>

#include "specabs/error.hpp"
#include "specabs/io.hpp"

namespace specabs {

namespace {

Json number(double value) {
  if (std::isfinite(value)) return value;
  return format_number(value);
}

bool is_scalar(const Json& v) { return !v.is_array() && !v.is_object(); }

void write(const Json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, child] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(key).dump() + ": ";
        write(child, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(v.begin(), v.end(), is_scalar);
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i > 0) out += ", ";
          write(v[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ",\n";
        out += inner;
        write(v[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_number(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

Json vector_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(number(v(i)));
  return arr;
}

Json edges_json(const Graph& g) {
  Json arr = Json::array();
  for (const Edge& e : g.edges()) arr.push_back(Json::array({e.source, e.target, number(e.weight)}));
  return arr;
}

}  // namespace

std::string dump_json(const Json& value) {
  std::string out;
  write(value, out, 0);
  out += '\n';
  return out;
}

Json spectrum_to_json(const Spectrum& s) {
  Json vectors = Json::array();
  for (Eigen::Index k = 0; k < s.eigenvectors.cols(); ++k) vectors.push_back(vector_json(s.eigenvectors.col(k)));
  Json j;
  j["eigenvalues"] = vector_json(s.eigenvalues);
  j["eigenvectors"] = std::move(vectors);
  return j;
}

Spectrum spectrum_from_json(const Json& j, LaplacianKind kind) {
  try {
    const auto values = j.at("eigenvalues").get<std::vector<double>>();
    const auto vectors = j.at("eigenvectors").get<std::vector<std::vector<double>>>();
    if (vectors.size() != values.size()) {
      throw Error(ErrorCode::ParseError, "eigenvalue and eigenvector counts differ");
    }
    const auto m = static_cast<Eigen::Index>(values.size());
    const auto n = m > 0 ? static_cast<Eigen::Index>(vectors.front().size()) : 0;
    Spectrum s;
    s.source_kind = kind;
    s.eigenvalues = Eigen::Map<const Eigen::VectorXd>(values.data(), m);
    s.eigenvectors.resize(n, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto& col = vectors[static_cast<std::size_t>(k)];
      if (static_cast<Eigen::Index>(col.size()) != n) throw Error(ErrorCode::ParseError, "ragged eigenvector list");
      s.eigenvectors.col(k) = Eigen::Map<const Eigen::VectorXd>(col.data(), n);
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string scree_csv(const Spectrum& s) {
  std::string out = "index,eigenvalue\n";
  for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
    out += std::to_string(k + 1) + "," + format_number(s.eigenvalues(k)) + "\n";
  }
  return out;
}

Json partition_to_json(const Partition& p, const std::vector<std::string>& labels) {
  Json j;
  j["k"] = p.cluster_count();
  j["assignment"] = Json(std::vector<std::size_t>(p.assignment().begin(), p.assignment().end()));
  j["labels"] = labels;
  return j;
}

Json cut_metrics_to_json(const CutMetrics& m) {
  Json j;
  j["cut_weight"] = number(m.cut_weight);
  j["ratio_cut"] = number(m.ratio_cut);
  j["normalized_cut"] = number(m.normalized_cut);
  j["cheeger"] = number(m.cheeger);
  return j;
}

Json profile_to_json(const ConnectivityProfile& p) {
  Json arr = Json::array();
  for (std::size_t c = 0; c < p.clusters.size(); ++c) {
    const ClusterProfile& rec = p.clusters[c];
    Json j;
    j["cluster"] = c;
    j["size"] = rec.size;
    j["internal_weight"] = number(rec.internal_weight);
    j["external_weight"] = number(rec.external_weight);
    j["internal_density"] = number(rec.internal_density);
    j["separation"] = number(rec.separation);
    arr.push_back(std::move(j));
  }
  return arr;
}

Json hierarchy_to_json(const Hierarchy& h) {
  Json levels = Json::array();
  for (const HierarchyLevel& level : h.levels) {
    Json j;
    j["k"] = level.partition.cluster_count();
    j["assignment"] = Json(std::vector<std::size_t>(level.partition.assignment().begin(),
                                                    level.partition.assignment().end()));
    j["quotient_edges"] = edges_json(level.quotient);
    j["profile"] = profile_to_json(level.profile);
    j["embedding_dim"] = level.embedding_dim;
    levels.push_back(std::move(j));
  }
  Json j;
  j["levels"] = std::move(levels);
  return j;
}

std::string hierarchy_to_dot(const Hierarchy& h) {
  std::string out = "graph hierarchy {\n";
  for (const HierarchyLevel& level : h.levels) {
    const std::string prefix = "L" + std::to_string(level.level_index) + "_";
    out += "  subgraph cluster_level" + std::to_string(level.level_index) + " {\n";
    out += "    label=\"level " + std::to_string(level.level_index) + "\";\n";
    for (const auto& label : level.quotient.labels()) out += "    " + prefix + label + ";\n";
    for (const Edge& e : level.quotient.edges()) {
      out += "    " + prefix + level.quotient.labels()[e.source] + " -- " + prefix + level.quotient.labels()[e.target] +
             " [weight=" + format_number(e.weight) + "];\n";
    }
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

Json fit_report_to_json(const FcFit& fit, double similarity) {
  Json j;
  j["beta"] = number(fit.model.beta);
  j["scale"] = number(fit.model.scale);
  j["offset"] = number(fit.model.offset);
  j["frobenius_error"] = number(fit.frobenius_error);
  j["spectra_similarity"] = number(similarity);
  return j;
}

Json jacobian_graph_to_json(const JacobianGraph& jg) {
  Json j;
  j["labels"] = jg.graph.labels();
  j["edges"] = edges_json(jg.graph);
  j["largest_component"] = jg.largest_component;
  return j;
}

Json error_to_json(const std::string& code, const std::string& detail) {
  Json j;
  j["error"] = code;
  j["detail"] = detail;
  return j;
}

}  // namespace specabs
