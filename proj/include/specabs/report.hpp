#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "specabs/graph.hpp"
#include "specabs/hierarchy.hpp"
#include "specabs/nonlinear.hpp"
#include "specabs/partition.hpp"
#include "specabs/spectral.hpp"
#include "specabs/structfunc.hpp"

namespace specabs {

using Json = nlohmann::ordered_json;

/// Pretty-printed JSON, 2-space indent, arrays of scalars on one line, floats
/// as "%.17g", non-finite floats as the strings "inf", "-inf", "nan". Ends with
/// a newline.
std::string dump_json(const Json& value);

/// {eigenvalues: [...], eigenvectors: [[...], ...]}; eigenvectors[k] is the
/// eigenvector paired with eigenvalues[k].
Json spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const Json& j, LaplacianKind kind = LaplacianKind::Combinatorial);

/// Plot-ready "index,eigenvalue" rows, 1-based index.
std::string scree_csv(const Spectrum& s);

/// {k, assignment, labels}
Json partition_to_json(const Partition& p, const std::vector<std::string>& labels);
Json cut_metrics_to_json(const CutMetrics& m);
/// One record per cluster; an infinite separation is written as "inf".
Json profile_to_json(const ConnectivityProfile& p);

/// {levels: [{k, assignment, quotient_edges, profile, embedding_dim}, ...]}
Json hierarchy_to_json(const Hierarchy& h);
/// Quotient graphs as undirected DOT, one subgraph cluster per level.
std::string hierarchy_to_dot(const Hierarchy& h);

/// {beta, scale, offset, frobenius_error, spectra_similarity}
Json fit_report_to_json(const FcFit& fit, double similarity);

/// {labels, edges, largest_component}
Json jacobian_graph_to_json(const JacobianGraph& jg);

/// {error, detail}
Json error_to_json(const std::string& code, const std::string& detail);

}  // namespace specabs
