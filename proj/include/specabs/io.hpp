#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specabs/graph.hpp"
#include "specabs/nonlinear.hpp"

namespace specabs {

/// TSV edge list: `<src>\t<dst>\t<weight>` per line, `#` comments and blank
/// lines skipped, labels numbered in order of first appearance. Errors carry
/// the 1-based line number: ParseError, SelfLoop, NonpositiveWeight,
/// DuplicateEdge.
Graph read_edge_list(std::istream& in);

struct LabeledMatrix {
  std::vector<std::string> labels;  // empty when the file has no header row
  Eigen::MatrixXd values;
};

/// Square CSV matrix with an optional header row of labels. A first row with
/// any non-numeric cell is taken as the header. Errors: ParseError.
LabeledMatrix read_matrix_csv(std::istream& in);

/// CSV adjacency matrix as a graph. Must be symmetric within 1e-12
/// (AsymmetricMatrix), with zero diagonal (ParseError) and nonnegative entries
/// (NonpositiveWeight). Headerless files get labels "0", "1", ...
Graph read_matrix_graph(std::istream& in);

/// Dispatches on extension: .tsv edge list, .csv matrix. Errors: IoError,
/// ParseError, and the reader errors above.
Graph parse_graph_file(const std::filesystem::path& path);

/// Square CSV matrix (nonzero diagonal allowed).
Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path);

/// Coupling matrix plus 0/1 linearity mask, both CSV. Errors: ParseError,
/// DimensionMismatch.
CouplingSystem read_coupling_system(const std::filesystem::path& couplings, const std::filesystem::path& mask);

/// "%.17g": enough digits to round-trip any double, identical on every run.
/// Non-finite values print as "inf", "-inf" or "nan".
std::string format_number(double value);

std::string matrix_to_csv(const Eigen::MatrixXd& m, const std::vector<std::string>& header = {});
std::string graph_to_edge_list(const Graph& g);

std::string read_text_file(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never observe partial output.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace specabs
