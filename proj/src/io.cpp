#include "specabs/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "specabs/error.hpp"

namespace specabs {

namespace {

std::string line_tag(std::size_t line) { return "line " + std::to_string(line); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Edge> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  auto node = [&](std::string_view label) {
    auto [it, inserted] = index.emplace(std::string(label), labels.size());
    if (inserted) labels.emplace_back(label);
    return it->second;
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#' || trim(line).empty()) continue;

    const auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw Error(ErrorCode::ParseError, line_tag(line_no) + ": expected 3 tab-separated fields, found " +
                                             std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw Error(ErrorCode::ParseError, line_tag(line_no) + ": empty node label");
    }
    double weight = 0.0;
    if (!parse_double(fields[2], weight)) {
      throw Error(ErrorCode::ParseError, line_tag(line_no) + ": bad weight '" + std::string(fields[2]) + "'");
    }
    if (fields[0] == fields[1]) {
      throw Error(ErrorCode::SelfLoop, line_tag(line_no) + ": '" + std::string(fields[0]) + "' linked to itself");
    }
    if (!(weight > 0.0) || !std::isfinite(weight)) {
      throw Error(ErrorCode::NonpositiveWeight, line_tag(line_no) + ": weight " + std::string(fields[2]));
    }
    const std::size_t a = node(fields[0]);
    const std::size_t b = node(fields[1]);
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) {
      throw Error(ErrorCode::DuplicateEdge, line_tag(line_no) + ": edge " + std::string(fields[0]) + " - " +
                                                std::string(fields[1]) + " listed twice");
    }
    edges.push_back({a, b, weight});
  }
  return graph_from_edges(std::move(labels), std::move(edges));
}

LabeledMatrix read_matrix_csv(std::istream& in) {
  LabeledMatrix out;
  std::vector<std::vector<double>> rows;
  std::string raw;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split(line, ',');
    std::vector<double> values(cells.size());
    bool numeric = true;
    for (std::size_t c = 0; c < cells.size() && numeric; ++c) numeric = parse_double(cells[c], values[c]);
    if (!numeric) {
      if (!first) throw Error(ErrorCode::ParseError, line_tag(line_no) + ": non-numeric cell");
      for (auto cell : cells) out.labels.emplace_back(trim(cell));
    } else {
      rows.push_back(std::move(values));
    }
    first = false;
  }

  const std::size_t n = rows.size();
  if (!out.labels.empty() && out.labels.size() != n) {
    throw Error(ErrorCode::ParseError, "header has " + std::to_string(out.labels.size()) + " labels for " +
                                           std::to_string(n) + " rows");
  }
  out.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                             " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return out;
}

Graph read_matrix_graph(std::istream& in) {
  LabeledMatrix m = read_matrix_csv(in);
  const Eigen::Index n = m.values.rows();
  std::vector<Edge> edges;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(m.values(i, i)) > 1e-12) {
      throw Error(ErrorCode::ParseError, "diagonal entry " + std::to_string(i) + " is nonzero");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(m.values(i, j) - m.values(j, i)) > 1e-12) {
        throw Error(ErrorCode::AsymmetricMatrix, "entries (" + std::to_string(i) + ", " + std::to_string(j) +
                                                     ") and (" + std::to_string(j) + ", " + std::to_string(i) +
                                                     ") differ");
      }
      if (m.values(i, j) < 0.0 || !std::isfinite(m.values(i, j))) {
        throw Error(ErrorCode::NonpositiveWeight,
                    "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") = " + format_number(m.values(i, j)));
      }
      if (j > i && m.values(i, j) > 1e-12) {
        edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), m.values(i, j)});
      }
    }
  }
  auto labels = m.labels.empty() ? index_labels(static_cast<std::size_t>(n)) : std::move(m.labels);
  return graph_from_edges(std::move(labels), std::move(edges));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Graph parse_graph_file(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext != ".tsv" && ext != ".csv") {
    throw Error(ErrorCode::ParseError, "unknown graph format '" + ext + "' (expected .tsv or .csv)");
  }
  std::istringstream in(read_text_file(path));
  return ext == ".tsv" ? read_edge_list(in) : read_matrix_graph(in);
}

Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  return read_matrix_csv(in).values;
}

CouplingSystem read_coupling_system(const std::filesystem::path& couplings, const std::filesystem::path& mask) {
  CouplingSystem system;
  system.couplings = read_matrix_file(couplings);
  const Eigen::MatrixXd flags = read_matrix_file(mask);
  system.linear_mask.resize(flags.rows(), flags.cols());
  for (Eigen::Index i = 0; i < flags.rows(); ++i) {
    for (Eigen::Index j = 0; j < flags.cols(); ++j) {
      if (flags(i, j) != 0.0 && flags(i, j) != 1.0) {
        throw Error(ErrorCode::ParseError, "mask entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                               ") must be 0 or 1");
      }
      system.linear_mask(i, j) = flags(i, j) == 1.0;
    }
  }
  if (system.couplings.rows() != system.linear_mask.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "coupling and mask matrices differ in size");
  }
  return system;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string matrix_to_csv(const Eigen::MatrixXd& m, const std::vector<std::string>& header) {
  std::string out;
  if (!header.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c > 0) out += ',';
      out += header[c];
    }
    out += '\n';
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_number(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string graph_to_edge_list(const Graph& g) {
  std::string out;
  for (const Edge& e : g.edges()) {
    out += g.labels()[e.source] + '\t' + g.labels()[e.target] + '\t' + format_number(e.weight) + '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::IoError, "write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot move output into '" + path.string() + "'");
  }
}

}  // namespace specabs
