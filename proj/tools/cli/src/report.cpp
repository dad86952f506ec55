#include "mfd_cli/report.hpp"

#include <algorithm>
#include <sstream>

namespace mfd::cli {

using nlohmann::json;

json to_json(const Scalar& x) { return x.str(); }

json to_json(const Vector& v) {
  json out = json::array();
  for (const Scalar& x : v) out.push_back(x.str());
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

json to_json(const PartialMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.has(i, j) ? json(m.value(i, j).str()) : json(nullptr));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(Scalar(x).str());
  return out;
}

json to_json(const BipartiteCycle& cycle) {
  return {{"evens", cycle.evens}, {"odds", cycle.odds}, {"length", cycle.length()}};
}

Vector vector_from_json(const json& node, NumberMode mode) {
  Vector out;
  for (const auto& x : node) out.push_back(parse_scalar(x.get<std::string>(), mode));
  return out;
}

Matrix matrix_from_json(const json& node, NumberMode mode) {
  std::vector<Vector> rows;
  for (const auto& row : node) rows.push_back(vector_from_json(row, mode));
  return Matrix::from_rows(rows);
}

json Report::to_json() const {
  json out{{"command", command},    {"input", input},           {"flags", flags},
           {"result", result},      {"diagnostics", diagnostics}, {"status", error ? "error" : "ok"},
           {"exit_code", exit_code}};
  if (error) out["error"] = *error;
  return out;
}

namespace {

bool is_leaf(const json& node) { return !node.is_object() && !node.is_array(); }

std::string leaf_text(const json& node) {
  if (node.is_string()) return node.get<std::string>();
  if (node.is_null()) return "-";
  return node.dump();
}

bool is_flat_array(const json& node) {
  return node.is_array() && std::all_of(node.begin(), node.end(), [](const json& x) { return is_leaf(x); });
}

bool is_matrix(const json& node) {
  if (!node.is_array() || node.empty()) return false;
  for (const auto& row : node)
    if (!is_flat_array(row) || row.empty() || row.size() != node.front().size()) return false;
  return true;
}

void render_matrix(std::ostringstream& out, const json& node, const std::string& pad) {
  std::vector<std::size_t> width(node.front().size(), 0);
  for (const auto& row : node)
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], leaf_text(row[j]).size());
  for (const auto& row : node) {
    out << pad << "[";
    for (std::size_t j = 0; j < row.size(); ++j) {
      const std::string text = leaf_text(row[j]);
      out << "  " << std::string(width[j] - text.size(), ' ') << text;
    }
    out << "  ]\n";
  }
}

void render_node(std::ostringstream& out, const json& node, const std::string& label, std::size_t depth) {
  const std::string pad(2 * depth, ' ');
  if (is_leaf(node)) {
    out << pad << label << ": " << leaf_text(node) << "\n";
  } else if (is_matrix(node)) {
    out << pad << label << ":\n";
    render_matrix(out, node, pad + "  ");
  } else if (is_flat_array(node)) {
    out << pad << label << ": (";
    for (std::size_t k = 0; k < node.size(); ++k) out << (k ? ", " : "") << leaf_text(node[k]);
    out << ")\n";
  } else if (node.is_array()) {
    out << pad << label << ":\n";
    for (std::size_t k = 0; k < node.size(); ++k) render_node(out, node[k], "[" + std::to_string(k) + "]", depth + 1);
  } else {
    out << pad << label << ":\n";
    for (const auto& [key, value] : node.items()) render_node(out, value, key, depth + 1);
  }
}

}  // namespace

std::string render_table(const json& node) {
  std::ostringstream out;
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) render_node(out, value, key, 0);
  } else {
    render_node(out, node, "value", 0);
  }
  return out.str();
}

std::string render(const Report& report, OutputFormat format) {
  if (format == OutputFormat::kJson) return report.to_json().dump(2) + "\n";
  std::ostringstream out;
  out << "command: " << report.command << "\n";
  if (report.input.contains("source")) out << "input: " << report.input["source"].get<std::string>() << "\n";
  if (report.input.contains("digest")) out << "digest: " << report.input["digest"].get<std::string>() << "\n";
  out << "status: " << (report.error ? "error" : "ok") << "\n";
  if (report.error) out << "\nerror:\n" << render_table(*report.error);
  if (!report.result.empty()) out << "\nresult:\n" << render_table(report.result);
  if (!report.diagnostics.empty()) out << "\ndiagnostics:\n" << render_table(report.diagnostics);
  return out.str();
}

}  // namespace mfd::cli
