#include "mfd_cli/input_file.hpp"

#include "mfd/error.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace mfd::cli {

using nlohmann::json;

namespace {

class Reader {
 public:
  Reader(std::string_view text, NumberMode mode) : text_(text), mode_(mode) {}

  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    json location{{"field", field}};
    if (auto line = key_line(field)) location["line"] = *line;
    throw ParseError(field + ": " + message, location);
  }

  Scalar scalar(const json& node, const std::string& field) const {
    try {
      if (node.is_number_integer() || node.is_number_unsigned()) return parse_scalar(node.dump(), mode_);
      if (node.is_number_float()) return parse_scalar(node.dump(), mode_);
      if (node.is_string()) return parse_scalar(node.get<std::string>(), mode_);
      if (node.is_array() && node.size() == 2 && node[0].is_number_integer() && node[1].is_number_integer()) {
        if (node[1].get<long long>() == 0) fail(field, "zero denominator");
        return parse_scalar(node[0].dump() + "/" + node[1].dump(), mode_);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      fail(field, std::string("not a number (") + e.what() + ")");
    }
    fail(field, "expected a number, a \"p/q\" or decimal string, or a [p, q] pair");
  }

  Vector vector(const json& node, const std::string& field) const {
    if (!node.is_array() || node.empty()) fail(field, "expected a non-empty array");
    Vector out;
    for (std::size_t k = 0; k < node.size(); ++k) out.push_back(scalar(node[k], field + "[" + std::to_string(k) + "]"));
    return out;
  }

  PartialMatrix partial(const json& node, const std::string& field, bool allow_null) const {
    if (!node.is_array() || node.empty()) fail(field, "expected a non-empty array of rows");
    const std::size_t rows = node.size();
    std::size_t cols = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (!node[i].is_array() || node[i].empty()) fail(row_field(field, i), "expected a non-empty row");
      if (i == 0) cols = node[0].size();
      if (node[i].size() != cols) fail(row_field(field, i), "row length differs from the first row");
    }
    PartialMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        const std::string where = row_field(field, i) + "[" + std::to_string(j) + "]";
        if (node[i][j].is_null()) {
          if (!allow_null) fail(where, "null is only allowed in delta");
          continue;
        }
        out.set(i, j, scalar(node[i][j], where));
      }
    return out;
  }

  Matrix matrix(const json& node, const std::string& field) const {
    return partial(node, field, false).to_total();
  }

 private:
  static std::string row_field(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

  std::optional<std::size_t> key_line(const std::string& field) const {
    const std::string key = "\"" + field.substr(0, field.find('[')) + "\"";
    for (std::size_t pos = text_.find(key); pos != std::string_view::npos; pos = text_.find(key, pos + 1)) {
      std::size_t after = text_.find_first_not_of(" \t\r\n", pos + key.size());
      if (after != std::string_view::npos && text_[after] == ':') {
        std::size_t line = 1;
        for (std::size_t k = 0; k < pos; ++k) line += text_[k] == '\n' ? 1 : 0;
        return line;
      }
    }
    return std::nullopt;
  }

  std::string_view text_;
  NumberMode mode_;
};

json syntax_location(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {{"line", line}, {"column", column}};
}

}  // namespace

json ParseError::to_json() const {
  return {{"error", "ParseError"}, {"message", what()}, {"payload", location_}};
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k, h >>= 4) out[static_cast<std::size_t>(k)] = digits[h & 0xf];
  return out;
}

InputFile parse_input(std::string_view text, std::string source, std::optional<NumberMode> mode_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), syntax_location(text, e.byte));
  }

  Reader probe(text, NumberMode::kRational);
  if (!doc.is_object()) probe.fail("$", "top level must be an object");

  InputFile input;
  input.source = std::move(source);
  input.digest = fnv1a_hex(text);

  if (doc.contains("number_mode")) {
    const json& m = doc["number_mode"];
    if (!m.is_string() || (m != "rational" && m != "float")) probe.fail("number_mode", "expected \"rational\" or \"float\"");
    input.mode = m == "float" ? NumberMode::kFloat : NumberMode::kRational;
  }
  if (mode_override) input.mode = *mode_override;
  Reader r(text, input.mode);

  if (doc.contains("tolerance")) {
    Scalar t = r.scalar(doc["tolerance"], "tolerance");
    if (t.sign() <= 0) r.fail("tolerance", "must be positive");
    input.tolerance = t.to_double();
  }

  if (doc.contains("Lambda")) input.lambda = r.matrix(doc["Lambda"], "Lambda");
  if (doc.contains("m0")) input.m0 = r.vector(doc["m0"], "m0");
  if (doc.contains("D")) {
    input.dims = r.matrix(doc["D"], "D");
  } else if (input.lambda) {
    input.dims = *input.lambda;
  } else {
    r.fail("D", "missing (required unless Lambda is given)");
  }

  for (const char* key : {"a", "b"}) {
    if (!doc.contains(key)) continue;
    const json& v = doc[key];
    const std::size_t expected = std::string(key) == "a" ? input.dims.rows() : input.dims.cols();
    if (!v.is_number_integer() || v.get<long long>() < 0) r.fail(key, "expected a nonnegative integer");
    if (v.get<std::size_t>() != expected) r.fail(key, "does not match the shape of D");
  }

  if (doc.contains("Delta")) input.jones = r.matrix(doc["Delta"], "Delta");
  if (doc.contains("delta")) input.delta = r.partial(doc["delta"], "delta", true);
  if (doc.contains("trace_A")) input.trace_a = r.vector(doc["trace_A"], "trace_A");
  if (doc.contains("trace_B")) input.trace_b = r.vector(doc["trace_B"], "trace_B");

  try {
    input.validated = validate_inclusion(input.dims, input.jones);
  } catch (const Error& e) {
    json location{{"field", "D"}, {"cause", e.to_json()}};
    throw ParseError(std::string("invalid inclusion: ") + e.what(), location);
  }
  if (input.delta && (input.delta->rows() != input.dims.rows() || input.delta->cols() != input.dims.cols()))
    r.fail("delta", "shape differs from D");
  if (input.trace_a && input.trace_a->size() != input.dims.rows()) r.fail("trace_A", "length differs from the row count of D");
  if (input.trace_b && input.trace_b->size() != input.dims.cols()) r.fail("trace_B", "length differs from the column count of D");
  if (input.m0 && input.lambda && input.m0->size() != input.lambda->rows()) r.fail("m0", "length differs from the row count of Lambda");
  return input;
}

InputFile load_input(const std::string& path, std::optional<NumberMode> mode_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path, {{"field", "--input"}, {"path", path}});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_input(buffer.str(), path, mode_override);
}

}  // namespace mfd::cli
