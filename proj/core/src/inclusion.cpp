#include "mfd/inclusion.hpp"

#include "mfd/error.hpp"

namespace mfd {

namespace {

void check_nonnegative(const Matrix& m, const char* name) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).sign() < 0) {
        throw Error(ErrorCode::kNegativeEntry, std::string("negative entry in ") + name,
                    {{"matrix", name}, {"entry", {i, j}}, {"value", m(i, j).str()}});
      }
}

}  // namespace

InclusionData InclusionData::transposed() const {
  return InclusionData(dims_.transpose(), jones_.transpose(), BipartiteGraph::from_support(dims_.transpose()));
}

InclusionData validate_inclusion(const Matrix& dims, const std::optional<Matrix>& jones) {
  if (dims.empty()) throw Error(ErrorCode::kEmptyMatrix, "dimension matrix is empty");
  Matrix jones_matrix = jones.value_or(dims);
  if (jones_matrix.rows() != dims.rows() || jones_matrix.cols() != dims.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "D and Delta have different shapes",
                {{"D", {dims.rows(), dims.cols()}}, {"Delta", {jones_matrix.rows(), jones_matrix.cols()}}});
  }
  check_nonnegative(dims, "D");
  check_nonnegative(jones_matrix, "Delta");
  for (std::size_t i = 0; i < dims.rows(); ++i)
    for (std::size_t j = 0; j < dims.cols(); ++j)
      if (dims(i, j).is_zero() != jones_matrix(i, j).is_zero()) {
        throw Error(ErrorCode::kSupportMismatch, "D and Delta have different zero patterns",
                    {{"entry", {i, j}}});
      }

  BipartiteGraph support = BipartiteGraph::from_support(dims);
  if (!support.connected()) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : support.components()) comps.push_back({{"evens", c.evens}, {"odds", c.odds}});
    throw Error(ErrorCode::kDisconnectedSupport, "support graph is disconnected", {{"components", comps}});
  }
  return InclusionData(dims, std::move(jones_matrix), std::move(support));
}

}  // namespace mfd
