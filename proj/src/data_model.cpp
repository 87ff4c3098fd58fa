#include "duo/data_model.hpp"

#include "duo/error.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

namespace duo {

namespace {

bool column_centered(const Eigen::Ref<const Eigen::VectorXd>& col) {
  double mean = col.mean();
  double var = (col.array() - mean).square().sum() / static_cast<double>(col.size());
  double sd = std::sqrt(var);
  if (sd == 0.0) return std::abs(mean) <= 1e-12;
  return std::abs(mean) <= 1e-10 * sd;
}

}  // namespace

bool is_centered(const Eigen::MatrixXd& values) {
  for (Index j = 0; j < values.cols(); ++j)
    if (!column_centered(values.col(j))) return false;
  return true;
}

DataMatrix::DataMatrix(Eigen::MatrixXd values, std::string label, bool centered)
    : values_(std::move(values)), label_(std::move(label)), centered_(centered) {
  if (values_.rows() < 2 || values_.cols() < 1)
    throw ShapeError("data matrix needs at least 2 rows and 1 column, got " +
                     std::to_string(values_.rows()) + "x" + std::to_string(values_.cols()));
  if (!values_.allFinite()) throw DomainError("data matrix contains non-finite entries");
  if (centered_ && !is_centered(values_))
    throw DomainError("data matrix flagged centered but column means are not zero");
}

DataMatrix center_columns(const DataMatrix& d) {
  Eigen::MatrixXd v = d.values();
  for (Index j = 0; j < v.cols(); ++j) {
    auto col = v.col(j);
    if ((col.array() == col(0)).all()) {
      col.setZero();
      continue;
    }
    // second pass removes the rounding residue of the first
    col.array() -= col.mean();
    col.array() -= col.mean();
  }
  return DataMatrix(std::move(v), d.label(), true);
}

LabeledPartition::LabeledPartition(std::vector<int> assignments, int k)
    : assignments_(std::move(assignments)), k_(k) {
  if (k_ < 1) throw InvalidK("partition needs k >= 1");
  std::vector<char> seen(static_cast<std::size_t>(k_), 0);
  for (int a : assignments_) {
    if (a < 0 || a >= k_)
      throw DomainError("cluster id " + std::to_string(a) + " outside [0, " + std::to_string(k_) +
                        ")");
    seen[static_cast<std::size_t>(a)] = 1;
  }
  for (char s : seen)
    if (!s) throw DomainError("partition has an empty cluster");
}

LabeledPartition LabeledPartition::from_labels(const std::vector<int>& raw) {
  std::unordered_map<int, int> ids;
  std::vector<int> out;
  out.reserve(raw.size());
  for (int r : raw) {
    auto [it, inserted] = ids.try_emplace(r, static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  int k = static_cast<int>(ids.size());
  return LabeledPartition(std::move(out), k);
}

}  // namespace duo
