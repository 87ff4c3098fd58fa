#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <vector>

namespace duo {

using Index = Eigen::Index;

// Rows are samples, columns are features. Immutable once built.
class DataMatrix {
 public:
  explicit DataMatrix(Eigen::MatrixXd values, std::string label = {}, bool centered = false);

  Index n() const { return values_.rows(); }
  Index p() const { return values_.cols(); }
  const Eigen::MatrixXd& values() const { return values_; }
  bool centered() const { return centered_; }
  const std::string& label() const { return label_; }

 private:
  Eigen::MatrixXd values_;
  std::string label_;
  bool centered_ = false;
};

// Cluster ids in [0, k), every cluster nonempty.
class LabeledPartition {
 public:
  LabeledPartition(std::vector<int> assignments, int k);

  // Relabels arbitrary integer ids to 0..k-1 in order of first appearance.
  static LabeledPartition from_labels(const std::vector<int>& raw);

  Index n() const { return static_cast<Index>(assignments_.size()); }
  int k() const { return k_; }
  const std::vector<int>& assignments() const { return assignments_; }
  int operator[](Index i) const { return assignments_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<int> assignments_;
  int k_;
};

DataMatrix center_columns(const DataMatrix& d);

// True when every column mean is within the centering tolerance.
bool is_centered(const Eigen::MatrixXd& values);

DataMatrix load_csv(const std::filesystem::path& path, bool has_header);
void save_csv(const std::filesystem::path& path, const Eigen::MatrixXd& values,
              const std::vector<std::string>& header = {});
inline void save_csv(const std::filesystem::path& path, const DataMatrix& d,
                     const std::vector<std::string>& header = {}) {
  save_csv(path, d.values(), header);
}

std::vector<int> load_labels(const std::filesystem::path& path, bool has_header = true);
void save_labels(const std::filesystem::path& path, const std::vector<int>& labels);

// Shortest round-trip-safe text (17 significant digits), independent of locale.
std::string format_double(double v);

}  // namespace duo
