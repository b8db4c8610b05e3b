#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace carinfo {

/// Areal counts: events y_i from population (or person-time) n_i, plus
/// optional covariates. The intercept is implicit and not stored.
struct CountData {
  std::vector<std::string> region_ids;
  std::vector<std::int64_t> y;
  std::vector<double> n;
  std::vector<std::string> covariate_names;
  Eigen::MatrixXd covariates;  // regions x covariate_names.size(); may have zero columns

  std::size_t size() const noexcept { return region_ids.size(); }

  /// Throws ValidationError: y_i >= 0, n_i > 0 and finite, unique ids,
  /// consistent lengths and finite covariates.
  void validate() const;

  /// [1 | covariates], one row per region.
  Eigen::MatrixXd design_matrix() const;

  /// Rows listed in `order` (indices into this data set).
  CountData subset(const std::vector<std::size_t>& order) const;
};

/// Builds intercept-only data; validates.
CountData make_count_data(std::vector<std::string> ids, std::vector<std::int64_t> y, std::vector<double> n);

/// Reads `region_id,y,n[,x1,...,xp]`. Errors name the file and line.
CountData load_counts(const std::string& path);

/// Writes the format load_counts reads, floats at 17 significant digits.
void write_counts(const CountData& data, const std::string& path);

}  // namespace carinfo
