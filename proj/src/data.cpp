#include "carinfo/data.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "carinfo/csv.hpp"
#include "carinfo/error.hpp"

namespace carinfo {
namespace {

std::string where(const std::string& path, std::size_t line) { return path + ":" + std::to_string(line); }

double parse_double(const std::string& text, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(context + ": not a number: '" + text + "'");
  }
}

std::int64_t parse_count(const std::string& text, const std::string& context) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc() && ptr == text.data() + text.size()) return v;
  // Accept integral values written as floats, e.g. "12.0".
  const double d = parse_double(text, context);
  if (std::floor(d) != d || std::fabs(d) > 9e15) throw ValidationError(context + ": count must be an integer: '" + text + "'");
  return static_cast<std::int64_t>(d);
}

}  // namespace

void CountData::validate() const {
  const std::size_t count = region_ids.size();
  if (count == 0) throw ValidationError("count data has no regions");
  if (y.size() != count || n.size() != count) {
    throw ValidationError("count data columns have inconsistent lengths");
  }
  if (covariates.cols() != static_cast<Eigen::Index>(covariate_names.size()) ||
      (covariates.cols() > 0 && covariates.rows() != static_cast<Eigen::Index>(count))) {
    throw ValidationError("covariate matrix shape does not match regions x covariate names");
  }
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& id = region_ids[i];
    if (!seen.insert(id).second) throw ValidationError("duplicate region id '" + id + "'");
    if (y[i] < 0) throw ValidationError("region '" + id + "': negative count y=" + std::to_string(y[i]));
    if (!(std::isfinite(n[i]) && n[i] > 0.0)) {
      throw ValidationError("region '" + id + "': population must be positive, got n=" + std::to_string(n[i]));
    }
  }
  if (covariates.size() > 0 && !covariates.allFinite()) throw ValidationError("covariates contain non-finite values");
}

Eigen::MatrixXd CountData::design_matrix() const {
  const auto rows = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd x(rows, covariates.cols() + 1);
  x.col(0).setOnes();
  if (covariates.cols() > 0) x.rightCols(covariates.cols()) = covariates;
  return x;
}

CountData CountData::subset(const std::vector<std::size_t>& order) const {
  CountData out;
  out.covariate_names = covariate_names;
  out.covariates.resize(static_cast<Eigen::Index>(order.size()), covariates.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    out.region_ids.push_back(region_ids.at(i));
    out.y.push_back(y.at(i));
    out.n.push_back(n.at(i));
    if (covariates.cols() > 0) {
      out.covariates.row(static_cast<Eigen::Index>(k)) = covariates.row(static_cast<Eigen::Index>(i));
    }
  }
  return out;
}

CountData make_count_data(std::vector<std::string> ids, std::vector<std::int64_t> y, std::vector<double> n) {
  CountData data;
  data.region_ids = std::move(ids);
  data.y = std::move(y);
  data.n = std::move(n);
  data.covariates.resize(static_cast<Eigen::Index>(data.region_ids.size()), 0);
  data.validate();
  return data;
}

CountData load_counts(const std::string& path) {
  const csv::Table table = csv::read_file(path);
  const std::size_t c_id = table.column("region_id", path);
  const std::size_t c_y = table.column("y", path);
  const std::size_t c_n = table.column("n", path);
  if (c_id != 0 || c_y != 1 || c_n != 2) {
    throw ValidationError(path + ": header must start with region_id,y,n");
  }
  CountData data;
  for (std::size_t c = 3; c < table.header.size(); ++c) data.covariate_names.push_back(table.header[c]);
  const auto p = static_cast<Eigen::Index>(data.covariate_names.size());
  data.covariates.resize(static_cast<Eigen::Index>(table.rows.size()), p);

  std::unordered_set<std::string> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string ctx = where(path, row.line);
    const auto& id = row.fields[c_id];
    if (id.empty()) throw ValidationError(ctx + ": empty region_id");
    if (!seen.insert(id).second) throw ValidationError(ctx + ": duplicate region id '" + id + "'");
    const std::int64_t y = parse_count(row.fields[c_y], ctx);
    const double n = parse_double(row.fields[c_n], ctx);
    if (y < 0) throw ValidationError(ctx + ": negative count y=" + row.fields[c_y]);
    if (!(std::isfinite(n) && n > 0.0)) throw ValidationError(ctx + ": population n must be positive, got " + row.fields[c_n]);
    data.region_ids.push_back(id);
    data.y.push_back(y);
    data.n.push_back(n);
    for (Eigen::Index k = 0; k < p; ++k) {
      data.covariates(static_cast<Eigen::Index>(r), k) = parse_double(row.fields[3 + static_cast<std::size_t>(k)], ctx);
    }
  }
  if (data.region_ids.empty()) throw ValidationError(path + ": no data rows");
  data.validate();
  return data;
}

void write_counts(const CountData& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path + ": cannot open for writing");
  out << "region_id,y,n";
  for (const auto& name : data.covariate_names) out << ',' << csv::escape(name);
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << csv::escape(data.region_ids[i]) << ',' << data.y[i] << ',' << csv::format_double(data.n[i]);
    for (Eigen::Index k = 0; k < data.covariates.cols(); ++k) {
      out << ',' << csv::format_double(data.covariates(static_cast<Eigen::Index>(i), k));
    }
    out << '\n';
  }
}

}  // namespace carinfo
