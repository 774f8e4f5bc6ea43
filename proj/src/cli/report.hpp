#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace curvkit::cli {

using nlohmann::json;

/// A report is a JSON document {"meta", "summary", "results"} with a
/// parallel numeric table for CSV output.
struct Report {
  json meta = json::object();
  json summary = json::object();
  json results = json::array();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  void write_json(std::ostream& out) const;
  /// Header row then one line per row, shortest round-trip formatting.
  void write_csv(std::ostream& out) const;
};

json to_json(const Eigen::VectorXd& v);
json to_json(const Eigen::MatrixXd& m);
/// Non-finite values become null.
json number(double v);

/// Appends v padded with NaN to `width` entries.
void append_padded(std::vector<double>& row, const Eigen::VectorXd& v, int width);

}  // namespace curvkit::cli
