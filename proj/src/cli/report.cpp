#include "report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <ostream>

namespace curvkit::cli {

void Report::add_row(std::vector<double> row) { rows.push_back(std::move(row)); }

void Report::write_json(std::ostream& out) const {
  json doc = json::object();
  doc["meta"] = meta;
  doc["summary"] = summary;
  doc["results"] = results;
  out << doc.dump(2) << '\n';
}

void Report::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt::format("{:.17g}", row[i]);
    out << '\n';
  }
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

json to_json(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(Eigen::VectorXd(m.row(i).transpose())));
  return a;
}

void append_padded(std::vector<double>& row, const Eigen::VectorXd& v, int width) {
  for (int i = 0; i < width; ++i) row.push_back(i < v.size() ? v[i] : std::numeric_limits<double>::quiet_NaN());
}

}  // namespace curvkit::cli
