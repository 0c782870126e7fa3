#pragma once

// Complex matrices as JSON: rows of entries, each a number or a [re, im] pair.

#include "dsr/lie.hpp"

#include <json.hpp>

#include <map>

namespace dsr {

inline nlohmann::ordered_json matrix_to_json(const Mat& m) {
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real() + 0.0, m(i, j).imag() + 0.0});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  const auto rows = Eigen::Index(j.size());
  if (!j[0].is_array() || j[0].empty()) throw std::invalid_argument("row 0 is not a non-empty array");
  const auto cols = Eigen::Index(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[size_t(i)];
    if (!row.is_array() || Eigen::Index(row.size()) != cols)
      throw std::invalid_argument("row " + std::to_string(i) + " has the wrong length");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& e = row[size_t(k)];
      if (e.is_number()) {
        m(i, k) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, k) = cd(e[0].get<double>(), e[1].get<double>());
      } else {
        throw std::invalid_argument("entry (" + std::to_string(i) + ", " + std::to_string(k) +
                                    ") is neither a number nor [re, im]");
      }
    }
  }
  return m;
}

inline nlohmann::ordered_json mode_family_to_json(const std::map<int, Mat>& modes) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [n, m] : modes) j[std::to_string(n)] = matrix_to_json(m);
  return j;
}

}  // namespace dsr
