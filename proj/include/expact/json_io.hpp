// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_JSON_IO_HPP_
#define EXPACT_JSON_IO_HPP_

#include <nlohmann/json.hpp>

#include "expact/cf_approx.hpp"
#include "expact/toeplitz.hpp"

namespace expact {

/// CfRational <-> JSON {nu, omega0:[re,im], residues:[[re,im]...],
/// poles:[[re,im]...]}.
inline nlohmann::json cf_to_json(const CfRational& r) {
  nlohmann::json j;
  j["nu"] = r.nu;
  j["omega0"] = {r.omega0.real(), r.omega0.imag()};
  for (const cd& w : r.residues)
    j["residues"].push_back({w.real(), w.imag()});
  for (const cd& t : r.poles) j["poles"].push_back({t.real(), t.imag()});
  return j;
}

inline CfRational cf_from_json(const nlohmann::json& j) {
  CfRational r;
  r.nu = j.at("nu").get<int>();
  const auto& o = j.at("omega0");
  r.omega0 = cd(o.at(0).get<double>(), o.at(1).get<double>());
  for (const auto& w : j.at("residues"))
    r.residues.emplace_back(w.at(0).get<double>(), w.at(1).get<double>());
  for (const auto& t : j.at("poles"))
    r.poles.emplace_back(t.at(0).get<double>(), t.at(1).get<double>());
  validate_cf(r);
  return r;
}

/// ToeplitzOperator <-> JSON {first_col, first_row}.
inline nlohmann::json toeplitz_to_json(const ToeplitzOperator& T) {
  nlohmann::json j;
  for (int i = 0; i < T.dim(); ++i) {
    j["first_col"].push_back(T.first_col()(i));
    j["first_row"].push_back(T.first_row()(i));
  }
  return j;
}

inline ToeplitzOperator toeplitz_from_json(const nlohmann::json& j) {
  const auto& c = j.at("first_col");
  const auto& r = j.at("first_row");
  Eigen::VectorXd col(c.size()), row(r.size());
  for (size_t i = 0; i < c.size(); ++i) col(static_cast<int>(i)) = c.at(i);
  for (size_t i = 0; i < r.size(); ++i) row(static_cast<int>(i)) = r.at(i);
  return ToeplitzOperator(col, row);
}

}  // namespace expact

#endif  // EXPACT_JSON_IO_HPP_
