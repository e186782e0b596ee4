#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "petzlab/channels.hpp"
#include "petzlab/matrix.hpp"

namespace petzlab {

//=========================================================================
// Channel serialization
//=========================================================================
//
// Text format:
//   {
//     "label": "dephasing(p=0.3)",
//     "dim": 2,
//     "kraus": [ [ [[re, im], [re, im]],
//                  [[re, im], [re, im]] ], ... ]
//   }
// Each Kraus operator is a list of rows, each entry a [re, im] pair.

inline nlohmann::json kraus_map_to_json(const KrausMap &m) {
  nlohmann::json j;
  j["label"] = m.label;
  j["dim"] = m.dim();
  nlohmann::json ops = nlohmann::json::array();
  for (const Cmat &k : m.kraus) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < k.dim(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < k.dim(); ++c)
        row.push_back({k(r, c).real(), k(r, c).imag()});
      rows.push_back(row);
    }
    ops.push_back(rows);
  }
  j["kraus"] = ops;
  return j;
}

inline KrausMap kraus_map_from_json(const nlohmann::json &j) {
  if (!j.contains("dim") || !j.contains("kraus"))
    throw std::invalid_argument("channel json: missing 'dim' or 'kraus'");
  const std::size_t dim = j.at("dim").get<std::size_t>();
  std::vector<Cmat> ops;
  for (const auto &rows : j.at("kraus")) {
    if (rows.size() != dim)
      throw std::invalid_argument("channel json: operator has wrong row count");
    Cmat k(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      if (rows[r].size() != dim)
        throw std::invalid_argument(
            "channel json: operator row has wrong length");
      for (std::size_t c = 0; c < dim; ++c) {
        const auto &pair = rows[r][c];
        if (pair.size() != 2)
          throw std::invalid_argument("channel json: entry is not [re, im]");
        k(r, c) = cplx(pair[0].get<double>(), pair[1].get<double>());
      }
    }
    ops.push_back(k);
  }
  return make_kraus_map(std::move(ops),
                        j.value("label", std::string("unnamed")));
}

inline std::string kraus_map_to_string(const KrausMap &m) {
  return kraus_map_to_json(m).dump(2);
}

inline KrausMap kraus_map_from_string(const std::string &text) {
  return kraus_map_from_json(nlohmann::json::parse(text));
}

inline void write_kraus_map(const std::string &path, const KrausMap &m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << kraus_map_to_string(m) << '\n';
}

inline KrausMap read_kraus_map(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  nlohmann::json j;
  in >> j;
  return kraus_map_from_json(j);
}

}  // namespace petzlab
