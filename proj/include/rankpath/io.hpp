#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rankpath/partition.hpp"
#include "rankpath/qpoly.hpp"
#include "rankpath/rank_raising.hpp"
#include "rankpath/series.hpp"
#include "rankpath/word.hpp"

namespace rankpath {

using Json = nlohmann::json;

inline Json to_json(const Partition& p) { return Json(p.parts()); }

inline Partition partition_from_json(const Json& j) {
  if (!j.is_array())
    throw std::invalid_argument("io: a partition is an array of parts");
  std::vector<int> parts;
  for (const Json& item : j) {
    if (!item.is_number_integer())
      throw std::invalid_argument("io: partition parts must be integers");
    parts.push_back(item.get<int>());
  }
  return Partition(std::move(parts));
}

inline Json to_json(const BoxedPartition& bp) {
  return Json{{"parts", bp.partition.parts()}, {"m", bp.m}, {"n", bp.n}};
}

inline BoxedPartition boxed_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("parts") || !j.contains("m") ||
      !j.contains("n"))
    throw std::invalid_argument(
        "io: a boxed partition is an object with parts, m, and n");
  return BoxedPartition(partition_from_json(j.at("parts")),
                        j.at("m").get<int>(), j.at("n").get<int>());
}

// Coefficients are serialized as decimal strings so arbitrarily large values
// survive the round trip.
inline Json to_json(const QPoly& p) {
  Json out = Json::object();
  for (int j = 0; j <= p.degree(); ++j)
    if (p.coeff(j) != 0)
      out["q^" + std::to_string(j)] = p.coeff(j).str();
  return out;
}

inline Json to_json(const QTPoly& p) {
  Json out = Json::object();
  for (const auto& [t, q] : p.terms()) out["t^" + std::to_string(t)] = to_json(q);
  return out;
}

inline Json to_json(const TruncatedSeries& s) {
  Json terms = Json::array();
  for (const auto& [exps, coeff] : s.terms()) {
    std::ostringstream os;
    os << coeff;
    terms.push_back(Json{{"exps", exps}, {"coeff", os.str()}});
  }
  return Json{{"vars", s.variables()},
              {"truncation", s.order()},
              {"terms", std::move(terms)}};
}

inline Json to_json(const TrajectoryState& s) {
  Json out{{"parts", s.partition.parts()},
           {"d", s.d},
           {"dr", s.dr},
           {"area", s.area}};
  out["tau"] = s.tau ? Json(*s.tau) : Json(nullptr);
  out["index"] = s.index ? Json(*s.index) : Json(nullptr);
  return out;
}

// Statistics annotation blocks attached to map outputs.
inline Json stats_json(const Partition& p) {
  Durfee du = durfee(p);
  return Json{{"area", p.area()},
              {"d", du.d},
              {"dr", du.dr},
              {"ranks", ranks(p)}};
}

inline Json stats_json(const StepWord& w) {
  PathProfile pr = profile(w);
  std::vector<int> valley_heights;
  for (const auto& [x, h] : pr.valleys) valley_heights.push_back(h);
  return Json{{"ups", count_ups(w)},      {"downs", count_downs(w)},
              {"des", pr.des},            {"maj", pr.maj},
              {"hdes", pr.hdes},          {"hmaj", pr.hmaj},
              {"min_height", pr.min_height},
              {"valley_heights", std::move(valley_heights)}};
}

template <typename T>
inline std::string render(const T& value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

}  // namespace rankpath
