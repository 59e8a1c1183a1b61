#include "sppe/json_io.hpp"

#include <fstream>
#include <limits>

#include "sppe/error.hpp"

namespace sppe::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

std::size_t size_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    parse_error(std::string("field \"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

RatVector rat_array(const Json& v, const std::string& what) {
  if (!v.is_array()) parse_error(what + " must be an array");
  RatVector out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(rat_from_json(e));
  return out;
}

RatMatrix rat_matrix(const Json& v, const std::string& what) {
  if (!v.is_array()) parse_error(what + " must be an array of arrays");
  RatMatrix out;
  out.reserve(v.size());
  for (const auto& row : v) out.push_back(rat_array(row, what + " row"));
  return out;
}

Json vector_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(rat_to_json(e));
  return out;
}

Json matrix_json(const RatMatrix& mat) {
  Json out = Json::array();
  for (const auto& row : mat) out.push_back(vector_json(row));
  return out;
}

Json count_json(const mpz_class& v) {
  if (v.fits_ulong_p()) return Json(static_cast<std::uint64_t>(v.get_ui()));
  return Json(v.get_str());
}

Json check_json(const ConditionCheck& c) {
  Json out = Json::object();
  out["holds"] = c.holds;
  if (c.buyer) out["buyer"] = *c.buyer + 1;
  if (c.good) out["good"] = *c.good + 1;
  if (!c.holds) out["detail"] = c.detail;
  return out;
}

}  // namespace

Rat rat_from_json(const Json& value) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return Rat(mpz_class(std::to_string(value.get<std::uint64_t>())));
    return Rat(mpz_class(std::to_string(value.get<std::int64_t>())));
  }
  if (value.is_string()) return parse_rat(value.get<std::string>());
  parse_error("rational must be an integer, a decimal string or a \"p/q\" string, got " + value.dump());
}

Json rat_to_json(const Rat& value) { return Json(to_string(value)); }

RawInstance raw_instance_from_json(const Json& doc) {
  RawInstance raw;
  raw.n = size_field(doc, "n");
  raw.m = size_field(doc, "m");
  raw.valuations = rat_matrix(field(doc, "valuations"), "valuations");
  raw.budgets = rat_array(field(doc, "budgets"), "budgets");
  return raw;
}

Instance instance_from_json(const Json& doc) { return validate_instance(raw_instance_from_json(doc)); }

Json instance_to_json(const Instance& inst) {
  Json out = Json::object();
  out["n"] = inst.n;
  out["m"] = inst.m;
  out["valuations"] = matrix_json(inst.valuations);
  out["budgets"] = vector_json(inst.budgets);
  return out;
}

Json equilibrium_to_json(const Equilibrium& eq) {
  Json out = Json::object();
  out["alpha"] = vector_json(eq.alpha);
  out["x"] = matrix_json(eq.x);
  out["prices"] = vector_json(eq.prices);
  out["lambda"] = vector_json(eq.lambda);
  out["payments"] = matrix_json(eq.payments);
  Json zero = Json::array();
  for (std::size_t j : eq.zero_value_goods) zero.push_back(j + 1);
  out["zero_value_goods"] = zero;
  return out;
}

Json stats_to_json(const RunStats& stats) {
  Json out = Json::object();
  out["states_enumerated"] = count_json(stats.states_enumerated);
  out["states_consistent"] = stats.states_consistent;
  out["cells_with_nonempty_witness_sets"] = stats.work.cells_with_nonempty_witness_sets;
  out["witness_tuples_tried"] = stats.work.witness_tuples_tried;
  out["lps_solved"] = stats.work.lps_solved;
  out["lps_feasible"] = stats.work.lps_feasible;
  out["wall_time_ms"] = stats.wall_time_ms;
  out["winning_state_index"] = stats.winning_state_index ? count_json(*stats.winning_state_index) : Json(nullptr);
  if (stats.winning_tuple) {
    // 1-based buyers; 0 is the dummy witness.
    Json tuple = Json::array();
    for (std::size_t r : *stats.winning_tuple) tuple.push_back(r == kDummyWitness ? 0 : r + 1);
    out["winning_tuple"] = tuple;
  } else {
    out["winning_tuple"] = nullptr;
  }
  out["goods_after_preprocessing"] = stats.goods_after_preprocessing;
  return out;
}

Allocation allocation_from_json(const Json& doc) {
  return Allocation{rat_array(field(doc, "alpha"), "alpha"), rat_matrix(field(doc, "x"), "x")};
}

Json report_to_json(const VerificationReport& report) {
  Json out = Json::object();
  out["pass"] = report.pass;
  out["first_failure"] = report.first_failure().empty() ? Json(nullptr) : Json(report.first_failure());
  out["preconditions"] = check_json(report.preconditions);
  Json conditions = Json::object();
  conditions["a"] = check_json(report.a);
  conditions["b"] = check_json(report.b);
  conditions["c"] = check_json(report.c);
  conditions["d"] = check_json(report.d);
  out["conditions"] = conditions;
  out["highest_bid"] = vector_json(report.highest_bid);
  out["price"] = vector_json(report.price);
  out["spend"] = vector_json(report.spend);
  out["second_price_rule"] = "top bid when tied, else best losing bid; 0 when only the dummy competes";
  return out;
}

Json partition_to_json(const TypePartition& part) {
  Json out = Json::object();
  Json types = Json::array();
  for (const auto& members : part.types) {
    Json s = Json::array();
    for (std::size_t j : members) s.push_back(j + 1);
    types.push_back(s);
  }
  out["types"] = types;
  out["aggregated"] = instance_to_json(part.aggregated);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error(path + ": " + e.what());
  }
}

}  // namespace sppe::io
