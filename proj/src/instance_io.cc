#include "ocontrol/instance_io.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ocontrol {

namespace {

const std::set<std::string> kKnownFields = {
    "variant", "system", "candidates", "spoilers", "num_voters", "presentation",
    "current", "budget", "sigma",      "d",        "decisions",  "votes"};

const Json& require(const Json& doc, const std::string& field) {
  auto it = doc.find(field);
  if (it == doc.end()) throw DocumentError(field, "missing field");
  return *it;
}

std::string as_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw DocumentError(path, "expected a string");
  return v.get<std::string>();
}

std::size_t as_count(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw DocumentError(path, "expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

class Names {
 public:
  explicit Names(const std::vector<std::string>& roster) {
    for (std::size_t i = 0; i < roster.size(); ++i) index_.emplace(roster[i], static_cast<Cand>(i));
  }

  Cand lookup(const Json& v, const std::string& path) const {
    const std::string id = as_string(v, path);
    auto it = index_.find(id);
    if (it == index_.end()) throw DocumentError(path, "unknown candidate '" + id + "'");
    return it->second;
  }

  std::vector<Cand> list(const Json& v, const std::string& path) const {
    if (!v.is_array()) throw DocumentError(path, "expected an array of candidate ids");
    std::vector<Cand> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(lookup(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

 private:
  std::map<std::string, Cand> index_;
};

ControlInstance parse_document(const Json& doc) {
  if (!doc.is_object()) throw DocumentError("document", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownFields.contains(key)) throw DocumentError(key, "unknown field");
  }

  ControlInstance inst;
  const std::string variant_text = as_string(require(doc, "variant"), "variant");
  auto variant = parse_variant(variant_text);
  if (!variant) throw DocumentError("variant", "unknown variant '" + variant_text + "'");
  inst.variant = *variant;

  if (doc.contains("system")) {
    const std::string text = as_string(doc["system"], "system");
    auto system = parse_system(text);
    if (!system) throw DocumentError("system", "unknown system '" + text + "'");
    inst.system = *system;
  }

  const Json& roster = require(doc, "candidates");
  if (!roster.is_array()) throw DocumentError("candidates", "expected an array");
  for (std::size_t i = 0; i < roster.size(); ++i) {
    inst.candidates.push_back(as_string(roster[i], "candidates[" + std::to_string(i) + "]"));
  }
  const Names names(inst.candidates);
  inst.spoiler.assign(inst.size(), false);

  if (doc.contains("spoilers")) {
    if (!is_addition(inst.variant)) {
      throw DocumentError("spoilers", "only addition variants have spoilers");
    }
    for (Cand c : names.list(doc["spoilers"], "spoilers")) inst.spoiler[c] = true;
  } else if (is_addition(inst.variant)) {
    throw DocumentError("spoilers", "missing field");
  }

  inst.num_voters = as_count(require(doc, "num_voters"), "num_voters");
  inst.presentation = names.list(require(doc, "presentation"), "presentation");
  const Cand current = names.lookup(require(doc, "current"), "current");
  inst.budget = as_count(require(doc, "budget"), "budget");
  inst.sigma = names.list(require(doc, "sigma"), "sigma");
  inst.d = names.lookup(require(doc, "d"), "d");

  auto pos = std::find(inst.presentation.begin(), inst.presentation.end(), current);
  if (pos == inst.presentation.end()) {
    throw DocumentError("current", "candidate is not in the presentation");
  }
  inst.current_index = static_cast<std::size_t>(pos - inst.presentation.begin());

  const Json& decisions = require(doc, "decisions");
  if (!decisions.is_object()) throw DocumentError("decisions", "expected an object");
  std::map<Cand, Decision> flags;
  for (const auto& [id, flag] : decisions.items()) {
    const std::string path = "decisions." + id;
    const Cand c = names.lookup(Json(id), path);
    const std::string text = as_string(flag, path);
    auto decision = parse_decision(text);
    if (!decision) throw DocumentError(path, "unknown decision '" + text + "'");
    flags.emplace(c, *decision);
  }
  for (std::size_t p = 0; p < inst.presentation.size() && p <= inst.current_index; ++p) {
    auto it = flags.find(inst.presentation[p]);
    if (it == flags.end()) {
      if (p < inst.current_index) {
        throw DocumentError("decisions." + inst.candidates[inst.presentation[p]],
                            "missing flag for a decided candidate");
      }
      break;
    }
    inst.decisions.push_back(it->second);
    flags.erase(it);
  }
  if (!flags.empty()) {
    throw DocumentError("decisions." + inst.candidates[flags.begin()->first],
                        "flag for a candidate that is not yet decided");
  }

  const Json& votes = require(doc, "votes");
  if (!votes.is_array()) throw DocumentError("votes", "expected an array");
  for (std::size_t v = 0; v < votes.size(); ++v) {
    inst.votes.push_back(names.list(votes[v], "votes[" + std::to_string(v) + "]"));
  }
  return inst;
}

void check(const std::vector<std::string>& violations) {
  if (!violations.empty()) throw ValidationError(violations);
}

}  // namespace

ControlInstance load_instance(const Json& doc) {
  ControlInstance inst = parse_document(doc);
  check(validate_instance(inst));
  return inst;
}

ControlInstance load_state(const Json& doc) {
  ControlInstance inst = parse_document(doc);
  check(validate_state(inst));
  return inst;
}

ControlInstance load_instance_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError("document", e.what());
  }
  return load_instance(doc);
}

Json store_instance(const ControlInstance& inst) {
  auto ids = [&](const std::vector<Cand>& list) {
    Json arr = Json::array();
    for (Cand c : list) arr.push_back(inst.candidates.at(c));
    return arr;
  };
  Json doc;
  doc["variant"] = std::string(to_string(inst.variant));
  doc["system"] = std::string(to_string(inst.system));
  doc["candidates"] = inst.candidates;
  if (is_addition(inst.variant)) {
    std::vector<Cand> spoilers;
    for (Cand c = 0; c < inst.size(); ++c) {
      if (inst.spoiler[c]) spoilers.push_back(c);
    }
    doc["spoilers"] = ids(spoilers);
  }
  doc["num_voters"] = inst.num_voters;
  doc["presentation"] = ids(inst.presentation);
  doc["current"] = inst.candidates.at(inst.current());
  doc["budget"] = inst.budget;
  doc["sigma"] = ids(inst.sigma);
  doc["d"] = inst.candidates.at(inst.d);
  Json decisions = Json::object();
  for (std::size_t p = 0; p < inst.decisions.size(); ++p) {
    decisions[inst.candidates.at(inst.presentation[p])] = std::string(to_string(inst.decisions[p]));
  }
  doc["decisions"] = decisions;
  Json votes = Json::array();
  for (const Vote& v : inst.votes) votes.push_back(ids(v));
  doc["votes"] = votes;
  return doc;
}

QbfInstance load_qbf(const Json& doc) {
  if (!doc.is_object()) throw DocumentError("document", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "matrix" && key != "variables") throw DocumentError(key, "unknown field");
  }
  const std::string text = as_string(require(doc, "matrix"), "matrix");
  Formula matrix = [&] {
    try {
      return parse_formula(text);
    } catch (const FormulaSyntaxError& e) {
      throw DocumentError("matrix", e.what());
    }
  }();
  std::optional<std::vector<std::string>> order;
  if (doc.contains("variables")) {
    const Json& vars = doc["variables"];
    if (!vars.is_array()) throw DocumentError("variables", "expected an array");
    order.emplace();
    for (std::size_t i = 0; i < vars.size(); ++i) {
      order->push_back(as_string(vars[i], "variables[" + std::to_string(i) + "]"));
    }
  }
  try {
    return make_qbf(std::move(matrix), std::move(order));
  } catch (const std::invalid_argument& e) {
    throw DocumentError("variables", e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace ocontrol
