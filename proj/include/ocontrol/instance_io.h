#pragma once

// JSON instance documents. Field vocabulary:
//   variant      "CCDC" | "CCAC" | "DCDC-NHT" | "DCDC-HT" | "DCAC"
//   system       "plurality" | "qbf-E" | "qbf-Eprime"
//   candidates   [id, ...]                 roster
//   spoilers     [id, ...]                 addition variants only
//   num_voters   n
//   presentation [id, ...]                 reveal order
//   current      id                        candidate awaiting (or holding) the latest decision
//   budget       k
//   sigma        [id, ...]                 chair preference, best first
//   d            id
//   decisions    {id: "kept"|"deleted"|"in"|"added"|"not-added", ...}
//   votes        [[id, ...], ...]          one order per voter over the revealed prefix

#include <string>

#include "json.hpp"
#include "ocontrol/election.h"
#include "ocontrol/qbf.h"

namespace ocontrol {

using Json = nlohmann::ordered_json;

/// Structural or validation failure; `field` names the offending field path.
class DocumentError : public std::runtime_error {
 public:
  DocumentError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses and validates a snapshot (the current candidate awaits its decision).
ControlInstance load_instance(const Json& doc);
ControlInstance load_instance_text(const std::string& text);

/// Parses a game state; the current candidate may already carry its flag.
ControlInstance load_state(const Json& doc);

Json store_instance(const ControlInstance& inst);

/// QBF documents: {"matrix": "<formula>", "variables": [quantifier order]}.
/// "variables" is optional and defaults to lexicographic order.
QbfInstance load_qbf(const Json& doc);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace ocontrol
