// Command-line front end: solve, winners, reduce, diff and serve.
//
// Exit codes: 0 decision true / success, 1 decision false (or diff
// mismatches), 2 usage or validation error.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ocontrol/diff.h"
#include "ocontrol/game_oracle.h"
#include "ocontrol/http_service.h"
#include "ocontrol/instance_io.h"
#include "ocontrol/plurality_online.h"
#include "ocontrol/qbf.h"

namespace {

using namespace ocontrol;

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

Json load_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError("document", e.what());
  }
}

std::vector<Variant> parse_variant_list(const std::string& text) {
  std::vector<Variant> out;
  if (text == "all") {
    return {Variant::ccdc, Variant::ccac, Variant::dcdc_nht, Variant::dcdc_ht, Variant::dcac};
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = parse_variant(item);
    if (!v) throw CLI::ValidationError("--variants", "unknown variant '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

int run_solve(const std::string& path, const std::string& method, double guard) {
  const ControlInstance inst = load_instance(load_json(path));
  Json out;
  out["method"] = method;
  bool win = false;
  if (method == "poly") {
    if (inst.system != System::plurality) {
      std::cerr << "error: --method poly supports plurality instances only\n";
      return kUsage;
    }
    DecisionTrace trace;
    win = decide_online_control(inst, &trace);
    Json branches = Json::array();
    for (const auto& [action, outcome] : trace.branches) {
      branches.push_back({{"action", std::string(action_name(action))},
                          {"case", std::string(to_string(outcome.decided_by))},
                          {"forced_win", outcome.win}});
    }
    out["branches"] = branches;
  } else {
    OracleOptions options;
    options.node_guard = guard;
    options.record_strategy = true;
    const Verdict verdict = solve_forced_win(inst, winner_rule_for(inst.system), options);
    win = verdict.forced_win;
    out["nodes"] = verdict.nodes_visited;
    if (auto strategy = extract_strategy(verdict); strategy && strategy->action) {
      out["winning_action"] = std::string(action_name(*strategy->action));
    }
  }
  out["forced_win"] = win;
  std::cout << out.dump(2) << "\n";
  return win ? kTrue : kFalse;
}

int run_winners(const std::string& path) {
  const ControlInstance inst = load_state(load_json(path));
  Json ids = Json::array();
  for (Cand w : current_winners(inst, winner_rule_for(inst.system))) {
    ids.push_back(inst.candidates[w]);
  }
  std::cout << Json{{"winners", ids}}.dump(2) << "\n";
  return kTrue;
}

int run_reduce(const std::string& qbf_path, const std::string& target, const std::string& out) {
  auto variant = parse_variant(target);
  if (!variant) {
    std::cerr << "error: unknown target '" << target << "'\n";
    return kUsage;
  }
  const QbfInstance q = load_qbf(load_json(qbf_path));
  write_file(out, store_instance(reduce_qbf(q, *variant)).dump(2) + "\n");
  return kTrue;
}

int run_diff_command(std::size_t max_cands, std::size_t max_voters, const std::string& variants,
                     double guard) {
  EnumerationBounds bounds{max_cands, max_voters, parse_variant_list(variants)};
  DiffOptions options;
  options.node_guard = guard;
  const DiffReport report = run_diff(bounds, options);
  std::cout << report_to_json(report).dump(2) << "\n";
  return report.mismatches.empty() ? kTrue : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online candidate control: deciders, game oracle, QBF reductions"};
  app.require_subcommand(1);

  std::string in_path;
  std::string method = "poly";
  double guard = 1e8;
  auto* solve = app.add_subcommand("solve", "Decide whether the chair has a forced win");
  solve->add_option("--in", in_path, "Instance document")->required();
  solve->add_option("--method", method, "poly or oracle")
      ->check(CLI::IsMember({"poly", "oracle"}));
  solve->add_option("--guard", guard, "Oracle node guard");

  auto* winners = app.add_subcommand("winners", "Winner set of the standing candidates");
  winners->add_option("--in", in_path, "Instance document")->required();

  std::string qbf_path;
  std::string target;
  std::string out_path;
  auto* reduce = app.add_subcommand("reduce", "Reduce a QBF to an online control instance");
  reduce->add_option("--qbf", qbf_path, "QBF document")->required();
  reduce->add_option("--target", target, "ccac, ccdc, dcdc-nht, dcdc-ht or dcac")->required();
  reduce->add_option("--out", out_path, "Output instance document")->required();

  std::size_t max_cands = 0;
  std::size_t max_voters = 0;
  std::string variants = "all";
  auto* diff = app.add_subcommand("diff", "Differential sweep: deciders vs. oracle");
  diff->add_option("--max-cands", max_cands, "Largest roster")->required();
  diff->add_option("--max-voters", max_voters, "Largest electorate")->required();
  diff->add_option("--variants", variants, "Comma-separated variants or 'all'");
  diff->add_option("--guard", guard, "Oracle node guard");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "Run the session service");
  serve->add_option("--port", port, "TCP port")->required();
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--guard", guard, "Oracle node guard for hints and adversarial moves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*solve) return run_solve(in_path, method, guard);
    if (*winners) return run_winners(in_path);
    if (*reduce) return run_reduce(qbf_path, target, out_path);
    if (*diff) return run_diff_command(max_cands, max_voters, variants, guard);
    if (*serve) {
      SessionStore store(guard);
      std::cerr << "serving sessions on " << host << ":" << port << "\n";
      return serve_sessions(store, host, port) ? kTrue : kUsage;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
