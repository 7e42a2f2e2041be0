// piquant: command-line front end.
//
//   piquant parse    [-e EXPR | FILE] [--json]
//   piquant outcome  [-e EXPR | FILE] [--semiring S] [--json]
//   piquant runs     [-e EXPR | FILE] [--json]
//   piquant traces   [-e EXPR | FILE] [--semiring S]
//   piquant impl     TRACE.json [--json]
//   piquant sync     T.json U.json
//   piquant equiv    -e P -e Q | P.pi Q.pi  [--semiring S] [--depth D] [--json]
//
// Exit codes: 0 ok (equiv: equivalent), 1 equiv distinguished, 2 equiv
// unknown, 64 unreadable input, 65 value outside the carrier, 70 internal
// contract violation.  Output is byte-deterministic for fixed inputs.

#include "piquant/piquant.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace piquant;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(0, 0, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json json_file(const std::string& path) {
  std::string text = read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(0, 0, path + ": " + e.what());
  }
}

// One term per command invocation: inline expression or file, never both.
struct TermInput {
  std::vector<std::string> exprs;
  std::vector<std::string> files;

  void attach(CLI::App* cmd, size_t arity) {
    cmd->add_option("-e,--expr", exprs, "inline term");
    cmd->add_option("file", files, "file holding a term");
    cmd->callback([this, arity] {
      if (!exprs.empty() && !files.empty())
        throw CLI::ValidationError("give terms inline or as files, not both");
      if (exprs.size() + files.size() != arity)
        throw CLI::ValidationError("expected " + std::to_string(arity) + " term(s)");
    });
  }

  std::vector<std::string> sources() const {
    std::vector<std::string> out = exprs;
    for (const auto& f : files) out.push_back(read_file(f));
    return out;
  }
};

std::string label_list(const PreTrace& labels) {
  std::string out;
  for (const auto& l : labels) {
    if (!out.empty()) out += " ";
    out += to_string(l);
  }
  return out;
}

int cmd_parse(const TermInput& in, bool json) {
  NameSupply supply;
  Term t = parse_term(in.sources()[0], supply);
  if (json) std::cout << nlohmann::json{{"term", print_term(t)}}.dump() << "\n";
  else std::cout << print_term(t) << "\n";
  return 0;
}

int cmd_outcome(const TermInput& in, SemiringId id, bool json) {
  NameSupply supply;
  Term t = parse_term(in.sources()[0], supply);
  Elaboration el = elaborate_full(t, supply);
  SemiringValue v = outcome(el.core, id, el.lin_witnesses);
  if (json)
    std::cout << nlohmann::json{{"semiring", to_string(id)}, {"outcome", v.str()}}.dump() << "\n";
  else std::cout << v.str() << "\n";
  return 0;
}

int cmd_runs(const TermInput& in, bool json) {
  NameSupply supply;
  Term t = parse_term(in.sources()[0], supply);
  std::vector<Run> rs = runs(elaborate(t, supply));
  if (json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rs) {
      nlohmann::json jr;
      jr["labels"] = nlohmann::json::array();
      for (const auto& l : r.labels) jr["labels"].push_back(to_string(l));
      jr["order"] = nlohmann::json::array();
      for (const auto& [i, j] : causal_order(r.labels)) jr["order"].push_back({i + 1, j + 1});
      jr["final"] = print_term(r.final_state);
      out.push_back(std::move(jr));
    }
    std::cout << out.dump() << "\n";
    return 0;
  }
  std::cout << rs.size() << " run(s)\n";
  size_t i = 0;
  for (const auto& r : rs) {
    std::cout << "run " << ++i << ": " << (r.labels.empty() ? "(empty)" : label_list(r.labels))
              << "\n";
    for (const auto& [a, b] : causal_order(r.labels))
      std::cout << "  " << to_string(r.labels[a]) << " < " << to_string(r.labels[b]) << "\n";
    std::cout << "  final: " << print_term(r.final_state) << "\n";
  }
  return 0;
}

int cmd_traces(const TermInput& in, SemiringId id) {
  NameSupply supply;
  Term t = parse_term(in.sources()[0], supply);
  LinearCombination comb = decompose(t, id);
  nlohmann::json out;
  out["semiring"] = to_string(id);
  out["combination"] = nlohmann::json::array();
  for (const auto& [key, tv] : comb.terms)
    out["combination"].push_back(
        {{"coeff", tv.second.str()}, {"trace", trace_to_json(tv.first)}});
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_impl(const std::string& path, bool json) {
  Trace t = trace_from_json(json_file(path));
  Term impl = implement_trace(t);
  if (json) std::cout << nlohmann::json{{"term", print_term(impl)}}.dump() << "\n";
  else std::cout << print_term(impl) << "\n";
  return 0;
}

int cmd_sync(const std::string& tpath, const std::string& upath) {
  Trace t = trace_from_json(json_file(tpath));
  Trace u = trace_from_json(json_file(upath));
  std::cout << sync_count(t, u).str() << "\n";
  return 0;
}

int cmd_equiv(const TermInput& in, SemiringId id, size_t depth, bool json) {
  NameSupply s1, s2;
  auto srcs = in.sources();
  Term p = parse_term(srcs[0], s1);
  Term q = parse_term(srcs[1], s2);
  Verdict v;
  if (id == SemiringId::may) v = may_equiv(p, q, depth);
  else if (id == SemiringId::must) v = must_equiv(p, q, depth);
  else v = check_equiv(p, q, id, depth);
  const char* status = v.status == Verdict::Status::equivalent      ? "EQUIVALENT"
                       : v.status == Verdict::Status::distinguished ? "DISTINGUISHED"
                                                                    : "UNKNOWN";
  if (json) {
    nlohmann::json out{{"status", status},
                       {"semiring", to_string(id)},
                       {"left_nf", v.left_nf},
                       {"right_nf", v.right_nf},
                       {"battery", v.battery_size}};
    if (v.context) {
      out["context"] = print_term(*v.context);
      out["left_outcome"] = v.left_outcome.str();
      out["right_outcome"] = v.right_outcome.str();
    }
    std::cout << out.dump() << "\n";
  } else {
    std::cout << status << "\n";
    std::cout << "left  normal form: " << v.left_nf << "\n";
    std::cout << "right normal form: " << v.right_nf << "\n";
    if (v.context) {
      std::cout << "context: " << print_term(*v.context) << "\n";
      std::cout << "outcomes: " << v.left_outcome.str() << " vs " << v.right_outcome.str() << "\n";
    }
    if (v.status == Verdict::Status::unknown)
      std::cout << "no separating context among " << v.battery_size << " tried\n";
  }
  return v.status == Verdict::Status::equivalent ? 0
         : v.status == Verdict::Status::distinguished ? 1
                                                      : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantitative semantics for finite processes with internal mobility"};
  app.require_subcommand(1);

  TermInput parse_in, outcome_in, runs_in, traces_in, equiv_in;
  std::string outcome_sem = "nat", traces_sem = "nat", equiv_sem = "nat";
  std::string impl_path, sync_t, sync_u;
  size_t equiv_depth = 2;
  bool parse_json = false, outcome_json = false, runs_json = false, impl_json = false,
       equiv_json = false;

  CLI::App* c_parse = app.add_subcommand("parse", "read a term and print it back");
  parse_in.attach(c_parse, 1);
  c_parse->add_flag("--json", parse_json, "JSON output");

  CLI::App* c_outcome = app.add_subcommand("outcome", "evaluate a term");
  outcome_in.attach(c_outcome, 1);
  c_outcome->add_option("--semiring", outcome_sem, "nat | bool01 | may | must")
      ->capture_default_str();
  c_outcome->add_flag("--json", outcome_json, "JSON output");

  CLI::App* c_runs = app.add_subcommand("runs", "list runs with causal order");
  runs_in.attach(c_runs, 1);
  c_runs->add_flag("--json", runs_json, "JSON output");

  CLI::App* c_traces = app.add_subcommand("traces", "trace normal form as JSON");
  traces_in.attach(c_traces, 1);
  c_traces->add_option("--semiring", traces_sem, "nat | bool01 | may | must")
      ->capture_default_str();

  CLI::App* c_impl = app.add_subcommand("impl", "term implementing a trace");
  c_impl->add_option("trace", impl_path, "trace JSON file")->required();
  c_impl->add_flag("--json", impl_json, "JSON output");

  CLI::App* c_sync = app.add_subcommand("sync", "count synchronizations of two traces");
  c_sync->add_option("left", sync_t, "trace JSON file")->required();
  c_sync->add_option("right", sync_u, "trace JSON file")->required();

  CLI::App* c_equiv = app.add_subcommand("equiv", "check observational equivalence");
  equiv_in.attach(c_equiv, 2);
  c_equiv->add_option("--semiring", equiv_sem, "nat | bool01 | may | must")
      ->capture_default_str();
  c_equiv->add_option("--depth", equiv_depth, "context battery depth")->capture_default_str();
  c_equiv->add_flag("--json", equiv_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 64;
  }

  try {
    if (c_parse->parsed()) return cmd_parse(parse_in, parse_json);
    if (c_outcome->parsed())
      return cmd_outcome(outcome_in, semiring_from_string(outcome_sem), outcome_json);
    if (c_runs->parsed()) return cmd_runs(runs_in, runs_json);
    if (c_traces->parsed()) return cmd_traces(traces_in, semiring_from_string(traces_sem));
    if (c_impl->parsed()) return cmd_impl(impl_path, impl_json);
    if (c_sync->parsed()) return cmd_sync(sync_t, sync_u);
    if (c_equiv->parsed())
      return cmd_equiv(equiv_in, semiring_from_string(equiv_sem), equiv_depth, equiv_json);
    return 64;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const carrier_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  } catch (const contract_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
