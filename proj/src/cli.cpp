#include "votepos/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "votepos/analytic.hpp"
#include "votepos/error.hpp"
#include "votepos/report.hpp"
#include "votepos/search.hpp"
#include "votepos/svg.hpp"
#include "votepos/verify.hpp"

namespace votepos::cli {

namespace {

using report::Json;

struct Options {
  std::string rule;
  std::string profile;
  std::string svg;
  std::string rules_file;
  bool json = false;
  bool csv = false;
  bool timing = false;
  long seed = 0;
  int grid = 0;
  bool no_prune = false;
  bool include_cne = false;
  unsigned jobs = 1;
  int q = 0;
  int r = 0;
};

struct Output {
  std::ostream& out;
  std::ostream& err;
  const Options& opt;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, Profile>> diagram;
  int code = kExitOk;

  void emit(Json doc) {
    if (opt.timing) {
      const auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
      doc["timing_us"] = std::to_string(us.count());
    }
    out << doc.dump(2) << '\n';
  }

  // Every witness the tool prints must pass the oracle.
  void certify(const ScoringRule& rule, const Profile& witness) {
    if (verify_profile(rule, witness).status != EquilibriumStatus::Equilibrium) {
      err << "verification failure: witness " << witness.str() << " is not an equilibrium\n";
      code = kExitVerificationFailure;
    }
  }
};

void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

SearchOptions search_options(const Options& o) { return {!o.no_prune, o.include_cne, std::max(1u, o.jobs)}; }

int cmd_classify(Output& io, const ScoringRule& rule) {
  Json doc = report::document("classify", rule);
  merge(doc, report::classification(rule));
  io.emit(std::move(doc));
  return io.code;
}

int cmd_cne(Output& io, const ScoringRule& rule) {
  Json doc = report::document("cne", rule);
  doc["threshold"] = cox_threshold(rule).str();
  doc["cne_interval"] = report::optional_json(cne_interval(rule));
  io.emit(std::move(doc));
  return io.code;
}

int cmd_bounds(Output& io, const ScoringRule& rule) {
  const StructuralBounds b = structural_bounds(rule);
  Json doc = report::document("bounds", rule);
  doc["threshold"] = cox_threshold(rule).str();
  doc["max_gap"] = b.max_gap.str();
  doc["min_positions"] = b.min_positions.get_str();
  doc["forbidden_center"] = report::optional_json(b.forbidden_center);
  Json verdicts = Json::array();
  for (const auto& v : impossibility_verdicts(rule)) verdicts.push_back(report::to_json(v));
  doc["verdicts"] = std::move(verdicts);
  io.emit(std::move(doc));
  return io.code;
}

int cmd_find(Output& io, const ScoringRule& rule) {
  const SearchResult result = find_ncne(rule, search_options(io.opt));
  if (!result.verification_failures.empty()) {
    io.err << "verification failure: " << result.verification_failures.size() << " witness(es) rejected by the oracle\n";
    io.code = kExitVerificationFailure;
  }
  for (const auto& o : result.outcomes)
    if (o.witness && (o.status == TypeStatus::Ncne || o.status == TypeStatus::Cne))
      io.diagram.emplace_back(type_str(o.type), *o.witness);
  if (io.opt.csv) {
    io.out << report::search_csv(result);
    return io.code;
  }
  Json doc = report::document("find-ncne", rule);
  doc["options"] = {{"prune", !io.opt.no_prune}, {"include_cne", io.opt.include_cne}};
  merge(doc, report::to_json(result));
  io.emit(std::move(doc));
  return io.code;
}

int cmd_verify(Output& io, const ScoringRule& rule) {
  if (io.opt.profile.empty()) throw Error(ErrorCode::ParseError, "verify needs --profile");
  const Profile profile = parse_profile(io.opt.profile, rule);
  const EquilibriumReport rep =
      io.opt.grid > 0 ? grid_cross_check(rule, profile, io.opt.grid) : verify_profile(rule, profile);
  io.diagram.emplace_back(profile.str(), profile);
  if (io.opt.csv) {
    io.out << report::ledger_csv(rep);
    return io.code;
  }
  Json doc = report::document("verify", rule);
  doc["profile"] = report::to_json(profile);
  if (io.opt.grid > 0) doc["grid"] = std::to_string(io.opt.grid);
  merge(doc, report::to_json(rep));
  io.emit(std::move(doc));
  return io.code;
}

int cmd_characterize(Output& io, const ScoringRule& rule) {
  const Verdict v = characterize_small_m(rule);
  if (v.witness) {
    io.certify(rule, *v.witness);
    io.diagram.emplace_back(v.reason, *v.witness);
  }
  Json doc = report::document("characterize", rule);
  doc["verdict"] = report::to_json(v);
  io.emit(std::move(doc));
  return io.code;
}

int cmd_bipositional(Output& io, const ScoringRule& rule) {
  const auto sol = bipositional_solve(rule);
  Json doc = report::document("bipositional", rule);
  if (sol) {
    io.certify(rule, sol->witness);
    io.diagram.emplace_back("bipositional", sol->witness);
    doc["x1_range"] = report::to_json(sol->x1_range);
    doc["witness"] = report::to_json(sol->witness);
  } else {
    doc["x1_range"] = nullptr;
    doc["witness"] = nullptr;
  }
  io.emit(std::move(doc));
  return io.code;
}

int cmd_multipositional(Output& io, const ScoringRule& rule) {
  Json doc = report::document("multipositional", rule);
  doc["q"] = io.opt.q;
  doc["r"] = io.opt.r;
  const auto built = multipositional_construct(rule, io.opt.q, io.opt.r);
  if (built) {
    io.certify(rule, *built);
    io.diagram.emplace_back("constructed", *built);
  }
  doc["witness"] = report::optional_json(built);
  if (!io.opt.profile.empty()) {
    const Profile p = parse_profile(io.opt.profile, rule);
    doc["profile"] = report::to_json(p);
    doc["conditions_hold"] = multipositional_check(rule, p);
  }
  io.emit(std::move(doc));
  return io.code;
}

std::vector<std::pair<int, std::string>> read_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read rules file '" + path + "'");
  std::vector<std::pair<int, std::string>> lines;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.emplace_back(n, line);
  }
  return lines;
}

int cmd_scan(Output& io) {
  if (io.opt.rules_file.empty()) throw Error(ErrorCode::ParseError, "scan needs --rules-file");
  std::vector<ScoringRule> rules;
  for (const auto& [n, text] : read_rules(io.opt.rules_file)) {
    try {
      rules.push_back(parse_rule(text));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(n) + ": " + e.what());
    }
  }

  std::ostringstream csv;
  csv << "rule,class,threshold,ncne_types,cne_interval\n";
  Json rows = Json::array();
  for (const auto& rule : rules) {
    const SearchResult res = find_ncne(rule, search_options(io.opt));
    if (!res.verification_failures.empty()) io.code = kExitVerificationFailure;
    std::string types;
    for (const auto& t : res.ncne_types) types += (types.empty() ? "" : " ") + type_str(t);
    csv << '"' << rule.str() << "\"," << to_string(classify(rule).kind) << ',' << cox_threshold(rule) << ",\""
        << types << "\",\"" << (res.cne_interval ? res.cne_interval->str() : "") << "\"\n";

    Json row;
    row["rule"] = rule.str();
    merge(row, report::classification(rule));
    Json verdicts = Json::array();
    for (const auto& v : impossibility_verdicts(rule)) verdicts.push_back(report::to_json(v));
    row["verdicts"] = std::move(verdicts);
    Json found = Json::array();
    for (const auto& o : res.outcomes)
      if (o.status == TypeStatus::Ncne) found.push_back({{"type", report::to_json(o.type)}, {"witness", report::to_json(*o.witness)}});
    row["ncne"] = std::move(found);
    row["cne_interval"] = report::optional_json(res.cne_interval);
    rows.push_back(std::move(row));
  }
  if (io.code == kExitVerificationFailure) io.err << "verification failure during scan\n";
  if (io.opt.csv) {
    io.out << csv.str();
    return io.code;
  }
  Json doc;
  doc["schema_version"] = report::kSchemaVersion;
  doc["command"] = "scan";
  doc["rules"] = std::move(rows);
  io.emit(std::move(doc));
  return io.code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Equilibria of candidate positioning under positional scoring rules", "votepos"};
  app.require_subcommand(1, 1);

  auto add_rule = [&](CLI::App* sub) {
    sub->add_option("--rule", o.rule, "scores, comma separated, e.g. \"3,2,1,0\"")->required();
    sub->add_flag("--json", o.json, "JSON output (default)");
    sub->add_option("--seed", o.seed, "reserved; deterministic commands ignore it");
    sub->add_flag("--timing", o.timing, "add elapsed time to the report");
    return sub;
  };
  auto add_svg = [&](CLI::App* sub) { sub->add_option("--svg", o.svg, "write a number-line diagram"); };
  auto add_search = [&](CLI::App* sub) {
    sub->add_flag("--no-prune", o.no_prune, "solve every cluster type");
    sub->add_flag("--include-cne", o.include_cne, "also solve the single-cluster type");
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* classify_cmd = add_rule(app.add_subcommand("classify", "Cox threshold, class and shape tests"));
  auto* cne_cmd = add_rule(app.add_subcommand("cne", "convergent equilibrium interval"));
  auto* bounds_cmd = add_rule(app.add_subcommand("bounds", "structural bounds and impossibility verdicts"));
  auto* find_cmd = add_rule(app.add_subcommand("find-ncne", "LP search over cluster types"));
  add_search(find_cmd);
  add_svg(find_cmd);
  find_cmd->add_flag("--csv", o.csv, "CSV table of per-type outcomes");
  auto* verify_cmd = add_rule(app.add_subcommand("verify", "certify or refute a profile"));
  verify_cmd->add_option("--profile", o.profile, "e.g. \"13/28*8;41/84*4\"")->required();
  verify_cmd->add_option("--grid", o.grid, "also test free points k/N")->check(CLI::Range(2, 1 << 20));
  verify_cmd->add_flag("--csv", o.csv, "CSV deviation ledger");
  add_svg(verify_cmd);
  auto* char_cmd = add_rule(app.add_subcommand("characterize", "closed-form answer for m = 4, 5, 6"));
  add_svg(char_cmd);
  auto* bi_cmd = add_rule(app.add_subcommand("bipositional", "symmetric two-cluster equilibria (even m)"));
  add_svg(bi_cmd);
  auto* multi_cmd = add_rule(app.add_subcommand("multipositional", "q clusters of r candidates"));
  multi_cmd->add_option("--q", o.q, "number of positions")->required();
  multi_cmd->add_option("--r", o.r, "candidates per position")->required();
  multi_cmd->add_option("--profile", o.profile, "check this profile as well");
  add_svg(multi_cmd);
  auto* scan_cmd = app.add_subcommand("scan", "batch search over a file of rules");
  scan_cmd->add_option("--rules-file", o.rules_file, "one rule per line, '#' comments")->required();
  scan_cmd->add_flag("--json", o.json, "JSON output (default)");
  scan_cmd->add_flag("--csv", o.csv, "CSV summary");
  scan_cmd->add_flag("--timing", o.timing, "add elapsed time to the report");
  scan_cmd->add_option("--seed", o.seed, "reserved; unused");
  add_search(scan_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, err, err);
    return kExitInvalidInput;
  }

  Output io{out, err, o, std::chrono::steady_clock::now(), {}, kExitOk};
  try {
    if (scan_cmd->parsed()) return cmd_scan(io);

    const ScoringRule rule = parse_rule(o.rule);
    int code = kExitOk;
    if (classify_cmd->parsed()) code = cmd_classify(io, rule);
    else if (cne_cmd->parsed()) code = cmd_cne(io, rule);
    else if (bounds_cmd->parsed()) code = cmd_bounds(io, rule);
    else if (find_cmd->parsed()) code = cmd_find(io, rule);
    else if (verify_cmd->parsed()) code = cmd_verify(io, rule);
    else if (char_cmd->parsed()) code = cmd_characterize(io, rule);
    else if (bi_cmd->parsed()) code = cmd_bipositional(io, rule);
    else if (multi_cmd->parsed()) code = cmd_multipositional(io, rule);

    if (!o.svg.empty()) {
      std::ofstream file(o.svg);
      if (!file) {
        err << "error: cannot write " << o.svg << '\n';
        return kExitInvalidInput;
      }
      file << render_svg(io.diagram);
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::logic_error& e) {
    err << "internal verification failure: " << e.what() << '\n';
    return kExitVerificationFailure;
  }
}

}  // namespace votepos::cli
