#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "theft_trace/blacklist.hpp"
#include "theft_trace/classify.hpp"
#include "theft_trace/event.hpp"
#include "theft_trace/features.hpp"
#include "theft_trace/sequence.hpp"
#include "theft_trace/session.hpp"
#include "theft_trace/sha256.hpp"
#include "theft_trace/synthgen.hpp"
#include "theft_trace/tradenet.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace theft_trace;

namespace {

constexpr const char* kToolVersion = "0.1.0";

// exit 2: bad or inconsistent input
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int log_level() {
  static const int level = [] {
    const char* v = std::getenv("THEFT_TRACE_LOG_LEVEL");
    if (!v) return 1;
    const std::string s = v;
    if (s == "debug") return 0;
    if (s == "info") return 1;
    if (s == "warn") return 2;
    if (s == "error") return 3;
    return 1;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() <= 1) std::cerr << "[info] " << msg << "\n";
}
void log_warn(const std::string& msg) {
  if (log_level() <= 2) std::cerr << "[warn] " << msg << "\n";
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
}

// Tracks declared inputs/outputs and writes manifest_<command>.json.
struct Manifest {
  std::string command;
  fs::path out_dir;
  std::uint64_t seed = 0;
  json inputs = json::array();
  json outputs = json::array();
  json config = nullptr;

  void add_input(const fs::path& p) {
    if (!fs::exists(p)) throw InputError("cannot open " + p.string());
    inputs.push_back({{"path", p.string()}, {"sha256", sha256_file_hex(p.string())}});
  }
  void write_output(const fs::path& rel, const std::string& content) {
    const fs::path full = out_dir / rel;
    write_file(full, content);
    outputs.push_back({{"path", full.string()}, {"sha256", sha256_hex(content)}});
  }
  void finish() {
    json j;
    j["command"] = command;
    j["tool_version"] = kToolVersion;
    j["seed"] = seed;
    j["config"] = config;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    write_file(out_dir / ("manifest_" + command + ".json"), j.dump(2) + "\n");
  }
};

std::vector<GameEvent> load_events_strict(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<GameEvent> events;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      events.push_back(parse_log_line(line));
    } catch (const ParseError& e) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": " +
                       std::string(parse_reason_name(e.reason())) + ": " + e.what());
    }
  }
  return events;
}

std::string events_to_jsonl(const std::vector<GameEvent>& events) {
  std::string out;
  for (const auto& ev : events) {
    out += serialize_event(ev);
    out += '\n';
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// shared pipeline pieces

struct SessionKey {
  std::string account;
  Timestamp login_ts;
  bool operator<(const SessionKey& o) const {
    return std::tie(account, login_ts) < std::tie(o.account, o.login_ts);
  }
};

GroundTruth load_truth(const fs::path& path) {
  try {
    return GroundTruth::from_json(read_file(path));
  } catch (const std::exception& e) {
    throw InputError("ground truth " + path.string() + ": " + e.what());
  }
}

std::map<SessionKey, const SessionLabel*> truth_index(const GroundTruth& truth) {
  std::map<SessionKey, const SessionLabel*> idx;
  for (const auto& s : truth.sessions) idx[{s.account, s.login_ts}] = &s;
  return idx;
}

struct LabeledSessions {
  std::vector<Session> sessions;
  LabeledDataset dataset;  // infra sessions excluded
};

LabeledSessions build_dataset(const std::vector<GameEvent>& raw,
                              const GroundTruth& truth) {
  const auto filtered = filter_events(raw);
  auto sr = sessionize(filtered);
  const auto idx = truth_index(truth);
  LabeledSessions out;
  out.sessions = std::move(sr.sessions);
  for (std::size_t i = 0; i < out.sessions.size(); ++i) {
    const auto& s = out.sessions[i];
    const auto it = idx.find({s.account, s.login_ts});
    if (it == idx.end()) {
      log_warn("session " + s.account + "@" + format_timestamp(s.login_ts) +
               " has no ground-truth label; treating as normal");
    } else if (it->second->label == "infra") {
      continue;
    }
    LabeledRow row;
    const std::string letters = encode_session(s);
    row.features = extract_features(s, letters);
    row.label = (it != idx.end() && it->second->label == "theft") ? Label::Theft
                                                                  : Label::Normal;
    row.session_type = classify_session_duration(s.duration_s()).type;
    row.account = s.account;
    row.session_index = static_cast<int>(i);
    out.dataset.rows.push_back(std::move(row));
  }
  return out;
}

ModelSpec make_spec(const std::string& model, std::uint64_t seed) {
  ModelSpec spec;
  const auto kind = model_kind_from_name(model);
  if (!kind) throw InputError("unknown model '" + model + "'");
  spec.kind = *kind;
  spec.tree.seed = seed;
  spec.forest.seed = seed;
  spec.mlp.seed = seed;
  return spec;
}

json metrics_to_json(const Metrics& m) {
  json j;
  j["precision"] = m.precision ? json(*m.precision) : json(nullptr);
  j["recall"] = m.recall ? json(*m.recall) : json(nullptr);
  j["accuracy"] = m.accuracy ? json(*m.accuracy) : json(nullptr);
  return j;
}

json report_to_json(const EvalReport& r) {
  json j;
  j["confusion"] = {{"tp", r.confusion.tp},
                    {"fp", r.confusion.fp},
                    {"tn", r.confusion.tn},
                    {"fn", r.confusion.fn}};
  j["metrics"] = metrics_to_json(r.metrics);
  json folds = json::array();
  for (const auto& f : r.folds)
    folds.push_back({{"fold", f.fold},
                     {"tp", f.confusion.tp},
                     {"fp", f.confusion.fp},
                     {"tn", f.confusion.tn},
                     {"fn", f.confusion.fn}});
  j["folds"] = folds;
  return j;
}

// ---------------------------------------------------------------------------
// feature CSV round-trip (the train/evaluate input format)

std::string dataset_to_csv(const LabeledDataset& d) {
  std::string out;
  for (int i = 0; i < kFeatureCount; ++i) {
    out += feature_names()[i];
    out += ',';
  }
  out += "label\n";
  for (const auto& row : d.rows) {
    std::ostringstream os;
    os.precision(10);
    for (int i = 0; i < kFeatureCount; ++i) os << row.features[i] << ',';
    os << (row.label == Label::Theft ? "theft" : "normal") << '\n';
    out += os.str();
  }
  return out;
}

LabeledDataset dataset_from_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InputError(path.string() + ": empty file");
  {
    std::string expect;
    for (int i = 0; i < kFeatureCount; ++i) expect += feature_names()[i] + ",";
    expect += "label";
    if (line != expect)
      throw InputError(path.string() + ": unexpected feature CSV header");
  }
  LabeledDataset d;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    LabeledRow row;
    for (int i = 0; i < kFeatureCount; ++i) {
      if (!std::getline(ls, cell, ','))
        throw InputError(path.string() + ":" + std::to_string(lineno) +
                         ": too few columns");
      try {
        row.features[i] = std::stod(cell);
      } catch (const std::exception&) {
        throw InputError(path.string() + ":" + std::to_string(lineno) +
                         ": bad number '" + cell + "'");
      }
    }
    if (!std::getline(ls, cell, ','))
      throw InputError(path.string() + ":" + std::to_string(lineno) +
                       ": missing label");
    if (cell == "theft") row.label = Label::Theft;
    else if (cell == "normal") row.label = Label::Normal;
    else
      throw InputError(path.string() + ":" + std::to_string(lineno) +
                       ": bad label '" + cell + "'");
    row.session_type = classify_session_duration(
                           static_cast<Timestamp>(row.features[kPlaytimeS]))
                           .type;
    row.session_index = lineno - 2;
    d.rows.push_back(std::move(row));
  }
  return d;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_generate(const std::string& config_path, const std::string& out_dir,
                 std::uint64_t seed, bool seed_given) {
  ScenarioConfig cfg;
  Manifest mf{"generate", out_dir};
  if (!config_path.empty()) {
    cfg = parse_scenario_config(read_file(config_path));
    mf.add_input(config_path);
  }
  if (seed_given) cfg.seed = seed;
  mf.seed = cfg.seed;
  mf.config = scenario_config_to_text(cfg);
  log_info("generating scenario, seed " + std::to_string(cfg.seed));
  const ScenarioOutput out = generate_scenario(cfg);
  mf.write_output("events.jsonl", events_to_jsonl(out.events));
  mf.write_output("ground_truth.json", out.truth.to_json());
  mf.write_output("scenario.toml", scenario_config_to_text(cfg));
  mf.finish();
  log_info(std::to_string(out.events.size()) + " events, " +
           std::to_string(out.truth.sessions.size()) + " sessions");
  return 0;
}

int cmd_ingest(const std::string& in_path, const std::string& out_dir) {
  Manifest mf{"ingest", out_dir};
  mf.add_input(in_path);
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw InputError("cannot open " + in_path);
  std::vector<GameEvent> kept;
  std::string rejects;
  std::string line;
  int lineno = 0, n_rejected = 0, n_excluded = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      GameEvent ev = parse_log_line(line);
      if (is_analysis_code(ev.type)) kept.push_back(std::move(ev));
      else ++n_excluded;
    } catch (const ParseError& e) {
      ++n_rejected;
      rejects += std::to_string(lineno) + "\t" +
                 std::string(parse_reason_name(e.reason())) + "\t" + line + "\n";
    }
  }
  mf.write_output("events_clean.jsonl", events_to_jsonl(kept));
  mf.write_output(fs::path(in_path).filename().string() + ".rejects", rejects);
  mf.finish();
  log_info(std::to_string(kept.size()) + " events kept, " +
           std::to_string(n_excluded) + " excluded-category, " +
           std::to_string(n_rejected) + " rejected");
  return 0;
}

int cmd_sessions(const std::string& in_path, const std::string& out_dir) {
  Manifest mf{"sessions", out_dir};
  mf.add_input(in_path);
  const auto events = load_events_strict(in_path);
  const auto sr = sessionize(filter_events(events));
  std::string csv =
      "account,session_idx,login_ts,logout_ts,duration_s,truncated,ip,n_events\n";
  for (std::size_t i = 0; i < sr.sessions.size(); ++i) {
    const auto& s = sr.sessions[i];
    csv += csv_field(s.account) + "," + std::to_string(i) + "," +
           format_timestamp(s.login_ts) + "," + format_timestamp(s.logout_ts) +
           "," + std::to_string(s.duration_s()) + "," +
           (s.truncated ? "1" : "0") + "," + s.ip + "," +
           std::to_string(s.events.size()) + "\n";
  }
  std::string orphans = "account,ts,type,reason\n";
  for (const auto& o : sr.orphans)
    orphans += csv_field(o.event.account) + "," + format_timestamp(o.event.ts) +
               "," + std::string(code_name(o.event.type)) + "," + o.reason + "\n";
  mf.write_output("sessions.csv", csv);
  mf.write_output("orphans.csv", orphans);
  mf.finish();
  log_info(std::to_string(sr.sessions.size()) + " sessions, " +
           std::to_string(sr.orphans.size()) + " orphan events");
  return 0;
}

int cmd_sequences(const std::string& in_path, const std::string& out_dir,
                  double min_support) {
  Manifest mf{"sequences", out_dir};
  mf.add_input(in_path);
  const auto events = load_events_strict(in_path);
  const auto sr = sessionize(filter_events(events));
  std::string seq_csv = "account,session_idx,type,action_string\n";
  std::string motif_csv = "account,session_idx,motif,start,end\n";
  std::vector<std::string> strings;
  for (std::size_t i = 0; i < sr.sessions.size(); ++i) {
    const auto& s = sr.sessions[i];
    const std::string letters = encode_session(s);
    const auto dur = classify_session_duration(s.duration_s());
    seq_csv += csv_field(s.account) + "," + std::to_string(i) + "," +
               std::to_string(static_cast<int>(dur.type)) + "," + letters + "\n";
    for (const auto& hit : match_motifs(letters))
      motif_csv += csv_field(s.account) + "," + std::to_string(i) + "," +
                   std::string(motif_name(hit.motif)) + "," +
                   std::to_string(hit.start) + "," + std::to_string(hit.end) + "\n";
    strings.push_back(letters);
  }
  std::string pat_csv = "pattern,support,length\n";
  for (const auto& p : mine_common_sequences(strings, min_support))
    pat_csv += p.chars + "," + std::to_string(p.support) + "," +
               std::to_string(p.length()) + "\n";
  mf.write_output("sequences.csv", seq_csv);
  mf.write_output("motifs.csv", motif_csv);
  mf.write_output("patterns.csv", pat_csv);
  mf.finish();
  return 0;
}

int cmd_features(const std::string& in_path, const std::string& truth_path,
                 const std::string& out_dir) {
  Manifest mf{"features", out_dir};
  mf.add_input(in_path);
  mf.add_input(truth_path);
  const auto events = load_events_strict(in_path);
  const auto truth = load_truth(truth_path);
  const auto built = build_dataset(events, truth);

  // per-account daily expenditure series over the account's own events
  std::map<std::string, std::vector<GameEvent>> by_account;
  for (const auto& ev : filter_events(events)) by_account[ev.account].push_back(ev);
  std::string exp_csv = "account,date,ratio\n";
  for (const auto& [account, evs] : by_account) {
    const auto series = daily_expenditure_series(account, evs);
    for (const auto& d : series.days)
      exp_csv += csv_field(account) + "," + format_date(day_start(d.day)) + "," +
                 format_double(d.ratio) + "\n";
    for (DayIndex nb : series.negative_balance_days)
      log_warn("negative balance floored: " + account + " on " +
               format_date(day_start(nb)));
  }
  mf.write_output("features.csv", dataset_to_csv(built.dataset));
  mf.write_output("expenditure.csv", exp_csv);
  mf.finish();
  log_info(std::to_string(built.dataset.rows.size()) + " feature rows (" +
           std::to_string(built.dataset.count(Label::Theft)) + " theft)");
  return 0;
}

int cmd_train(const std::string& in_path, const std::string& out_dir,
              const std::string& model, std::uint64_t seed) {
  Manifest mf{"train", out_dir};
  mf.seed = seed;
  mf.add_input(in_path);
  const LabeledDataset full = dataset_from_csv(in_path);
  if (full.count(Label::Theft) == 0)
    throw InputError("no theft rows in " + in_path + "; nothing to train on");
  const auto us = undersample(full, 1.0, seed);
  if (us.too_few_normals) log_warn("fewer normals than theft rows; using all");
  const ModelSpec spec = make_spec(model, seed);
  std::string doc;
  switch (spec.kind) {
    case ModelKind::Forest:
      doc = forest_to_json(train_random_forest(us.dataset, spec.forest));
      break;
    case ModelKind::Tree: {
      ForestModel m;
      m.params = spec.forest;
      m.params.n_trees = 1;
      m.params.bootstrap = false;
      m.params.features_per_split = -1;
      TreeParams tp = spec.tree;
      m.trees.push_back(train_decision_tree(us.dataset, tp));
      doc = forest_to_json(m);
      break;
    }
    case ModelKind::Logistic:
      doc = logistic_to_json(train_logistic(us.dataset, spec.logistic));
      break;
    case ModelKind::Mlp:
      doc = mlp_to_json(train_mlp(us.dataset, spec.mlp));
      break;
  }
  mf.write_output("model_" + model + ".json", doc);
  mf.finish();
  return 0;
}

int cmd_evaluate(const std::string& in_path, const std::string& out_dir,
                 const std::string& model, int k, std::uint64_t seed) {
  Manifest mf{"evaluate", out_dir};
  mf.seed = seed;
  mf.add_input(in_path);
  const LabeledDataset full = dataset_from_csv(in_path);
  if (full.count(Label::Theft) == 0)
    throw InputError("no theft rows in " + in_path + "; nothing to evaluate");
  const ModelSpec spec = make_spec(model, seed);
  const auto us = undersample(full, 1.0, seed);
  const EvalReport overall = cross_validate(us.dataset, spec, k, seed);
  const PerTypeEvalReport per_type = per_type_evaluation(full, spec, k, seed);

  json j;
  j["model"] = model;
  j["k"] = k;
  j["seed"] = seed;
  j["n_rows"] = full.rows.size();
  j["n_theft"] = full.count(Label::Theft);
  j["undersampled_rows"] = us.dataset.rows.size();
  j["overall"] = report_to_json(overall);
  json types = json::array();
  for (const auto& row : per_type.rows) {
    json t;
    t["type"] = static_cast<int>(row.type);
    t["n_theft"] = row.n_theft;
    t["n_normal"] = row.n_normal;
    t["report"] = report_to_json(row.report);
    types.push_back(std::move(t));
  }
  j["per_type"] = types;
  json skipped = json::array();
  for (const auto s : per_type.skipped) skipped.push_back(static_cast<int>(s));
  j["skipped_types"] = skipped;
  mf.write_output("eval_" + model + ".json", j.dump(2) + "\n");
  mf.finish();
  if (overall.metrics.accuracy)
    log_info(model + " accuracy " + format_double(*overall.metrics.accuracy));
  return 0;
}

int cmd_trace(const std::string& in_path, const std::string& truth_path,
              const std::string& out_dir) {
  Manifest mf{"trace", out_dir};
  mf.add_input(in_path);
  mf.add_input(truth_path);
  const auto events = load_events_strict(in_path);
  const auto truth = load_truth(truth_path);
  const auto filtered = filter_events(events);
  const auto sr = sessionize(filtered);

  std::vector<TheftCase> cases;
  for (const auto& [victim, day] : truth.theft_dates) cases.push_back({victim, day});
  const auto bl = build_ip_blacklist(sr.sessions, cases);
  for (const auto& c : bl.no_session_cases)
    log_warn("no theft-date session for victim " + c.victim_account);

  std::set<std::string> blacklisted_accounts;
  for (const auto& s : sr.sessions)
    if (bl.blacklist.contains(s.ip)) blacklisted_accounts.insert(s.account);
  std::set<std::string> victims(truth.victims.begin(), truth.victims.end());

  const auto gr = build_trade_graph(filtered, blacklisted_accounts, victims);
  for (const auto& ev : gr.self_trades)
    log_warn("self trade dropped: " + ev.account + "@" + format_timestamp(ev.ts));
  const auto groups = label_groups(gr.graph, bl.blacklist, sr.sessions);
  const auto roles = infer_gfg_roles(gr.graph, victims);
  for (const auto& acct : roles.temporal_cycle_accounts)
    log_warn("temporal cycle: " + acct + " excluded from role assignment");
  const auto flows = trace_money_flow(gr.graph, victims);

  json blj;
  json ips = json::object();
  for (const auto& [ip, entries] : bl.blacklist.ips) {
    json arr = json::array();
    for (const auto& e : entries)
      arr.push_back({{"victim", e.victim_account},
                     {"theft_date", format_date(day_start(e.theft_day))}});
    ips[ip] = std::move(arr);
  }
  blj["ips"] = ips;
  json skipped = json::array();
  for (const auto& c : bl.no_session_cases) skipped.push_back(c.victim_account);
  blj["no_session_victims"] = skipped;

  std::string groups_csv = "account,group,role\n";
  for (const auto& [acct, group] : groups) {
    const auto rit = roles.roles.find(acct);
    const std::string role(rit == roles.roles.end() ? "None"
                                                    : role_name(rit->second));
    groups_csv +=
        csv_field(acct) + "," + std::string(group_name(group)) + "," + role + "\n";
  }

  mf.write_output("blacklist.json", blj.dump(2) + "\n");
  mf.write_output("groups.csv", groups_csv);
  mf.write_output("flows.json", flow_paths_to_json(flows));
  mf.write_output("trade_graph.dot", export_dot(gr.graph, groups, roles.roles));
  mf.finish();
  log_info(std::to_string(flows.size()) + " money-flow paths, " +
           std::to_string(bl.blacklist.ips.size()) + " blacklisted IPs");
  return 0;
}

std::string cell(const json& metrics, const char* name) {
  const auto& v = metrics.at(name);
  return v.is_null() ? "n/a" : format_double(v.get<double>());
}

int cmd_report(const std::string& in_dir, const std::string& out_dir) {
  Manifest mf{"report", out_dir};
  const fs::path in(in_dir);

  // Table-4 layout: one metric per row, one model per column
  std::map<std::string, json> evals;  // column label -> metrics json
  const std::pair<const char*, const char*> wanted[] = {
      {"mlp", "MLP"}, {"logistic", "Logistic"}, {"forest", "RandomForest"}};
  json forest_types;
  for (const auto& [file_key, label] : wanted) {
    const fs::path p = in / ("eval_" + std::string(file_key) + ".json");
    if (!fs::exists(p)) continue;
    mf.add_input(p);
    const json j = json::parse(read_file(p));
    evals[label] = j.at("overall").at("metrics");
    if (std::string(file_key) == "forest") forest_types = j.at("per_type");
  }
  if (evals.empty())
    throw InputError("no eval_<model>.json files found in " + in_dir);

  std::string t4 = "metric";
  for (const auto& [_, label] : wanted)
    if (evals.count(label)) t4 += "," + std::string(label);
  t4 += "\n";
  for (const char* metric : {"precision", "recall", "accuracy"}) {
    t4 += metric;
    for (const auto& [_, label] : wanted)
      if (evals.count(label)) t4 += "," + cell(evals.at(label), metric);
    t4 += "\n";
  }
  mf.write_output("table4.csv", t4);

  std::string t5 = "type,precision,recall,accuracy\n";
  if (!forest_types.is_null())
    for (const auto& row : forest_types) {
      const auto& m = row.at("report").at("metrics");
      t5 += std::to_string(row.at("type").get<int>()) + "," +
            cell(m, "precision") + "," + cell(m, "recall") + "," +
            cell(m, "accuracy") + "\n";
    }
  mf.write_output("table5.csv", t5);

  const fs::path dot = in / "trade_graph.dot";
  if (fs::exists(dot)) {
    mf.add_input(dot);
    mf.write_output("trade_graph.dot", read_file(dot));
  }
  mf.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"theft-trace: account-theft detection pipeline"};
  app.require_subcommand(1);

  std::string in_path, out_dir = ".", config_path, truth_path, model = "forest";
  std::uint64_t seed = 0;
  int k = 10;
  double min_support = 0.6;

  auto* c_gen = app.add_subcommand("generate", "emit a synthetic scenario");
  c_gen->add_option("--config", config_path, "scenario config file");
  c_gen->add_option("--out", out_dir, "output directory");
  auto* gen_seed = c_gen->add_option("--seed", seed, "override scenario seed");

  auto add_io = [&](CLI::App* c, bool need_in = true) {
    if (need_in) c->add_option("--in", in_path, "input path")->required();
    c->add_option("--out", out_dir, "output directory");
    return c;
  };
  auto* c_ing = add_io(app.add_subcommand("ingest", "parse + filter a JSON-lines log"));
  auto* c_ses = add_io(app.add_subcommand("sessions", "sessionize a clean log"));
  auto* c_seq = add_io(app.add_subcommand("sequences", "action strings, motifs, mined patterns"));
  c_seq->add_option("--min-support", min_support, "pattern support fraction");
  auto* c_fea = add_io(app.add_subcommand("features", "feature matrix + expenditure series"));
  c_fea->add_option("--truth", truth_path, "ground_truth.json (default: next to --in)");
  auto* c_tra = add_io(app.add_subcommand("train", "train a model on a feature CSV"));
  c_tra->add_option("--model", model, "forest|logistic|mlp|tree");
  c_tra->add_option("--seed", seed, "sampling/model seed");
  auto* c_eva = add_io(app.add_subcommand("evaluate", "cross-validated evaluation"));
  c_eva->add_option("--model", model, "forest|logistic|mlp|tree");
  c_eva->add_option("--seed", seed, "sampling/model seed");
  c_eva->add_option("--k", k, "cross-validation folds");
  auto* c_trc = add_io(app.add_subcommand("trace", "trade-network tracing"));
  c_trc->add_option("--truth", truth_path, "ground_truth.json (default: next to --in)");
  auto* c_rep = add_io(app.add_subcommand("report", "collate evaluation tables"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (truth_path.empty() && !in_path.empty())
      truth_path = (fs::path(in_path).parent_path() / "ground_truth.json").string();
    if (c_gen->parsed())
      return cmd_generate(config_path, out_dir, seed, gen_seed->count() > 0);
    if (c_ing->parsed()) return cmd_ingest(in_path, out_dir);
    if (c_ses->parsed()) return cmd_sessions(in_path, out_dir);
    if (c_seq->parsed()) return cmd_sequences(in_path, out_dir, min_support);
    if (c_fea->parsed()) return cmd_features(in_path, truth_path, out_dir);
    if (c_tra->parsed()) return cmd_train(in_path, out_dir, model, seed);
    if (c_eva->parsed()) return cmd_evaluate(in_path, out_dir, model, k, seed);
    if (c_trc->parsed()) return cmd_trace(in_path, truth_path, out_dir);
    if (c_rep->parsed()) return cmd_report(in_path, out_dir);
    std::cerr << app.help();
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleConfig& e) {
    std::cerr << "error: infeasible scenario: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
