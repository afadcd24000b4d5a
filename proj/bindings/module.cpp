#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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

namespace py = pybind11;
using namespace theft_trace;

namespace {

std::vector<GameEvent> parse_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::vector<GameEvent> events;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) events.push_back(parse_log_line(line));
  return events;
}

std::vector<Session> sessions_of(const std::string& jsonl) {
  return sessionize(filter_events(parse_jsonl(jsonl))).sessions;
}

py::dict metrics_dict(const Metrics& m) {
  py::dict d;
  d["precision"] = m.precision ? py::cast(*m.precision) : py::none();
  d["recall"] = m.recall ? py::cast(*m.recall) : py::none();
  d["accuracy"] = m.accuracy ? py::cast(*m.accuracy) : py::none();
  return d;
}

LabeledDataset dataset_from_rows(const std::vector<std::vector<double>>& x,
                                 const std::vector<int>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("features and labels differ in length");
  LabeledDataset d;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != kFeatureCount)
      throw std::invalid_argument("feature row must have 20 values");
    LabeledRow row;
    for (int j = 0; j < kFeatureCount; ++j) row.features[j] = x[i][j];
    row.label = y[i] ? Label::Theft : Label::Normal;
    row.session_type =
        classify_session_duration(static_cast<Timestamp>(row.features[kPlaytimeS]))
            .type;
    row.session_index = static_cast<int>(i);
    d.rows.push_back(std::move(row));
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_theft_trace, m) {
  m.doc() = "account-theft detection pipeline (C++ core)";

  m.def("generate_scenario",
        [](const std::string& config_text, std::optional<std::uint64_t> seed) {
          ScenarioConfig cfg = config_text.empty()
                                   ? ScenarioConfig{}
                                   : parse_scenario_config(config_text);
          if (seed) cfg.seed = *seed;
          const ScenarioOutput out = generate_scenario(cfg);
          std::string jsonl;
          for (const auto& ev : out.events) {
            jsonl += serialize_event(ev);
            jsonl += '\n';
          }
          py::dict d;
          d["events_jsonl"] = jsonl;
          d["ground_truth_json"] = out.truth.to_json();
          d["config_text"] = scenario_config_to_text(cfg);
          return d;
        },
        py::arg("config_text") = "", py::arg("seed") = py::none());

  m.def("parse_event_count",
        [](const std::string& jsonl) { return parse_jsonl(jsonl).size(); },
        py::arg("jsonl"));

  m.def("encode_sessions",
        [](const std::string& jsonl) {
          py::list rows;
          for (const auto& s : sessions_of(jsonl)) {
            const auto dur = classify_session_duration(s.duration_s());
            rows.append(py::make_tuple(s.account, format_timestamp(s.login_ts),
                                       static_cast<int>(dur.type),
                                       encode_session(s)));
          }
          return rows;
        },
        py::arg("jsonl"));

  m.def("mine_common_sequences",
        [](const std::vector<std::string>& strings, double min_support_frac,
           int max_len) {
          py::list out;
          for (const auto& p :
               mine_common_sequences(strings, min_support_frac, max_len))
            out.append(py::make_tuple(p.chars, p.support));
          return out;
        },
        py::arg("strings"), py::arg("min_support_frac") = 1.0,
        py::arg("max_len") = 12);

  m.def("match_motifs",
        [](const std::string& action_string) {
          py::list out;
          for (const auto& hit : match_motifs(action_string))
            out.append(py::make_tuple(std::string(motif_name(hit.motif)),
                                      hit.start, hit.end));
          return out;
        },
        py::arg("action_string"));

  m.def("expenditure_ratio", &expenditure_ratio, py::arg("daily_used"),
        py::arg("opening_amount"));

  m.def("classify_session_duration",
        [](std::int64_t duration_s) {
          const auto d = classify_session_duration(duration_s);
          return py::make_tuple(static_cast<int>(d.type),
                                d.subtype == Type4Subtype::MoreThanHour);
        },
        py::arg("duration_s"));

  m.def("feature_names", [] {
    return std::vector<std::string>(feature_names().begin(), feature_names().end());
  });

  m.def("extract_dataset",
        [](const std::string& jsonl, const std::string& truth_json) {
          const GroundTruth truth = GroundTruth::from_json(truth_json);
          std::map<std::pair<std::string, Timestamp>, const SessionLabel*> idx;
          for (const auto& s : truth.sessions) idx[{s.account, s.login_ts}] = &s;
          std::vector<std::vector<double>> xs;
          std::vector<int> ys;
          for (const auto& s : sessions_of(jsonl)) {
            const auto it = idx.find({s.account, s.login_ts});
            if (it != idx.end() && it->second->label == "infra") continue;
            const auto fv = extract_features(s, encode_session(s));
            xs.emplace_back(fv.values.begin(), fv.values.end());
            ys.push_back(it != idx.end() && it->second->label == "theft" ? 1 : 0);
          }
          return py::make_tuple(xs, ys);
        },
        py::arg("jsonl"), py::arg("truth_json"));

  m.def("cross_validate",
        [](const std::vector<std::vector<double>>& x, const std::vector<int>& y,
           const std::string& model, int k, std::uint64_t seed,
           double undersample_ratio) {
          LabeledDataset d = dataset_from_rows(x, y);
          if (undersample_ratio > 0)
            d = undersample(d, undersample_ratio, seed).dataset;
          ModelSpec spec;
          const auto kind = model_kind_from_name(model);
          if (!kind) throw std::invalid_argument("unknown model '" + model + "'");
          spec.kind = *kind;
          spec.forest.seed = spec.tree.seed = spec.mlp.seed = seed;
          const EvalReport r = cross_validate(d, spec, k, seed);
          py::dict out = metrics_dict(r.metrics);
          out["tp"] = r.confusion.tp;
          out["fp"] = r.confusion.fp;
          out["tn"] = r.confusion.tn;
          out["fn"] = r.confusion.fn;
          return out;
        },
        py::arg("features"), py::arg("labels"), py::arg("model") = "forest",
        py::arg("k") = 10, py::arg("seed") = 0,
        py::arg("undersample_ratio") = 1.0);

  m.def("trace",
        [](const std::string& jsonl, const std::string& truth_json) {
          const auto events = filter_events(parse_jsonl(jsonl));
          const auto sr = sessionize(events);
          const GroundTruth truth = GroundTruth::from_json(truth_json);
          std::vector<TheftCase> cases;
          for (const auto& [victim, day] : truth.theft_dates)
            cases.push_back({victim, day});
          const auto bl = build_ip_blacklist(sr.sessions, cases);
          std::set<std::string> bl_accounts;
          for (const auto& s : sr.sessions)
            if (bl.blacklist.contains(s.ip)) bl_accounts.insert(s.account);
          std::set<std::string> victims(truth.victims.begin(),
                                        truth.victims.end());
          const auto gr = build_trade_graph(events, bl_accounts, victims);
          const auto groups = label_groups(gr.graph, bl.blacklist, sr.sessions);
          const auto roles = infer_gfg_roles(gr.graph, victims);
          const auto flows = trace_money_flow(gr.graph, victims);
          py::dict g, r;
          for (const auto& [acct, grp] : groups)
            g[py::str(acct)] = std::string(group_name(grp));
          for (const auto& [acct, role] : roles.roles)
            r[py::str(acct)] = std::string(role_name(role));
          py::dict out;
          out["groups"] = g;
          out["roles"] = r;
          out["flows_json"] = flow_paths_to_json(flows);
          out["dot"] = export_dot(gr.graph, groups, roles.roles);
          out["blacklist_ips"] = bl.blacklist.ip_set();
          return out;
        },
        py::arg("jsonl"), py::arg("truth_json"));

  m.def("sha256_hex",
        [](const std::string& data) { return sha256_hex(data); },
        py::arg("data"));
}
