#pragma once
// Report model and serialization. A report is the complete, machine-readable
// outcome of running an instance file: one entry per task, each carrying its
// verdicts, witnesses, notes, and (for theorem tasks) the cross-check
// agreement. Emission is byte-deterministic: map keys are ordered, doubles
// render identically for identical bit patterns, and wall-clock timings are
// omitted unless explicitly requested.

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "koethe/operators.hpp"
#include "koethe/symbolic.hpp"
#include "koethe/verdict.hpp"
#include "koethe/version.hpp"

namespace koethe {

/// Symbolic cross-check attached to a task when its inputs lie inside the
/// closed-form grammar: the exact status plus the rule and witness text.
struct SymbolicInfo {
  Status status = Status::inconclusive;
  std::string rule;
  std::string witness;
};

struct TaskResult {
  std::string id;
  std::string op;
  Status status = Status::inconclusive;      // conjunction over the task's verdicts
  std::optional<Agreement> agreement;        // theorem1 / theorem2 only
  std::string error;                         // non-empty: task aborted, fields below unset

  Verdict verdict;                           // primary verdict (certificate for theorems)
  std::optional<Verdict> condition_i;        // theorem tasks: first criterion
  std::optional<Verdict> condition_ii;       // theorem tasks: second criterion
  std::vector<std::pair<std::string, Status>> preconditions;
  bool preconditions_ok = true;
  std::optional<bool> theta1_zero;           // theorem2: leading symbol vanished

  std::optional<SymbolicInfo> symbolic;      // present when grammar covers the task
  std::optional<CertifiedValue> value;       // certify
  int value_k = 0;                           // certify: weight index
  std::string value_norm;                    // certify: "l1" | "sup"
  std::vector<LogValue> values;              // convolve
  std::vector<std::string> notes;
  double wall_ms = 0.0;                      // emitted only with timings enabled
};

struct ReportSummary {
  long holds = 0, fails = 0, inconclusive = 0;
  long consistent = 0, contradiction = 0, undetermined = 0;
  long errors = 0;
  int exit_code = 0;
};

struct Report {
  std::string instance_name;
  std::uint64_t instance_hash = 0;
  Budget budgets;
  bool include_timings = false;
  std::vector<TaskResult> tasks;

  ReportSummary summary() const {
    ReportSummary s;
    for (const TaskResult& t : tasks) {
      if (!t.error.empty()) {
        ++s.errors;
        continue;
      }
      if (t.agreement) {
        switch (*t.agreement) {
          case Agreement::consistent: ++s.consistent; break;
          case Agreement::contradiction: ++s.contradiction; break;
          case Agreement::undetermined: ++s.undetermined; break;
        }
      } else {
        switch (t.status) {
          case Status::holds: ++s.holds; break;
          case Status::fails: ++s.fails; break;
          case Status::inconclusive: ++s.inconclusive; break;
        }
      }
    }
    if (s.contradiction > 0)
      s.exit_code = 3;
    else if (s.errors > 0 || s.fails > 0 || s.inconclusive > 0 || s.undetermined > 0)
      s.exit_code = 2;
    else
      s.exit_code = 0;
    return s;
  }
};

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hash_text(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace report_detail {

using ojson = nlohmann::ordered_json;

inline ojson lv_json(const LogValue& v) {
  ojson j;
  j["sign"] = v.sign;
  if (v.sign == 0 || !std::isfinite(v.logmag))
    j["log"] = nullptr;
  else
    j["log"] = v.logmag;
  j["decimal"] = to_decimal_string(v);
  return j;
}

inline LogValue lv_parse(const ojson& j) {
  int sign = j.at("sign").get<int>();
  if (sign == 0 || j.at("log").is_null()) return LogValue::zero();
  return LogValue::from_log(sign, j.at("log").get<double>());
}

inline const char* tail_kind_name(TailArgument::Kind k) {
  switch (k) {
    case TailArgument::Kind::none: return "none";
    case TailArgument::Kind::ratio_domination: return "ratio_domination";
    case TailArgument::Kind::closed_form: return "closed_form";
  }
  return "?";
}

inline ojson tail_json(const TailArgument& t) {
  ojson j;
  j["kind"] = tail_kind_name(t.kind);
  if (t.kind == TailArgument::Kind::ratio_domination) {
    j["start_index"] = t.start_index;
    j["ratio"] = t.ratio;
  } else if (t.kind == TailArgument::Kind::closed_form) {
    j["rule"] = t.rule;
  }
  return j;
}

inline TailArgument tail_parse(const ojson& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "ratio_domination")
    return TailArgument::from_ratio(j.at("start_index").get<long>(), j.at("ratio").get<double>());
  if (kind == "closed_form") return TailArgument::closed(j.at("rule").get<std::string>());
  return TailArgument::none();
}

inline ojson witness_json(const Witness& w) {
  ojson j;
  if (const auto* b = std::get_if<WitnessBound>(&w)) {
    j["type"] = "bound";
    j["k"] = b->k;
    j["partner"] = b->partner;
    j["C"] = lv_json(b->bound);
    j["verified_up_to"] = b->verified_up_to;
    j["tail"] = tail_json(b->tail);
  } else {
    const auto& t = std::get<DivergenceTrace>(w);
    j["type"] = "trace";
    j["k"] = t.k;
    j["partner"] = t.partner;
    ojson idx = ojson::array(), vals = ojson::array();
    for (long i : t.indices) idx.push_back(i);
    for (const LogValue& v : t.values) vals.push_back(lv_json(v));
    j["indices"] = std::move(idx);
    j["values"] = std::move(vals);
  }
  return j;
}

inline Witness witness_parse(const ojson& j) {
  if (j.at("type").get<std::string>() == "bound") {
    WitnessBound b;
    b.k = j.at("k").get<int>();
    b.partner = j.at("partner").get<int>();
    b.bound = lv_parse(j.at("C"));
    b.verified_up_to = j.at("verified_up_to").get<long>();
    b.tail = tail_parse(j.at("tail"));
    return b;
  }
  DivergenceTrace t;
  t.k = j.at("k").get<int>();
  t.partner = j.at("partner").get<int>();
  for (const auto& i : j.at("indices")) t.indices.push_back(i.get<long>());
  for (const auto& v : j.at("values")) t.values.push_back(lv_parse(v));
  return t;
}

inline ojson verdict_json(const Verdict& v) {
  ojson j;
  j["status"] = to_string(v.status);
  ojson ws = ojson::array();
  for (const Witness& w : v.witnesses) ws.push_back(witness_json(w));
  j["witnesses"] = std::move(ws);
  ojson pw = ojson::array();
  for (const PerWeight& p : v.per_weight) {
    ojson row;
    row["k"] = p.k;
    row["status"] = to_string(p.status);
    row["partner"] = p.partner;
    row["C"] = p.bound ? lv_json(*p.bound) : ojson(nullptr);
    row["verified_up_to"] = p.verified_up_to;
    pw.push_back(std::move(row));
  }
  j["per_weight"] = std::move(pw);
  j["notes"] = v.notes;
  return j;
}

inline Status status_parse(const std::string& s) {
  if (s == "Holds") return Status::holds;
  if (s == "Fails") return Status::fails;
  if (s == "Inconclusive") return Status::inconclusive;
  throw std::invalid_argument("unknown status string: " + s);
}

inline Agreement agreement_parse(const std::string& s) {
  if (s == "Consistent") return Agreement::consistent;
  if (s == "Contradiction") return Agreement::contradiction;
  if (s == "Undetermined") return Agreement::undetermined;
  throw std::invalid_argument("unknown agreement string: " + s);
}

inline Verdict verdict_parse(const ojson& j) {
  Verdict v;
  v.status = status_parse(j.at("status").get<std::string>());
  for (const auto& w : j.at("witnesses")) v.witnesses.push_back(witness_parse(w));
  for (const auto& row : j.at("per_weight")) {
    PerWeight p;
    p.k = row.at("k").get<int>();
    p.status = status_parse(row.at("status").get<std::string>());
    p.partner = row.at("partner").get<int>();
    if (!row.at("C").is_null()) p.bound = lv_parse(row.at("C"));
    p.verified_up_to = row.at("verified_up_to").get<long>();
    v.per_weight.push_back(std::move(p));
  }
  v.notes = j.at("notes").get<std::vector<std::string>>();
  return v;
}

inline ojson certified_json(const CertifiedValue& c) {
  ojson j;
  j["value"] = lv_json(c.value);
  j["tail_bound"] = lv_json(c.tail_bound);
  j["tail"] = tail_json(c.tail);
  j["divergent"] = c.divergent;
  j["verified_up_to"] = c.verified_up_to;
  j["certified"] = c.certified();
  j["upper"] = lv_json(c.upper());
  return j;
}

inline CertifiedValue certified_parse(const ojson& j) {
  CertifiedValue c;
  c.value = lv_parse(j.at("value"));
  c.tail_bound = lv_parse(j.at("tail_bound"));
  c.tail = tail_parse(j.at("tail"));
  c.divergent = j.at("divergent").get<bool>();
  c.verified_up_to = j.at("verified_up_to").get<long>();
  return c;
}

} // namespace report_detail

inline nlohmann::ordered_json emit_json(const Report& r) {
  using namespace report_detail;
  ojson j;
  j["schema"] = report_schema;
  j["tool"] = ojson{{"name", tool_name}, {"version", tool_version}};
  j["instance"] = ojson{{"name", r.instance_name}, {"hash", hash_text(r.instance_hash)}};
  j["budgets"] = ojson{{"N", r.budgets.N},
                       {"k_max", r.budgets.k_max},
                       {"m_max", r.budgets.m_max},
                       {"j_max", r.budgets.j_max}};
  ojson tasks = ojson::array();
  for (const TaskResult& t : r.tasks) {
    ojson tj;
    tj["id"] = t.id;
    tj["op"] = t.op;
    if (!t.error.empty()) {
      tj["error"] = t.error;
      tasks.push_back(std::move(tj));
      continue;
    }
    tj["status"] = to_string(t.status);
    if (t.agreement) tj["agreement"] = to_string(*t.agreement);
    tj["verdict"] = verdict_json(t.verdict);
    if (t.condition_i) tj["condition_i"] = verdict_json(*t.condition_i);
    if (t.condition_ii) tj["condition_ii"] = verdict_json(*t.condition_ii);
    if (!t.preconditions.empty()) {
      ojson pre = ojson::array();
      for (const auto& [name, st] : t.preconditions)
        pre.push_back(ojson{{"check", name}, {"status", to_string(st)}});
      tj["preconditions"] = std::move(pre);
      tj["preconditions_ok"] = t.preconditions_ok;
    }
    if (t.theta1_zero) tj["theta1_zero"] = *t.theta1_zero;
    if (t.symbolic)
      tj["symbolic"] = ojson{{"status", to_string(t.symbolic->status)},
                             {"rule", t.symbolic->rule},
                             {"witness", t.symbolic->witness}};
    if (t.value) {
      tj["k"] = t.value_k;
      tj["norm"] = t.value_norm;
      tj["value"] = certified_json(*t.value);
    }
    if (!t.values.empty()) {
      ojson vs = ojson::array();
      for (const LogValue& v : t.values) vs.push_back(lv_json(v));
      tj["values"] = std::move(vs);
    }
    tj["notes"] = t.notes;
    if (r.include_timings) tj["wall_ms"] = t.wall_ms;
    tasks.push_back(std::move(tj));
  }
  j["tasks"] = std::move(tasks);
  ReportSummary s = r.summary();
  j["summary"] = ojson{{"holds", s.holds},           {"fails", s.fails},
                       {"inconclusive", s.inconclusive}, {"consistent", s.consistent},
                       {"contradiction", s.contradiction}, {"undetermined", s.undetermined},
                       {"errors", s.errors},          {"exit_code", s.exit_code}};
  return j;
}

inline Report parse_report(const nlohmann::ordered_json& j) {
  using namespace report_detail;
  Report r;
  if (j.at("schema").get<std::string>() != report_schema)
    throw std::invalid_argument("unsupported report schema");
  r.instance_name = j.at("instance").at("name").get<std::string>();
  {
    std::string h = j.at("instance").at("hash").get<std::string>();
    const std::string prefix = "fnv1a64:";
    if (h.rfind(prefix, 0) == 0)
      r.instance_hash = std::stoull(h.substr(prefix.size()), nullptr, 16);
  }
  r.budgets.N = j.at("budgets").at("N").get<long>();
  r.budgets.k_max = j.at("budgets").at("k_max").get<int>();
  r.budgets.m_max = j.at("budgets").at("m_max").get<int>();
  r.budgets.j_max = j.at("budgets").at("j_max").get<int>();
  for (const auto& tj : j.at("tasks")) {
    TaskResult t;
    t.id = tj.at("id").get<std::string>();
    t.op = tj.at("op").get<std::string>();
    if (tj.contains("error")) {
      t.error = tj.at("error").get<std::string>();
      r.tasks.push_back(std::move(t));
      continue;
    }
    t.status = status_parse(tj.at("status").get<std::string>());
    if (tj.contains("agreement"))
      t.agreement = agreement_parse(tj.at("agreement").get<std::string>());
    t.verdict = verdict_parse(tj.at("verdict"));
    if (tj.contains("condition_i")) t.condition_i = verdict_parse(tj.at("condition_i"));
    if (tj.contains("condition_ii")) t.condition_ii = verdict_parse(tj.at("condition_ii"));
    if (tj.contains("preconditions")) {
      for (const auto& p : tj.at("preconditions"))
        t.preconditions.emplace_back(p.at("check").get<std::string>(),
                                     status_parse(p.at("status").get<std::string>()));
      t.preconditions_ok = tj.at("preconditions_ok").get<bool>();
    }
    if (tj.contains("theta1_zero")) t.theta1_zero = tj.at("theta1_zero").get<bool>();
    if (tj.contains("symbolic")) {
      SymbolicInfo s;
      s.status = status_parse(tj.at("symbolic").at("status").get<std::string>());
      s.rule = tj.at("symbolic").at("rule").get<std::string>();
      s.witness = tj.at("symbolic").at("witness").get<std::string>();
      t.symbolic = std::move(s);
    }
    if (tj.contains("value")) {
      t.value = certified_parse(tj.at("value"));
      t.value_k = tj.at("k").get<int>();
      t.value_norm = tj.at("norm").get<std::string>();
    }
    if (tj.contains("values"))
      for (const auto& v : tj.at("values")) t.values.push_back(lv_parse(v));
    t.notes = tj.at("notes").get<std::vector<std::string>>();
    if (tj.contains("wall_ms")) {
      t.wall_ms = tj.at("wall_ms").get<double>();
      r.include_timings = true;
    }
    r.tasks.push_back(std::move(t));
  }
  return r;
}

/// Structural validation of an emitted report document. Returns a list of
/// problems; an empty list means the document conforms.
inline std::vector<std::string> validate_report_json(const nlohmann::ordered_json& j) {
  std::vector<std::string> problems;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) problems.push_back(msg);
  };
  check(j.is_object(), "top level must be an object");
  if (!j.is_object()) return problems;
  check(j.value("schema", "") == report_schema, "schema must be \"" + std::string(report_schema) + "\"");
  check(j.contains("tool") && j["tool"].is_object() && j["tool"].contains("name") &&
            j["tool"].contains("version"),
        "tool block missing name/version");
  check(j.contains("instance") && j["instance"].is_object() && j["instance"].contains("hash"),
        "instance block missing hash");
  if (j.contains("instance") && j["instance"].contains("hash")) {
    std::string h = j["instance"]["hash"].get<std::string>();
    check(h.rfind("fnv1a64:", 0) == 0 && h.size() == 8 + 16, "instance hash must be fnv1a64:<16 hex>");
  }
  check(j.contains("budgets") && j["budgets"].is_object(), "budgets block missing");
  if (j.contains("budgets"))
    for (const char* key : {"N", "k_max", "m_max", "j_max"})
      check(j["budgets"].contains(key) && j["budgets"][key].is_number_integer() &&
                j["budgets"][key].get<long>() >= 1,
            std::string("budgets.") + key + " must be a positive integer");
  const std::set<std::string> statuses = {"Holds", "Fails", "Inconclusive"};
  const std::set<std::string> agreements = {"Consistent", "Contradiction", "Undetermined"};
  check(j.contains("tasks") && j["tasks"].is_array(), "tasks must be an array");
  if (j.contains("tasks") && j["tasks"].is_array()) {
    int n = 0;
    for (const auto& t : j["tasks"]) {
      ++n;
      std::string where = "task " + std::to_string(n);
      check(t.contains("id") && t.contains("op"), where + ": id/op required");
      if (t.contains("error")) continue;
      check(t.contains("status") && statuses.count(t.value("status", "")) == 1,
            where + ": status must be Holds/Fails/Inconclusive");
      if (t.contains("agreement"))
        check(agreements.count(t.value("agreement", "")) == 1, where + ": bad agreement value");
      check(t.contains("verdict") && t["verdict"].is_object() && t["verdict"].contains("status") &&
                t["verdict"].contains("witnesses") && t["verdict"].contains("per_weight"),
            where + ": verdict must carry status/witnesses/per_weight");
      if (t.contains("verdict") && t["verdict"].contains("per_weight"))
        for (const auto& row : t["verdict"]["per_weight"])
          check(row.contains("k") && row.contains("status") && row.contains("partner") &&
                    row.contains("verified_up_to"),
                where + ": per_weight row incomplete");
    }
  }
  check(j.contains("summary") && j["summary"].is_object() && j["summary"].contains("exit_code"),
        "summary block missing exit_code");
  if (j.contains("summary") && j["summary"].contains("exit_code")) {
    int code = j["summary"]["exit_code"].get<int>();
    check(code == 0 || code == 2 || code == 3, "summary exit_code must be 0, 2, or 3");
  }
  return problems;
}

namespace report_detail {

inline void render_per_weight(std::ostringstream& out, const Verdict& v, const char* indent) {
  for (const PerWeight& p : v.per_weight) {
    out << indent << "k=" << p.k << " → ";
    if (p.status == Status::holds) {
      out << "(";
      if (p.partner >= 0) out << "m=" << p.partner << ", ";
      out << "C=" << (p.bound ? to_decimal_string(*p.bound) : std::string("?")) << ")";
    } else {
      out << to_string(p.status);
      if (p.status == Status::fails) out << " (diverges; verified to n=" << p.verified_up_to << ")";
    }
    out << "\n";
  }
}

} // namespace report_detail

inline std::string emit_text(const Report& r) {
  using namespace report_detail;
  std::ostringstream out;
  out << tool_name << " " << tool_version << " — report\n";
  out << "instance: " << r.instance_name << " (" << hash_text(r.instance_hash) << ")\n";
  out << "budgets: N=" << r.budgets.N << " k_max=" << r.budgets.k_max
      << " m_max=" << r.budgets.m_max << " j_max=" << r.budgets.j_max << "\n\n";
  for (const TaskResult& t : r.tasks) {
    out << "[" << t.id << "] " << t.op;
    if (!t.error.empty()) {
      out << " — error: " << t.error << "\n\n";
      continue;
    }
    if (t.agreement)
      out << " — agreement: " << to_string(*t.agreement) << "\n";
    else
      out << " — " << to_string(t.status) << "\n";
    if (r.include_timings) {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "  wall: %.2f ms\n", t.wall_ms);
      out << buf;
    }
    if (t.agreement) {
      out << "  certificate: " << to_string(t.verdict.status) << "\n";
      render_per_weight(out, t.verdict, "    ");
      if (t.condition_i) {
        out << "  condition (i): " << to_string(t.condition_i->status) << "\n";
        render_per_weight(out, *t.condition_i, "    ");
      }
      if (t.condition_ii) {
        out << "  condition (ii): " << to_string(t.condition_ii->status) << "\n";
        render_per_weight(out, *t.condition_ii, "    ");
      }
      if (!t.preconditions.empty()) {
        out << "  preconditions:";
        for (const auto& [name, st] : t.preconditions) out << " " << name << "=" << to_string(st);
        out << "\n";
      }
      if (t.theta1_zero && *t.theta1_zero) out << "  note: leading symbol entry is zero\n";
    } else if (t.value) {
      const CertifiedValue& c = *t.value;
      out << "  seminorm(" << t.value_norm << ", k=" << t.value_k << ") = "
          << to_decimal_string(c.value);
      if (c.divergent)
        out << " (divergent lower bound)";
      else if (c.certified())
        out << "  [exact value ≤ " << to_decimal_string(c.upper()) << ", tail "
            << to_decimal_string(c.tail_bound) << "]";
      else
        out << " (lower bound only; tail not certified)";
      out << "\n";
    } else if (!t.values.empty()) {
      out << "  entries:";
      for (const LogValue& v : t.values) out << " " << to_decimal_string(v);
      out << "\n";
    } else {
      render_per_weight(out, t.verdict, "  ");
    }
    if (t.symbolic)
      out << "  symbolic: " << to_string(t.symbolic->status) << " [" << t.symbolic->rule << "]"
          << (t.symbolic->witness.empty() ? "" : " " + t.symbolic->witness) << "\n";
    for (const std::string& n : t.notes) out << "  note: " << n << "\n";
    for (const std::string& n : t.verdict.notes) out << "  note: " << n << "\n";
    out << "\n";
  }
  ReportSummary s = r.summary();
  out << "summary: holds=" << s.holds << " fails=" << s.fails << " inconclusive=" << s.inconclusive
      << " consistent=" << s.consistent << " contradiction=" << s.contradiction
      << " undetermined=" << s.undetermined << " errors=" << s.errors
      << " exit=" << s.exit_code << "\n";
  return out.str();
}

inline std::string emit_csv(const Report& r) {
  std::ostringstream out;
  out << "task,k,status,m,C_log,verified_up_to\n";
  char num[64];
  auto emit_row = [&](const std::string& id, int k, Status st, int partner,
                      const std::optional<LogValue>& bound, long verified) {
    out << id << "," << k << "," << to_string(st) << ",";
    if (partner >= 0) out << partner;
    out << ",";
    if (bound && bound->sign != 0) {
      std::snprintf(num, sizeof(num), "%.17g", bound->logmag);
      out << num;
    }
    out << "," << verified << "\n";
  };
  for (const TaskResult& t : r.tasks) {
    if (!t.error.empty()) continue;
    if (t.value) {
      Status st = t.value->divergent ? Status::fails
                                     : (t.value->certified() ? Status::holds : Status::inconclusive);
      emit_row(t.id, t.value_k, st, -1, t.value->value, t.value->verified_up_to);
      continue;
    }
    for (const PerWeight& p : t.verdict.per_weight)
      emit_row(t.id, p.k, p.status, p.partner, p.bound, p.verified_up_to);
  }
  return out.str();
}

} // namespace koethe
