#pragma once
// Declarative instance files: JSON documents naming spaces and sequences and
// listing verification tasks over them. Parsing is strict — unknown classes,
// dangling references, and non-positive budgets are reported with the task
// or definition that caused them, and syntax errors carry line/column.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "koethe/matrix.hpp"
#include "koethe/sequence.hpp"
#include "koethe/verdict.hpp"
#include "koethe/version.hpp"

namespace koethe {

struct InstanceError : std::runtime_error {
  explicit InstanceError(const std::string& what) : std::runtime_error(what) {}
};

/// One task line from an instance file. Which fields are meaningful depends
/// on the op; parse_instance validates presence and reference targets.
struct TaskSpec {
  std::string id;
  std::string op;
  std::string space;       // axioms | nuclear | g1 | ginf | certify | membership | dual
  std::string source;      // inclusion
  std::string target;      // inclusion
  std::string sequence;    // membership | dual | certify
  std::string a, b, theta; // theorem1 | theorem2 | normality
  std::string eta;         // normality
  std::string direction;   // normality: "forward" | "transpose"
  std::string x, y;        // convolve
  long N = 0;              // convolve
  int k = 0;               // certify
  std::string norm;        // certify: "l1" | "sup"
  bool g_extras = false;   // axioms
};

struct InstanceFile {
  std::string name;
  Budget budgets;
  std::map<std::string, KoetheMatrix> spaces;
  std::map<std::string, ScalarSequence> sequences;
  std::vector<TaskSpec> tasks;
  std::string raw_text;  // exact file bytes, hashed for report identity
};

namespace instance_detail {

using nlohmann::json;

inline std::pair<int, int> line_col(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end())
    throw InstanceError(where + ": missing required field \"" + key + "\"");
  return *it;
}

inline std::string need_string(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_string()) throw InstanceError(where + ": field \"" + key + "\" must be a string");
  return v.get<std::string>();
}

inline double need_number(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number()) throw InstanceError(where + ": field \"" + key + "\" must be a number");
  return v.get<double>();
}

inline double opt_number(const json& j, const char* key, double fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  return it->get<double>();
}

inline ExponentSequence parse_alpha(const json& j, const std::string& where) {
  std::string form = need_string(j, "form", where);
  if (form == "Linear") return ExponentSequence::linear(need_number(j, "c", where));
  if (form == "Log") return ExponentSequence::log_form();
  if (form == "PowerLog")
    return ExponentSequence::power_log(need_number(j, "c", where), need_number(j, "p", where),
                                       need_number(j, "q", where));
  if (form == "Table") {
    const json& v = need(j, "values", where);
    if (!v.is_array()) throw InstanceError(where + ": \"values\" must be an array");
    return ExponentSequence::table(v.get<std::vector<double>>());
  }
  throw InstanceError(where + ": unknown exponent form \"" + form + "\"");
}

inline KoetheMatrix parse_space(const json& j, const std::string& name) {
  std::string where = "space \"" + name + "\"";
  std::string cls = need_string(j, "class", where);
  KoetheMatrix m = [&]() {
    if (cls == "InfiniteType")
      return KoetheMatrix::infinite_type(parse_alpha(need(j, "alpha", where), where));
    if (cls == "FiniteType")
      return KoetheMatrix::finite_type(parse_alpha(need(j, "alpha", where), where));
    if (cls == "Expression") return KoetheMatrix::expression(need_string(j, "expr", where));
    if (cls == "Tabulated") {
      const json& g = need(j, "grid", where);
      if (!g.is_array()) throw InstanceError(where + ": \"grid\" must be an array of rows");
      return KoetheMatrix::tabulated(g.get<std::vector<std::vector<double>>>());
    }
    throw InstanceError(where + ": unknown space class \"" + cls + "\"");
  }();
  if (j.value("normalized", false)) m = m.normalized_copy();
  return m;
}

inline ScalarSequence parse_sequence(const json& j, const std::string& name) {
  std::string where = "sequence \"" + name + "\"";
  std::string form = need_string(j, "form", where);
  if (form == "FiniteTable") {
    const json& v = need(j, "values", where);
    if (!v.is_array()) throw InstanceError(where + ": \"values\" must be an array");
    return ScalarSequence::finite_table_doubles(v.get<std::vector<double>>());
  }
  if (form == "Geometric") return ScalarSequence::geometric(need_number(j, "r", where));
  if (form == "PowerLaw")
    return ScalarSequence::power_law(need_number(j, "c", where), need_number(j, "p", where),
                                     need_number(j, "q", where));
  if (form == "ExpOfExponent")
    return ScalarSequence::exp_of_exponent(need_number(j, "s", where),
                                           parse_alpha(need(j, "alpha", where), where));
  if (form == "Expression") return ScalarSequence::expression(need_string(j, "expr", where));
  throw InstanceError(where + ": unknown sequence form \"" + form + "\"");
}

} // namespace instance_detail

inline InstanceFile parse_instance_text(const std::string& text, const std::string& origin) {
  using nlohmann::json;
  using namespace instance_detail;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw InstanceError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                        ": " + e.what());
  }
  if (!j.is_object()) throw InstanceError(origin + ": top level must be a JSON object");

  InstanceFile inst;
  inst.raw_text = text;
  std::string schema = j.value("schema", std::string(instance_schema));
  if (schema != instance_schema)
    throw InstanceError(origin + ": unsupported schema \"" + schema + "\" (expected \"" +
                        std::string(instance_schema) + "\")");
  inst.name = j.value("name", std::string("unnamed"));

  if (auto it = j.find("budgets"); it != j.end()) {
    const json& b = *it;
    inst.budgets.N = static_cast<long>(opt_number(b, "N", static_cast<double>(inst.budgets.N)));
    inst.budgets.k_max = static_cast<int>(opt_number(b, "k_max", inst.budgets.k_max));
    inst.budgets.m_max = static_cast<int>(opt_number(b, "m_max", inst.budgets.m_max));
    inst.budgets.j_max = static_cast<int>(opt_number(b, "j_max", inst.budgets.j_max));
    inst.budgets.window_frac = opt_number(b, "window_frac", inst.budgets.window_frac);
    if (inst.budgets.N < 1 || inst.budgets.k_max < 1 || inst.budgets.m_max < 1 ||
        inst.budgets.j_max < 1 || inst.budgets.window_frac <= 0 || inst.budgets.window_frac >= 1)
      throw InstanceError(origin + ": budgets must be positive (window_frac in (0,1))");
  }

  if (auto it = j.find("spaces"); it != j.end())
    for (auto& [name, def] : it->items()) inst.spaces.emplace(name, parse_space(def, name));
  if (auto it = j.find("sequences"); it != j.end())
    for (auto& [name, def] : it->items()) inst.sequences.emplace(name, parse_sequence(def, name));

  auto check_space = [&](const std::string& name, const std::string& where) {
    if (inst.spaces.find(name) == inst.spaces.end())
      throw InstanceError(where + " references undefined space \"" + name + "\"");
  };
  auto check_sequence = [&](const std::string& name, const std::string& where) {
    if (inst.sequences.find(name) == inst.sequences.end())
      throw InstanceError(where + " references undefined sequence \"" + name + "\"");
  };

  const json& tasks = need(j, "tasks", origin);
  if (!tasks.is_array()) throw InstanceError(origin + ": \"tasks\" must be an array");
  int index = 0;
  for (const json& t : tasks) {
    ++index;
    std::string where = "task " + std::to_string(index);
    TaskSpec spec;
    spec.op = need_string(t, "op", where);
    spec.id = t.value("id", spec.op + "-" + std::to_string(index));
    where += " (" + spec.id + ")";
    if (spec.op == "axioms" || spec.op == "nuclear" || spec.op == "g1" || spec.op == "ginf") {
      spec.space = need_string(t, "space", where);
      check_space(spec.space, where);
      spec.g_extras = t.value("g_extras", false);
    } else if (spec.op == "inclusion") {
      spec.source = need_string(t, "source", where);
      spec.target = need_string(t, "target", where);
      check_space(spec.source, where);
      check_space(spec.target, where);
    } else if (spec.op == "membership" || spec.op == "dual") {
      spec.sequence = need_string(t, "sequence", where);
      spec.space = need_string(t, "space", where);
      check_sequence(spec.sequence, where);
      check_space(spec.space, where);
    } else if (spec.op == "certify") {
      spec.sequence = need_string(t, "sequence", where);
      spec.space = need_string(t, "space", where);
      spec.k = static_cast<int>(need_number(t, "k", where));
      spec.norm = t.value("norm", "l1");
      check_sequence(spec.sequence, where);
      check_space(spec.space, where);
      if (spec.k < 1) throw InstanceError(where + ": k must be >= 1");
      if (spec.norm != "l1" && spec.norm != "sup")
        throw InstanceError(where + ": norm must be \"l1\" or \"sup\"");
    } else if (spec.op == "theorem1" || spec.op == "theorem2") {
      spec.a = need_string(t, "A", where);
      spec.b = need_string(t, "B", where);
      spec.theta = need_string(t, "theta", where);
      check_space(spec.a, where);
      check_space(spec.b, where);
      check_sequence(spec.theta, where);
    } else if (spec.op == "normality") {
      spec.a = need_string(t, "A", where);
      spec.b = need_string(t, "B", where);
      spec.theta = need_string(t, "theta", where);
      spec.eta = need_string(t, "eta", where);
      spec.direction = t.value("direction", "forward");
      check_space(spec.a, where);
      check_space(spec.b, where);
      check_sequence(spec.theta, where);
      check_sequence(spec.eta, where);
      if (spec.direction != "forward" && spec.direction != "transpose")
        throw InstanceError(where + ": direction must be \"forward\" or \"transpose\"");
    } else if (spec.op == "convolve") {
      spec.x = need_string(t, "x", where);
      spec.y = need_string(t, "y", where);
      spec.N = static_cast<long>(need_number(t, "N", where));
      check_sequence(spec.x, where);
      check_sequence(spec.y, where);
      if (spec.N < 1) throw InstanceError(where + ": N must be >= 1");
    } else {
      throw InstanceError(where + ": unknown op \"" + spec.op + "\"");
    }
    inst.tasks.push_back(std::move(spec));
  }
  return inst;
}

inline InstanceFile parse_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str(), path);
}

} // namespace koethe
