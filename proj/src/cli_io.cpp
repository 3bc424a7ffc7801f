#include "smale/cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "smale/checks.hpp"
#include "smale/entropy.hpp"
#include "smale/spectral.hpp"

namespace smale {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// ------------------------------------------------------------- resolution

const ShiftRef& ShiftConfig::shift() const {
  if (!shift_) throw ValidationError("configuration has not been resolved");
  return shift_;
}

void ShiftConfig::resolve() {
  if (name.empty()) throw ValidationError("name must be nonempty");
  if (adjacency.empty()) throw ValidationError("adjacency must be a nonempty square matrix");
  for (const auto& row : adjacency)
    if (row.size() != adjacency.size()) throw ValidationError("adjacency must be square");

  try {
    if (edges) {
      std::vector<Edge> list;
      IntMatrix counted(adjacency.size(), std::vector<std::uint64_t>(adjacency.size(), 0));
      for (const auto& e : *edges) {
        if (e.source >= adjacency.size() || e.target >= adjacency.size())
          throw ValidationError("edge " + e.label + " names a missing vertex");
        ++counted[e.source][e.target];
        list.push_back({e.source, e.target, e.label});
      }
      if (counted != adjacency) throw ValidationError("edge list disagrees with adjacency");
      shift_ = EdgeShift::from_edges(adjacency.size(), std::move(list), name);
    } else {
      shift_ = EdgeShift::from_adjacency(adjacency, name);
    }
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }

  auto orbits = [&](const std::vector<std::vector<std::string>>& cycles, const char* which) {
    std::vector<OrbitRef> out;
    if (cycles.empty()) throw ValidationError(std::string(which) + " must list at least one cycle");
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      Word word;
      for (const auto& label : cycles[i]) {
        auto e = shift_->find_label(label);
        if (!e) throw ValidationError(std::string(which) + " cycle " + std::to_string(i) + " uses unknown edge '" + label + "'");
        word.push_back(*e);
      }
      if (word.empty() || !shift_->is_cycle(word))
        throw ValidationError(std::string(which) + " cycle " + std::to_string(i) + " is not a closed path");
      OrbitRef o = make_orbit(shift_, word);
      if (find_orbit(out, o)) throw ValidationError(std::string(which) + " lists an orbit twice");
      out.push_back(std::move(o));
    }
    return out;
  };
  p_orbits_ = orbits(P, "P");
  q_orbits_ = orbits(Q, "Q");
  if (orbits_overlap(p_orbits_, q_orbits_)) throw ValidationError("P and Q overlap");

  if (c0 <= 0) throw ValidationError("C0 must be positive");
  if (hop < 1) throw ValidationError("K must be a positive integer");
  if (max_core > 30) throw ValidationError("maxCore must be at most 30");
  if (localization.q >= q_orbits_.size()) throw ValidationError("localization.q names a missing Q orbit");
  if (localization.depth < 1) throw ValidationError("localization.depth must be at least 1");
  if (defaults.n_max < 1) throw ValidationError("defaults.nMax must be positive");
  if (!(defaults.t > 0)) throw ValidationError("defaults.t must be positive");
  if (!(defaults.s > 0)) throw ValidationError("defaults.s must be positive");
  if (!(defaults.tol > 0)) throw ValidationError("defaults.tol must be positive");
  if (defaults.window_min >= defaults.window_max) throw ValidationError("defaults.window must be increasing");
}

WeightSystem ShiftConfig::weights() const {
  shift();
  return WeightSystem(p_orbits_, q_orbits_, omega0_kind, c0, hop);
}

BasicFunction ShiftConfig::localization_function() const {
  Cylinder c(Tail::make(q_orbits_.at(localization.q), localization.phase), localization.depth, {});
  return BasicFunction::indicator(c, p_orbits_.front());
}

bool operator==(const ShiftConfig& a, const ShiftConfig& b) {
  return a.name == b.name && a.adjacency == b.adjacency && a.edges == b.edges && a.P == b.P &&
         a.Q == b.Q && a.omega0_kind == b.omega0_kind && a.c0 == b.c0 && a.hop == b.hop &&
         a.max_core == b.max_core && a.localization == b.localization && a.defaults == b.defaults;
}

// ---------------------------------------------------------------- parsing

namespace {

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) throw ValidationError("unknown key '" + item.key() + "' in " + where);
}

const Json& require(const Json& obj, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError("missing required key '" + key + "'");
  return *it;
}

std::int64_t as_int(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ValidationError("'" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

double as_number(const Json& v, const std::string& key) {
  if (!v.is_number()) throw ValidationError("'" + key + "' must be a number");
  return v.get<double>();
}

std::string as_string(const Json& v, const std::string& key) {
  if (!v.is_string()) throw ValidationError("'" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::vector<std::string>> as_cycles(const Json& v, const std::string& key) {
  if (!v.is_array()) throw ValidationError("'" + key + "' must be a list of edge-label lists");
  std::vector<std::vector<std::string>> out;
  for (const auto& cycle : v) {
    if (!cycle.is_array()) throw ValidationError("'" + key + "' must be a list of edge-label lists");
    std::vector<std::string> labels;
    for (const auto& label : cycle) {
      if (label.is_string())
        labels.push_back(label.get<std::string>());
      else if (label.is_number_unsigned())
        labels.push_back(std::to_string(label.get<std::uint64_t>()));
      else
        throw ValidationError("edge labels in '" + key + "' must be strings");
    }
    out.push_back(std::move(labels));
  }
  return out;
}

Rational as_rational(const Json& v, const std::string& key) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    const std::string text = v.get<std::string>();
    try {
      auto slash = text.find('/');
      if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
      return Rational(boost::multiprecision::cpp_int(text.substr(0, slash)),
                      boost::multiprecision::cpp_int(text.substr(slash + 1)));
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("'" + key + "' must be an integer or a string such as \"1/2\"");
}

Omega0Kind as_kind(const std::string& text) {
  if (text == "indicator") return Omega0Kind::indicator;
  if (text == "lipschitzRamp") return Omega0Kind::lipschitz_ramp;
  throw ValidationError("omega0Kind must be \"indicator\" or \"lipschitzRamp\"");
}

std::pair<std::size_t, std::size_t> position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

ShiftConfig parse_config(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, column] = position(text, e.byte);
    std::string what = e.what();
    auto cut = what.find("syntax error");
    throw ParseError(cut == std::string::npos ? what : what.substr(cut), line, column);
  }
  if (!doc.is_object()) throw ParseError("configuration must be a JSON object", 1, 1);
  reject_unknown(doc,
                 {"name", "adjacency", "edges", "P", "Q", "omega0Kind", "C0", "K", "maxCore",
                  "localization", "defaults"},
                 "configuration");

  ShiftConfig cfg;
  cfg.name = as_string(require(doc, "name"), "name");
  const Json& adj = require(doc, "adjacency");
  if (!adj.is_array()) throw ValidationError("'adjacency' must be a matrix");
  for (const auto& row : adj) {
    if (!row.is_array()) throw ValidationError("'adjacency' must be a matrix");
    std::vector<std::uint64_t> r;
    for (const auto& v : row) {
      if (!v.is_number_unsigned()) throw ValidationError("adjacency entries must be nonnegative integers");
      r.push_back(v.get<std::uint64_t>());
    }
    cfg.adjacency.push_back(std::move(r));
  }
  if (auto it = doc.find("edges"); it != doc.end()) {
    if (!it->is_array()) throw ValidationError("'edges' must be a list");
    std::vector<EdgeSpec> edges;
    for (const auto& e : *it) {
      if (!e.is_object()) throw ValidationError("'edges' entries must be objects");
      reject_unknown(e, {"source", "target", "label"}, "edges");
      EdgeSpec spec;
      const auto src = as_int(require(e, "source"), "source");
      const auto tgt = as_int(require(e, "target"), "target");
      if (src < 0 || tgt < 0) throw ValidationError("edge endpoints must be nonnegative");
      spec.source = static_cast<VertexId>(src);
      spec.target = static_cast<VertexId>(tgt);
      spec.label = as_string(require(e, "label"), "label");
      edges.push_back(std::move(spec));
    }
    cfg.edges = std::move(edges);
  }
  cfg.P = as_cycles(require(doc, "P"), "P");
  cfg.Q = as_cycles(require(doc, "Q"), "Q");
  if (auto it = doc.find("omega0Kind"); it != doc.end()) cfg.omega0_kind = as_kind(as_string(*it, "omega0Kind"));
  if (auto it = doc.find("C0"); it != doc.end()) cfg.c0 = as_rational(*it, "C0");
  if (auto it = doc.find("K"); it != doc.end()) cfg.hop = as_int(*it, "K");
  if (auto it = doc.find("maxCore"); it != doc.end()) {
    const auto m = as_int(*it, "maxCore");
    if (m < 0) throw ValidationError("maxCore must be nonnegative");
    cfg.max_core = static_cast<std::size_t>(m);
  }
  if (auto it = doc.find("localization"); it != doc.end()) {
    if (!it->is_object()) throw ValidationError("'localization' must be an object");
    reject_unknown(*it, {"q", "phase", "depth"}, "localization");
    if (auto f = it->find("q"); f != it->end()) {
      const auto q = as_int(*f, "q");
      if (q < 0) throw ValidationError("localization.q must be nonnegative");
      cfg.localization.q = static_cast<std::size_t>(q);
    }
    if (auto f = it->find("phase"); f != it->end()) cfg.localization.phase = as_int(*f, "phase");
    if (auto f = it->find("depth"); f != it->end()) cfg.localization.depth = as_int(*f, "depth");
  }
  if (auto it = doc.find("defaults"); it != doc.end()) {
    if (!it->is_object()) throw ValidationError("'defaults' must be an object");
    reject_unknown(*it, {"nMax", "t", "s", "tol", "window"}, "defaults");
    RunDefaults& d = cfg.defaults;
    if (auto f = it->find("nMax"); f != it->end()) d.n_max = as_int(*f, "nMax");
    if (auto f = it->find("t"); f != it->end()) d.t = as_number(*f, "t");
    if (auto f = it->find("s"); f != it->end()) d.s = as_number(*f, "s");
    if (auto f = it->find("tol"); f != it->end()) d.tol = as_number(*f, "tol");
    if (auto f = it->find("window"); f != it->end()) {
      if (!f->is_array() || f->size() != 2) throw ValidationError("'window' must be [nMin, nMax]");
      d.window_min = as_int((*f)[0], "window");
      d.window_max = as_int((*f)[1], "window");
    }
  }
  cfg.resolve();
  return cfg;
}

ShiftConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read configuration file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ShiftConfig& cfg) {
  OrderedJson doc;
  doc["name"] = cfg.name;
  doc["adjacency"] = cfg.adjacency;
  if (cfg.edges) {
    OrderedJson list = OrderedJson::array();
    for (const auto& e : *cfg.edges) list.push_back({{"source", e.source}, {"target", e.target}, {"label", e.label}});
    doc["edges"] = list;
  }
  doc["P"] = cfg.P;
  doc["Q"] = cfg.Q;
  doc["omega0Kind"] = to_string(cfg.omega0_kind);
  if (denominator(cfg.c0) == 1)
    doc["C0"] = numerator(cfg.c0).convert_to<std::int64_t>();
  else
    doc["C0"] = cfg.c0.str();
  doc["K"] = cfg.hop;
  doc["maxCore"] = cfg.max_core;
  doc["localization"] = {{"q", cfg.localization.q}, {"phase", cfg.localization.phase}, {"depth", cfg.localization.depth}};
  doc["defaults"] = {{"nMax", cfg.defaults.n_max},
                     {"t", cfg.defaults.t},
                     {"s", cfg.defaults.s},
                     {"tol", cfg.defaults.tol},
                     {"window", {cfg.defaults.window_min, cfg.defaults.window_max}}};
  return doc.dump(2) + "\n";
}

std::string config_digest(const ShiftConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : serialize_config(cfg)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------- reports

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::pair<Coord, Coord> parse_window(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("window must look like A:B");
  try {
    std::size_t used = 0;
    const long long a = std::stoll(text.substr(0, colon), &used);
    if (used != colon) throw ValidationError("window must look like A:B");
    const std::string rest = text.substr(colon + 1);
    const long long b = std::stoll(rest, &used);
    if (used != rest.size()) throw ValidationError("window must look like A:B");
    if (a >= b) throw ValidationError("window must be increasing");
    return {a, b};
  } catch (const std::logic_error&) {
    throw ValidationError("window must look like A:B");
  }
}

std::string RunReport::to_csv() const {
  auto escape = [](const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + escape(columns[i]);
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + escape(row[i]);
    out += '\n';
  }
  return out;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"entropy", "counts", "trace-theta", "trace-zeta",
                                                 "specdim", "check",  "enumerate"};
  return names;
}

namespace {

const char* flag(bool b) { return b ? "true" : "false"; }

void add_row(RunReport& r, std::vector<std::string> row, bool certified) {
  r.rows.push_back(std::move(row));
  r.certified.push_back(certified);
  r.success = r.success && certified;
}

void trace_rows(RunReport& r, const TraceResult& t) {
  r.columns = {"termsUsed", "value", "tailBound", "converged"};
  add_row(r,
          {std::to_string(t.terms_used), format_number(static_cast<double>(t.value)),
           format_number(static_cast<double>(t.tail_bound)), flag(t.converged)},
          t.converged);
}

}  // namespace

RunReport run(const std::string& command, const ShiftConfig& cfg, const Overrides& o) {
  RunReport r;
  r.command = command;
  r.inputs_digest = config_digest(cfg);
  const WeightSystem w = cfg.weights();
  const BasicFunction a = cfg.localization_function();
  const Coord n_max = o.n_max.value_or(cfg.defaults.n_max);
  const double tol = o.tol.value_or(cfg.defaults.tol);

  if (command == "entropy") {
    r.columns = {"method", "value", "errorBound", "iterations"};
    const EntropyResult p = entropy_perron(cfg.shift()->adjacency(), std::min(tol, 1e-12));
    const EntropyResult c = entropy_counting(w, a, n_max);
    const bool agree = std::fabs(p.value - c.value) <= p.error_bound + c.error_bound;
    for (const auto& e : {p, c})
      add_row(r, {to_string(e.method), format_number(e.value), format_number(e.error_bound), std::to_string(e.iterations)},
              agree);
  } else if (command == "counts") {
    const CountSeries cs = count_series(w, a, n_max);
    const Coord verify = std::min(n_max, enumeration_reach(a, cfg.max_core));
    if (verify >= cs.first) {
      const auto slow = count_by_enumeration(w, a, verify, cfg.max_core);
      for (const auto& [n, c] : slow)
        if (n >= cs.first && cs.at(n) != c)
          throw ValidationError("transfer-matrix count differs from enumeration at n = " + std::to_string(n));
    }
    r.columns = {"n", "c_n", "certified"};
    for (Coord n = cs.first; n <= n_max; ++n)
      add_row(r, {std::to_string(n), std::to_string(cs.at(n)), flag(cs.certified_at(n))}, cs.certified_at(n));
  } else if (command == "trace-theta") {
    trace_rows(r, theta_trace(w, a, o.t.value_or(cfg.defaults.t), tol));
  } else if (command == "trace-zeta") {
    trace_rows(r, zeta_trace(w, a, o.s.value_or(cfg.defaults.s), tol));
  } else if (command == "specdim") {
    const auto window = o.window.value_or(std::make_pair(cfg.defaults.window_min, cfg.defaults.window_max));
    const DimensionEstimate d = spectral_dimension(w, a, window.first, window.second);
    const EntropyResult p = entropy_perron(cfg.shift()->adjacency());
    r.columns = {"nMin", "nMax", "dimEstimate", "stdError", "entropyPerron", "target"};
    add_row(r,
            {std::to_string(window.first), std::to_string(window.second), format_number(d.dimension),
             format_number(d.std_error), format_number(p.value), format_number(p.value / std::log(EdgeShift::kLambda))},
            true);
  } else if (command == "check") {
    r.columns = {"property", "passed", "samples", "detail"};
    for (const auto& c : run_invariant_suite(w)) add_row(r, {c.property, flag(c.passed), std::to_string(c.samples), c.detail}, c.passed);
  } else if (command == "enumerate") {
    r.columns = {"index", "point", "coreLength", "entryIndex", "omegaS"};
    std::size_t index = 0;
    for_each_heteroclinic(w.P(), w.Q(), cfg.max_core, [&](const HeteroclinicPoint& x) {
      add_row(r,
              {std::to_string(index++), x.to_string(), std::to_string(x.core().size()),
               std::to_string(entry_index(w, x)), to_string(omega_s(w, x))},
              true);
    });
  } else {
    throw ValidationError("unknown command '" + command + "'");
  }
  return r;
}

}  // namespace smale
