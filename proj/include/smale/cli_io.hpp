#pragma once

// Shift configuration documents (JSON), command dispatch and CSV reports.

#include <optional>
#include <string>
#include <vector>

#include "smale/exact.hpp"
#include "smale/groupoid.hpp"
#include "smale/sft_core.hpp"
#include "smale/weights.hpp"

namespace smale {

struct RunDefaults {
  Coord n_max = 30;
  double t = 1.0;
  double s = 2.0;
  double tol = 1e-9;
  Coord window_min = 5;
  Coord window_max = 30;

  friend bool operator==(const RunDefaults&, const RunDefaults&) = default;
};

/// The localizing cylinder X^u(q, 2^{-depth}) around a Q point.
struct LocalizationSpec {
  std::size_t q = 0;
  Coord phase = 0;
  Coord depth = 1;

  friend bool operator==(const LocalizationSpec&, const LocalizationSpec&) = default;
};

struct EdgeSpec {
  VertexId source = 0;
  VertexId target = 0;
  std::string label;

  friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

class ShiftConfig {
 public:
  std::string name;
  IntMatrix adjacency;
  std::optional<std::vector<EdgeSpec>> edges;
  std::vector<std::vector<std::string>> P;
  std::vector<std::vector<std::string>> Q;
  Omega0Kind omega0_kind = Omega0Kind::indicator;
  Rational c0 = 1;
  Coord hop = 1;
  std::size_t max_core = 10;
  LocalizationSpec localization;
  RunDefaults defaults;

  /// Builds the shift, orbits and weight system; throws ValidationError
  /// naming the violated invariant.
  void resolve();

  const ShiftRef& shift() const;
  const std::vector<OrbitRef>& p_orbits() const { return p_orbits_; }
  const std::vector<OrbitRef>& q_orbits() const { return q_orbits_; }
  WeightSystem weights() const;
  BasicFunction localization_function() const;

  /// Compares the declared fields only.
  friend bool operator==(const ShiftConfig& a, const ShiftConfig& b);

 private:
  ShiftRef shift_;
  std::vector<OrbitRef> p_orbits_;
  std::vector<OrbitRef> q_orbits_;
};

/// Strict parse: unknown keys and wrong types are rejected, and the result
/// is resolved.  Throws ParseError (with line and column) or ValidationError.
ShiftConfig parse_config(const std::string& text);
ShiftConfig load_config(const std::string& path);
/// Canonical JSON text with every field written out.
std::string serialize_config(const ShiftConfig& cfg);
/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string config_digest(const ShiftConfig& cfg);

/// 12 significant digits; "inf" and "nan" spelled out.
std::string format_number(double v);

struct Overrides {
  std::optional<Coord> n_max;
  std::optional<double> t;
  std::optional<double> s;
  std::optional<double> tol;
  std::optional<std::pair<Coord, Coord>> window;
};

/// Parses "A:B".  Throws ValidationError.
std::pair<Coord, Coord> parse_window(const std::string& text);

struct RunReport {
  std::string command;
  std::string inputs_digest;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<bool> certified;
  bool success = true;

  std::string to_csv() const;
};

const std::vector<std::string>& command_names();

/// Dispatches one of command_names().  Module errors propagate.
RunReport run(const std::string& command, const ShiftConfig& cfg, const Overrides& overrides = {});

}  // namespace smale
