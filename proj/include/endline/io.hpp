#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include "endline/charts.hpp"
#include "endline/classify.hpp"
#include "endline/returnmap.hpp"

namespace endline {

enum class JetChart { regular, critical_definite, critical_saddle };

std::string_view jet_chart_name(JetChart c);

inline constexpr int kSchemaVersion = 1;

/// Flat `key = value` jet description. Lines starting with # are comments.
///
///   schema_version = 1
///   chart = critical-definite
///   a = 1
///   b = 2
///   a30 = -0.5
struct JetFile {
  int schema_version = kSchemaVersion;
  JetChart chart = JetChart::regular;
  std::map<std::string, double> coefficients;

  bool operator==(const JetFile&) const = default;
};

/// Names accepted for a chart: k0 and c only on regular charts, b not on saddles.
bool coefficient_applies(JetChart chart, std::string_view name);

/// Throws ParseError with a "source:line: message" prefix.
JetFile parse_jet_file(std::string_view text, std::string_view source = "<input>");
JetFile read_jet_file(const std::filesystem::path& path);

/// Canonical form: header, then nonzero coefficients in name order with the
/// shortest decimal that round-trips.
std::string write_jet_file(const JetFile& file);

JetFile to_jet_file(const RegularEndJet& jet);
JetFile to_jet_file(const CriticalEndJet& jet);

using AnyJet = std::variant<RegularEndJet, CriticalEndJet>;

/// Missing coefficients are zero. Throws InvalidJet when the chart requirements fail.
AnyJet to_jet(const JetFile& file);

std::string format_number(double x);

void write_classification(std::ostream& out, const EndPointClass& c);
void write_returnmap_report(std::ostream& out, const CriticalEndJet& jet, const ReturnMapReport& r);
/// theta, q1, q2, q3, q4.
void write_q_profiles_csv(std::ostream& out, const ReturnMapReport& r);

}  // namespace endline
