#include "endline/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "endline/errors.hpp"

namespace endline {
namespace {

constexpr std::array<std::string_view, 13> kNames = {"k0",  "a",   "b",   "c",   "a30", "a21", "a12",
                                                      "a03", "a40", "a31", "a22", "a13", "a04"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double get(const JetFile& f, const char* name) {
  const auto it = f.coefficients.find(name);
  return it == f.coefficients.end() ? 0.0 : it->second;
}

void put(JetFile& f, const char* name, double v) {
  if (v != 0) f.coefficients[name] = v;
}

void put_higher(JetFile& f, const auto& j) {
  put(f, "a30", j.a30);
  put(f, "a21", j.a21);
  put(f, "a12", j.a12);
  put(f, "a03", j.a03);
  put(f, "a40", j.a40);
  put(f, "a31", j.a31);
  put(f, "a22", j.a22);
  put(f, "a13", j.a13);
  put(f, "a04", j.a04);
}

void get_higher(const JetFile& f, auto& j) {
  j.a30 = get(f, "a30");
  j.a21 = get(f, "a21");
  j.a12 = get(f, "a12");
  j.a03 = get(f, "a03");
  j.a40 = get(f, "a40");
  j.a31 = get(f, "a31");
  j.a22 = get(f, "a22");
  j.a13 = get(f, "a13");
  j.a04 = get(f, "a04");
}

}  // namespace

std::string_view jet_chart_name(JetChart c) {
  switch (c) {
    case JetChart::regular: return "regular";
    case JetChart::critical_definite: return "critical-definite";
    case JetChart::critical_saddle: return "critical-saddle";
  }
  return "regular";
}

bool coefficient_applies(JetChart chart, std::string_view name) {
  if (std::find(kNames.begin(), kNames.end(), name) == kNames.end()) return false;
  if (chart == JetChart::regular) return true;
  if (name == "k0" || name == "c") return false;
  return !(chart == JetChart::critical_saddle && name == "b");
}

JetFile parse_jet_file(std::string_view text, std::string_view source) {
  JetFile f;
  bool have_version = false, have_chart = false;
  std::vector<std::pair<std::string, int>> names;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": " + msg);
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail("missing key");
    if (value.empty()) fail("missing value for '" + key + "'");

    if (key == "schema_version") {
      if (have_version) fail("duplicate schema_version");
      const auto r = std::from_chars(value.data(), value.data() + value.size(), f.schema_version);
      if (r.ec != std::errc() || r.ptr != value.data() + value.size()) fail("schema_version must be an integer");
      if (f.schema_version != kSchemaVersion) fail("unsupported schema_version " + std::string(value));
      have_version = true;
    } else if (key == "chart") {
      if (have_chart) fail("duplicate chart");
      if (value == "regular") f.chart = JetChart::regular;
      else if (value == "critical-definite") f.chart = JetChart::critical_definite;
      else if (value == "critical-saddle") f.chart = JetChart::critical_saddle;
      else fail("unknown chart '" + std::string(value) + "'");
      have_chart = true;
    } else {
      if (std::find(kNames.begin(), kNames.end(), key) == kNames.end()) fail("unknown coefficient '" + key + "'");
      if (f.coefficients.contains(key)) fail("duplicate coefficient '" + key + "'");
      double x = 0;
      const auto r = std::from_chars(value.data(), value.data() + value.size(), x);
      if (r.ec != std::errc() || r.ptr != value.data() + value.size() || !std::isfinite(x))
        fail("bad number '" + std::string(value) + "' for '" + key + "'");
      f.coefficients[key] = x;
      names.emplace_back(key, line_no);
    }
  }
  if (!have_version) fail("missing schema_version");
  if (!have_chart) fail("missing chart");
  for (const auto& [name, ln] : names)
    if (!coefficient_applies(f.chart, name)) {
      line_no = ln;
      fail("coefficient '" + name + "' does not apply to chart " + std::string(jet_chart_name(f.chart)));
    }
  return f;
}

JetFile read_jet_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ":0: cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_jet_file(ss.str(), path.string());
}

std::string format_number(double x) {
  if (x == 0) x = 0.0;
  std::array<char, 32> buf;
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), r.ptr);
}

std::string write_jet_file(const JetFile& f) {
  std::string s = "schema_version = " + std::to_string(f.schema_version) + "\n";
  s += "chart = " + std::string(jet_chart_name(f.chart)) + "\n";
  for (const auto& [k, v] : f.coefficients)
    if (v != 0) s += k + " = " + format_number(v) + "\n";
  return s;
}

JetFile to_jet_file(const RegularEndJet& j) {
  JetFile f;
  f.chart = JetChart::regular;
  put(f, "k0", j.k0);
  put(f, "a", j.a);
  put(f, "b", j.b);
  put(f, "c", j.c);
  put_higher(f, j);
  return f;
}

JetFile to_jet_file(const CriticalEndJet& j) {
  JetFile f;
  f.chart = j.kind == CriticalKind::definite ? JetChart::critical_definite : JetChart::critical_saddle;
  put(f, "a", j.a);
  if (j.kind == CriticalKind::definite) put(f, "b", j.b);
  put_higher(f, j);
  return f;
}

AnyJet to_jet(const JetFile& f) {
  if (f.chart == JetChart::regular) {
    RegularEndJet j;
    j.k0 = get(f, "k0");
    j.a = get(f, "a");
    j.b = get(f, "b");
    j.c = get(f, "c");
    get_higher(f, j);
    return j;
  }
  CriticalEndJet j;
  j.kind = f.chart == JetChart::critical_definite ? CriticalKind::definite : CriticalKind::saddle;
  j.a = get(f, "a");
  j.b = j.kind == CriticalKind::definite ? get(f, "b") : 0.0;
  get_higher(f, j);
  j.validate();
  return j;
}

void write_classification(std::ostream& out, const EndPointClass& c) {
  out << "verdict = " << verdict_name(c.verdict) << "\n";
  for (const auto& [k, v] : c.certificates) out << k << " = " << format_number(v) << "\n";
}

void write_returnmap_report(std::ostream& out, const CriticalEndJet& jet, const ReturnMapReport& r) {
  out << "steps = " << (r.theta.empty() ? 0 : r.theta.size() - 1) << "\n";
  out << "delta = " << format_number(r.delta_closed) << "\n";
  for (const DeltaTerm& t : delta_terms(jet)) out << "delta_term[" << t.weight << "] = " << format_number(t.value) << "\n";
  for (int k = 0; k < 4; ++k) out << "q" << k + 1 << "(2pi) = " << format_number(r.q_end[k]) << "\n";
  out << "pi4_closed = " << format_number(r.pi4_closed) << "\n";
  out << "pi4_numeric = " << format_number(r.pi4_numeric) << "\n";
  out << "relative_gap = " << format_number(r.relative_gap) << "\n";
  for (const auto& [r0, r1] : r.poincare_samples)
    out << "poincare[" << format_number(r0) << "] = " << format_number(r1) << "\n";
}

void write_q_profiles_csv(std::ostream& out, const ReturnMapReport& r) {
  out << "theta,q1,q2,q3,q4\n";
  for (std::size_t i = 0; i < r.theta.size() && i < r.q.size(); ++i) {
    out << format_number(r.theta[i]);
    for (double q : r.q[i]) out << "," << format_number(q);
    out << "\n";
  }
}

}  // namespace endline
