#include "endline/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "endline/bde.hpp"
#include "endline/classify.hpp"
#include "endline/errors.hpp"
#include "endline/io.hpp"
#include "endline/returnmap.hpp"
#include "endline/trace.hpp"
#include "endline/verify.hpp"

namespace endline {
namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string jet_path;
  std::string out;
  std::string format = "svg";
  double tol = kDefaultTolerance;
  int order = kDefaultOrder;
  int steps = kDefaultQSteps;
  int seed_grid = 9;
  std::vector<double> at;
  std::string branch = "plus";
  std::string suite;
  int trials = 50;
  std::uint64_t seed = 1;
};

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
  return f;
}

EndPointClass classify_any(const AnyJet& jet, double tol) {
  if (const auto* r = std::get_if<RegularEndJet>(&jet)) return classify_regular(*r, tol);
  return classify_critical(std::get<CriticalEndJet>(jet), tol);
}

int cmd_classify(const Flags& f, std::ostream& out) {
  const EndPointClass c = classify_any(to_jet(read_jet_file(f.jet_path)), f.tol);
  write_classification(out, c);
  return c.verdict == Verdict::Degenerate ? 2 : 0;
}

std::string numbered(std::string_view stem, std::size_t i, std::string_view suffix = "") {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", i);
  return std::string(stem) + "_" + buf + std::string(suffix) + ".csv";
}

int cmd_portrait(const Flags& f, std::ostream& out) {
  const AnyJet jet = to_jet(read_jet_file(f.jet_path));
  PortraitOptions opt;
  opt.seed_grid = f.seed_grid;
  opt.order = f.order;
  opt.tol = f.tol;
  const PhasePortrait p = std::visit([&](const auto& j) { return portrait(j, opt); }, jet);
  if (f.format == "svg") {
    if (f.out.empty()) {
      write_portrait_svg(out, p);
    } else {
      auto file = open_out(f.out);
      write_portrait_svg(file, p);
    }
    return 0;
  }
  if (f.out.empty()) throw Error("--format csv needs --out DIR");
  const fs::path dir(f.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string());
  for (std::size_t i = 0; i < p.trajectories.size(); ++i) {
    auto file = open_out(dir / numbered("leaf", i));
    write_trajectory_csv(file, p.trajectories[i]);
  }
  for (std::size_t i = 0; i < p.separatrices.size(); ++i) {
    auto file = open_out(dir / numbered("separatrix", i));
    write_trajectory_csv(file, p.separatrices[i]);
    if (!p.separatrices[i].lift.empty()) {
      auto lift = open_out(dir / numbered("separatrix", i, "_lift"));
      write_lift_csv(lift, p.separatrices[i]);
    }
  }
  auto marks = open_out(dir / "singular_points.csv");
  marks << "u,w,label\n";
  for (const SingularMark& m : p.singular_points)
    marks << format_number(m.point.x()) << "," << format_number(m.point.y()) << "," << m.label << "\n";
  out << "leaves = " << p.trajectories.size() << "\n";
  out << "separatrices = " << p.separatrices.size() << "\n";
  out << "singular_points = " << p.singular_points.size() << "\n";
  return 0;
}

int cmd_returnmap(const Flags& f, std::ostream& out) {
  const JetFile file = read_jet_file(f.jet_path);
  if (file.chart != JetChart::critical_definite) throw InvalidJet("returnmap needs a critical-definite jet");
  const CriticalEndJet jet = std::get<CriticalEndJet>(to_jet(file));
  const ReturnMapReport r = returnmap_report(jet, f.steps);
  write_returnmap_report(out, jet, r);
  if (!f.out.empty()) {
    auto csv = open_out(f.out);
    write_q_profiles_csv(csv, r);
  }
  return 0;
}

int cmd_trace(const Flags& f, std::ostream& out) {
  const AnyJet jet = to_jet(read_jet_file(f.jet_path));
  const auto* regular = std::get_if<RegularEndJet>(&jet);
  const BDE bde = regular ? bde_regular(*regular, f.order) : bde_critical(std::get<CriticalEndJet>(jet), f.order);
  TraceOptions opt;
  if (regular)
    opt.region = [](double, double w) { return w; };
  else
    opt.region = [chart = build_critical_chart(std::get<CriticalEndJet>(jet))](double u, double v) {
      return chart.region(u, v);
    };
  const Trajectory t =
      trace_field(bde, ChartPoint(f.at[0], f.at[1]), f.branch == "plus" ? Branch::plus : Branch::minus, opt);
  if (f.out.empty()) {
    write_trajectory_csv(out, t);
  } else {
    auto file = open_out(f.out);
    write_trajectory_csv(file, t);
  }
  return 0;
}

int cmd_verify(const Flags& f, std::ostream& out) {
  const SuiteResult r = run_suite(f.suite, f.trials, f.seed);
  out << "suite = " << r.suite << "\n";
  out << "trials = " << r.trials << "\n";
  out << "seed = " << r.seed << "\n";
  for (const CheckResult& c : r.checks)
    out << (c.pass() ? "PASS " : "FAIL ") << c.name << ": max_error = " << format_number(c.max_error)
        << ", threshold = " << format_number(c.threshold) << "\n";
  out << "result = " << (r.pass() ? "PASS" : "FAIL") << "\n";
  return r.pass() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Principal curvature lines near end points of surfaces", "endline"};
  app.require_subcommand(1);
  Flags f;

  auto* classify = app.add_subcommand("classify", "Classify the end point of a jet file");
  classify->add_option("jet", f.jet_path, "Jet file")->required();
  classify->add_option("--tol", f.tol, "Zero-test tolerance");

  auto* por = app.add_subcommand("portrait", "Trace the principal net and write SVG or CSV");
  por->add_option("jet", f.jet_path, "Jet file")->required();
  por->add_option("--out", f.out, "SVG file, or directory for CSV");
  por->add_option("--format", f.format)->check(CLI::IsMember({"svg", "csv"}));
  por->add_option("--seed-grid", f.seed_grid, "Seeds per side of the chart box")->check(CLI::Range(1, 200));
  por->add_option("--order", f.order, "Series truncation order")->check(CLI::Range(2, 32));
  por->add_option("--tol", f.tol, "Zero-test tolerance");

  auto* ret = app.add_subcommand("returnmap", "Return-map report for a critical-definite jet");
  ret->add_option("jet", f.jet_path, "Jet file")->required();
  ret->add_option("--steps", f.steps, "q-system RK4 steps")->check(CLI::Range(16, 1 << 24));
  ret->add_option("--out", f.out, "CSV of the q profiles");

  auto* tr = app.add_subcommand("trace", "Trace one curvature line through a point");
  tr->add_option("jet", f.jet_path, "Jet file")->required();
  tr->add_option("--at", f.at, "Seed u,w")->delimiter(',')->expected(2)->required();
  tr->add_option("--branch", f.branch)->check(CLI::IsMember({"plus", "minus"}));
  tr->add_option("--order", f.order, "Series truncation order")->check(CLI::Range(2, 32));
  tr->add_option("--out", f.out, "CSV file");

  auto* ver = app.add_subcommand("verify", "Run an oracle suite");
  ver->add_option("suite", f.suite, "coeffs, polar, eigen, returnmap or separatrix")->required();
  ver->add_option("--trials", f.trials)->check(CLI::Range(1, 1000000));
  ver->add_option("--seed", f.seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (*classify) return cmd_classify(f, out);
    if (*por) return cmd_portrait(f, out);
    if (*ret) return cmd_returnmap(f, out);
    if (*tr) return cmd_trace(f, out);
    return cmd_verify(f, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace endline
