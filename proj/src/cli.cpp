#include "pmloc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "pmloc/error.hpp"
#include "pmloc/exporters.hpp"
#include "pmloc/scenario_file.hpp"

namespace pmloc {

namespace {

// Usage problems detected before any computation starts.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BeamSubset parse_subset(const std::string& text, std::size_t n_beams) {
  BeamSubset subset;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find_first_of(",+", pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    int b = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), b);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError(fmt::format("--subset: '{}' is not a beam number", item));
    }
    if (b < 1 || b > static_cast<int>(n_beams)) {
      throw UsageError(fmt::format("--subset: beam {} is out of range (scenario has {} beams)", b,
                                   n_beams));
    }
    subset.push_back(b);
    pos = end + 1;
  }
  return subset;
}

BeamSubset all_beams(std::size_t n) {
  BeamSubset s;
  for (std::size_t i = 1; i <= n; ++i) s.push_back(static_cast<int>(i));
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::invalid_argument, "cannot write " + path.string());
  f << content;
  if (!f) throw Error(ErrorKind::invalid_argument, "failed writing " + path.string());
}

struct Options {
  std::string scenario;
  std::string subset;
  std::string out_dir;
  int trials = 500;
  bool heatmap = false;
  bool export_grid = false;
};

struct Context {
  ScenarioFile file;
  std::filesystem::path out_dir;
  bool heatmap = false;
  bool export_grid = false;
};

Context load(const Options& opt) {
  Context c;
  try {
    c.file = load_scenario(opt.scenario);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  c.out_dir = opt.out_dir.empty() ? std::filesystem::path(c.file.output.dir)
                                  : std::filesystem::path(opt.out_dir);
  c.heatmap = opt.heatmap || c.file.output.heatmap;
  c.export_grid = opt.export_grid || c.file.output.export_grid;
  return c;
}

std::string file_tag(const BeamSubset& subset) {
  std::string t = subset_label(subset);
  std::replace(t.begin(), t.end(), '+', '_');
  return t;
}

int cmd_estimate(const Options& opt, std::ostream& out) {
  const Context c = load(opt);
  const Scenario& s = c.file.scenario;
  const BeamSubset subset = opt.subset.empty() ? all_beams(s.beams.size())
                                               : parse_subset(opt.subset, s.beams.size());
  const ScenarioRun run = run_scenario(s, subset);
  std::filesystem::create_directories(c.out_dir);
  const std::string text = format_report(run.report, subset);
  write_file(c.out_dir / "report.txt", text);
  write_file(c.out_dir / "report.json", report_json(run.report, subset));
  if (c.export_grid) write_file(c.out_dir / "posterior_grid.txt", format_grid(run.posterior));
  if (c.heatmap) write_file(c.out_dir / "posterior.pgm", heatmap_pgm(run.posterior));
  out << text;
  return kExitOk;
}

int cmd_table1(const Options& opt, std::ostream& out) {
  const Context c = load(opt);
  const Scenario& s = c.file.scenario;
  if (s.beams.size() < 3) {
    throw UsageError(fmt::format("table1 needs a scenario with at least 3 beams, got {}",
                                 s.beams.size()));
  }
  const ComboTable table = combo_study(s, table1_subsets(), c.heatmap || c.export_grid);
  std::filesystem::create_directories(c.out_dir);
  const std::string text = format_combo_table(table);
  write_file(c.out_dir / "table1.txt", text);
  write_file(c.out_dir / "table1.json", combo_table_json(table));
  for (const ComboRow& row : table.rows) {
    const std::string tag = file_tag(row.subset);
    if (c.heatmap) write_file(c.out_dir / ("posterior_" + tag + ".pgm"), heatmap_pgm(*row.posterior));
    if (c.export_grid) {
      write_file(c.out_dir / ("posterior_grid_" + tag + ".txt"), format_grid(*row.posterior));
    }
  }
  out << text;
  return kExitOk;
}

int cmd_montecarlo(const Options& opt, std::ostream& out) {
  if (opt.trials < 1) throw UsageError(fmt::format("--trials: must be >= 1, got {}", opt.trials));
  const Context c = load(opt);
  const Scenario& s = c.file.scenario;
  const BeamSubset subset = opt.subset.empty() ? all_beams(s.beams.size())
                                               : parse_subset(opt.subset, s.beams.size());
  const UnconditionalCov cov = monte_carlo_covariance(s, subset, opt.trials);
  std::filesystem::create_directories(c.out_dir);
  const std::string text = format_unconditional(cov, subset);
  write_file(c.out_dir / "montecarlo.txt", text);
  write_file(c.out_dir / "montecarlo.json", unconditional_json(cov, subset));
  out << text;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point-mass filter localization in a mapped room from rangefinder beams", "pmloc"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&opt](CLI::App* sub, bool with_subset) {
    sub->add_option("--scenario", opt.scenario, "Scenario file")->required();
    if (with_subset) sub->add_option("--subset", opt.subset, "Beam numbers, e.g. 1,2,3 (default: all)");
    sub->add_option("--out", opt.out_dir, "Output directory (overrides the scenario file)");
    sub->add_flag("--heatmap", opt.heatmap, "Write PGM heatmaps of the posterior");
    sub->add_flag("--export-grid", opt.export_grid, "Write the posterior grid as text");
  };

  CLI::App* estimate = app.add_subcommand("estimate", "Estimate position from the chosen beams");
  add_common(estimate, true);
  CLI::App* table1 = app.add_subcommand("table1", "Posterior RMS for the seven combinations of beams 1-3");
  add_common(table1, false);
  CLI::App* montecarlo = app.add_subcommand("montecarlo", "Monte-Carlo unconditional error covariance");
  add_common(montecarlo, true);
  montecarlo->add_option("--trials", opt.trials, "Number of trials");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pmloc: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (estimate->parsed()) return cmd_estimate(opt, out);
    if (table1->parsed()) return cmd_table1(opt, out);
    return cmd_montecarlo(opt, out);
  } catch (const UsageError& e) {
    err << "pmloc: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "pmloc: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "pmloc: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace pmloc
