#include "cli.hpp"

#include "topotess/errors.hpp"
#include "topotess/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace topotess::cli {
namespace {

namespace fs = std::filesystem;

const std::map<std::string, BarPolicy> kBarPolicies{{"strip", BarPolicy::StripInfinite},
                                                    {"cap", BarPolicy::CapInfinite}};
const std::map<std::string, AlphaConvention> kConventions{{"squared", AlphaConvention::SquaredRadius},
                                                          {"radius", AlphaConvention::Radius}};
const std::map<std::string, LogBase> kLogBases{{"e", LogBase::Natural}, {"2", LogBase::Two}};
const std::map<std::string, PAdjust> kAdjust{{"holm", PAdjust::Holm},
                                             {"bonferroni", PAdjust::Bonferroni},
                                             {"bh", PAdjust::BenjaminiHochberg},
                                             {"none", PAdjust::None}};
const std::map<std::string, Alternative> kAlternatives{
    {"two-sided", Alternative::TwoSided}, {"less", Alternative::Less}, {"greater", Alternative::Greater}};
const std::map<std::string, MannWhitneyMode> kMwModes{
    {"auto", MannWhitneyMode::Auto}, {"exact", MannWhitneyMode::Exact}, {"asymptotic", MannWhitneyMode::Asymptotic}};
const std::map<std::string, ImageFormat> kFormats{{"text", ImageFormat::Text}, {"pgm", ImageFormat::Pgm}};

template <class T> std::vector<std::string> keys(const std::map<std::string, T>& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

// Enum flags are parsed as text and resolved once parsing succeeds.
struct EnumNames {
  std::string bar_policy = "strip";
  std::string convention = "squared";
  std::string log_base = "e";
  std::string adjust = "holm";
  std::string alternative = "two-sided";
  std::string mw_mode = "auto";
  std::string format = "text";
};

struct Options {
  RunConfig run;
  EnumNames names;
  double cap = 0.0;
  fs::path records;
  std::vector<std::string> groups;
  std::vector<std::string> statistics{"PE0", "PE1"};
  MannWhitneyMode mw_mode = MannWhitneyMode::Auto;
  std::size_t n_min = 25;
  std::size_t n_max = 245;
  std::size_t step = 20;
  bool svg = true;

  CvtDatasetOptions cvt;
  ImageFormat format = ImageFormat::Text;
  std::size_t rows = 1024;
  std::size_t cols = 1024;
};

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--manifest", o.run.manifest, "JSON manifest of {path, group} entries")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--cells", o.run.n_cells, "cells selected per image")->capture_default_str();
  cmd->add_option("--bar-policy", o.names.bar_policy, "strip or cap the essential dimension-0 bar")
      ->check(CLI::IsMember(keys(kBarPolicies)))
      ->capture_default_str();
  cmd->add_option("--cap", o.cap, "fixed cap for --bar-policy cap (default: largest filtration value)");
  cmd->add_option("--alpha", o.names.convention, "filtration value convention")
      ->check(CLI::IsMember(keys(kConventions)))
      ->capture_default_str();
  cmd->add_option("--log-base", o.names.log_base, "entropy logarithm base")
      ->check(CLI::IsMember(keys(kLogBases)))
      ->capture_default_str();
  cmd->add_option("--seed", o.run.seed, "seed recorded in output metadata")->capture_default_str();
  cmd->add_option("--threads", o.run.threads, "worker threads across images")->capture_default_str();
}

void add_stats_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--adjust", o.names.adjust, "multiple-comparison adjustment")
      ->check(CLI::IsMember(keys(kAdjust)))
      ->capture_default_str();
  cmd->add_option("--alternative", o.names.alternative, "alternative hypothesis for Mann-Whitney")
      ->check(CLI::IsMember(keys(kAlternatives)))
      ->capture_default_str();
  cmd->add_option("--mw", o.names.mw_mode, "Mann-Whitney p-value method")
      ->check(CLI::IsMember(keys(kMwModes)))
      ->capture_default_str();
  cmd->add_option("--groups", o.groups, "groups to compare, in order (default: all)")->delimiter(',');
  cmd->add_option("--statistics", o.statistics, "statistics to compare: PE0, PE1, L0, L1")
      ->delimiter(',')
      ->capture_default_str();
}

CompareOptions compare_options(const Options& o) {
  CompareOptions c;
  c.groups = o.groups;
  c.statistics.clear();
  for (const auto& s : o.statistics) c.statistics.push_back(parse_statistic(s));
  c.adjust = o.run.adjust;
  c.alternative = o.run.alternative;
  c.mw_mode = o.mw_mode;
  return c;
}

void finish_run_config(CLI::App* cmd, Options& o) {
  if (cmd->count("--cap")) o.run.cap_value = o.cap;
  if (o.run.cap_value && o.run.bar_policy != BarPolicy::CapInfinite)
    throw Error(Errc::ConfigError, "--cap requires --bar-policy cap");
  o.run.validate();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot write " + path.string());
  f << content;
  if (!f) throw Error(Errc::IoError, "failed writing " + path.string());
}

std::vector<EntropyRecord> read_records(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot read " + path.string());
  return read_records_csv(f);
}

int cmd_analyze(CLI::App* cmd, Options& o, std::ostream& out) {
  finish_run_config(cmd, o);
  const auto images = load_manifest(o.run.manifest);
  const auto records = analyze(images, o.run);
  std::ostringstream csv;
  write_records_csv(csv, records, metadata_for(o.run));
  const auto path = o.run.out_dir / "records.csv";
  write_file(path, csv.str());
  out << "analyzed " << records.size() << " images with " << o.run.n_cells << " cells -> " << path.string() << '\n';
  return 0;
}

int cmd_compare(Options& o, std::ostream& out) {
  const auto records = read_records(o.records);
  const auto bundle = compare(records, compare_options(o));
  auto meta = metadata_for(o.run);
  meta.extra = "adjust=" + std::string(to_string(o.run.adjust)) +
               " alternative=" + std::string(to_string(o.run.alternative));
  const auto table = comparisons_to_table(bundle);
  write_file(o.run.out_dir / "comparisons.json", comparisons_to_json(bundle, meta));
  write_file(o.run.out_dir / "comparisons.txt", table);
  out << table;
  return 0;
}

int cmd_sweep(CLI::App* cmd, Options& o, std::ostream& out) {
  finish_run_config(cmd, o);
  SweepOptions s;
  s.n_min = o.n_min;
  s.n_max = o.n_max;
  s.step = o.step;
  s.compare = compare_options(o);
  o.run.n_cells = s.n_max;
  const auto images = load_manifest(o.run.manifest);
  const auto rows = sweep(images, o.run, s);
  auto meta = metadata_for(o.run);
  meta.extra += " n_min=" + std::to_string(s.n_min) + " n_max=" + std::to_string(s.n_max) +
                " step=" + std::to_string(s.step) + " adjust=" + std::string(to_string(o.run.adjust));
  std::ostringstream csv;
  write_sweep_csv(csv, rows, meta);
  write_file(o.run.out_dir / "sweep.csv", csv.str());
  if (o.svg) write_file(o.run.out_dir / "sweep.svg", render_sweep_svg(rows, meta));
  out << "sweep over " << images.size() << " images: " << rows.size() << " rows -> "
      << (o.run.out_dir / "sweep.csv").string() << '\n';
  return 0;
}

int cmd_cvt(Options& o, std::ostream& out) {
  o.cvt.cvt.seed = o.run.seed;
  o.cvt.threads = o.run.threads;
  o.cvt.rows = o.rows;
  o.cvt.cols = o.cols;
  o.cvt.cvt.box = Box{0.0, 0.0, static_cast<double>(o.cols), static_cast<double>(o.rows)};
  o.cvt.cvt.validate();
  if (o.run.threads == 0) throw Error(Errc::ConfigError, "--threads must be positive");
  const auto entries = make_cvt_dataset(o.cvt, o.run.out_dir, o.format);
  out << "wrote " << entries.size() << " images and " << (o.run.out_dir / "manifest.json").string() << '\n';
  return 0;
}

int cmd_plot(Options& o, std::ostream& out) {
  const auto records = read_records(o.records);
  RunMetadata meta;
  meta.seed = o.run.seed;
  for (const auto& name : o.statistics) {
    const auto stat = parse_statistic(name);
    const auto path = o.run.out_dir / ("boxplot_" + std::string(to_string(stat)) + ".svg");
    write_file(path, render_boxplot(records, stat, meta));
    out << "wrote " << path.string() << '\n';
  }
  return 0;
}

void resolve_names(Options& o) {
  o.run.bar_policy = kBarPolicies.at(o.names.bar_policy);
  o.run.convention = kConventions.at(o.names.convention);
  o.run.log_base = kLogBases.at(o.names.log_base);
  o.run.adjust = kAdjust.at(o.names.adjust);
  o.run.alternative = kAlternatives.at(o.names.alternative);
  o.mw_mode = kMwModes.at(o.names.mw_mode);
  o.format = kFormats.at(o.names.format);
}

int exit_code(ErrorKind k) {
  switch (k) {
  case ErrorKind::Config: return 1;
  case ErrorKind::Data: return 2;
  case ErrorKind::Numeric: return 3;
  }
  return 3;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Persistent entropy of alpha-complex barcodes for planar tessellations", "topotess"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Options o;
  auto* analyze_cmd = app.add_subcommand("analyze", "spiral-select cells and compute PE0, PE1, L0, L1 per image");
  add_run_flags(analyze_cmd, o);
  analyze_cmd->add_option("--out", o.run.out_dir, "output directory for records.csv")->capture_default_str();

  auto* compare_cmd = app.add_subcommand("compare", "Kruskal-Wallis + Dunn, or Mann-Whitney, across record groups");
  compare_cmd->add_option("--records", o.records, "records.csv from analyze")->required()->check(CLI::ExistingFile);
  add_stats_flags(compare_cmd, o);
  compare_cmd->add_option("--seed", o.run.seed, "seed recorded in output metadata");
  compare_cmd->add_option("--out", o.run.out_dir, "output directory")->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "p-values as a function of the number of cells");
  add_run_flags(sweep_cmd, o);
  add_stats_flags(sweep_cmd, o);
  sweep_cmd->add_option("--n-min", o.n_min)->capture_default_str();
  sweep_cmd->add_option("--n-max", o.n_max)->capture_default_str();
  sweep_cmd->add_option("--step", o.step)->capture_default_str();
  sweep_cmd->add_flag("!--no-svg", o.svg, "skip sweep.svg");
  sweep_cmd->add_option("--out", o.run.out_dir, "output directory")->capture_default_str();

  auto* cvt_cmd = app.add_subcommand("cvt", "generate rasterized CVT images and a manifest");
  cvt_cmd->add_option("--images-per-step", o.cvt.images_per_step)->capture_default_str();
  cvt_cmd->add_option("--steps", o.cvt.cvt.steps, "Lloyd path length (CVT1..CVTsteps)")->capture_default_str();
  cvt_cmd->add_option("--emit", o.cvt.emit_steps, "only write these CVT steps")->delimiter(',');
  cvt_cmd->add_option("--expected-points", o.cvt.cvt.expected_points)->capture_default_str();
  cvt_cmd->add_flag("--fixed-count", o.cvt.cvt.fixed_count, "use exactly --expected-points generators");
  cvt_cmd->add_option("--rows", o.rows)->capture_default_str();
  cvt_cmd->add_option("--cols", o.cols)->capture_default_str();
  cvt_cmd->add_option("--format", o.names.format)
      ->check(CLI::IsMember(keys(kFormats)))
      ->capture_default_str();
  cvt_cmd->add_option("--seed", o.run.seed)->capture_default_str();
  cvt_cmd->add_option("--threads", o.run.threads)->capture_default_str();
  cvt_cmd->add_option("--out", o.run.out_dir, "dataset directory")->required();

  auto* plot_cmd = app.add_subcommand("plot", "boxplots of record statistics per group");
  plot_cmd->add_option("--records", o.records, "records.csv from analyze")->required()->check(CLI::ExistingFile);
  plot_cmd->add_option("--statistics", o.statistics, "statistics to plot")->delimiter(',')->capture_default_str();
  plot_cmd->add_option("--seed", o.run.seed, "seed recorded in output metadata");
  plot_cmd->add_option("--out", o.run.out_dir, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    resolve_names(o);
    if (*analyze_cmd) return cmd_analyze(analyze_cmd, o, out);
    if (*compare_cmd) return cmd_compare(o, out);
    if (*sweep_cmd) return cmd_sweep(sweep_cmd, o, out);
    if (*cvt_cmd) return cmd_cvt(o, out);
    if (*plot_cmd) return cmd_plot(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"topotess"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace topotess::cli
