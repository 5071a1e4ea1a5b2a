#include "topotess/pipeline.hpp"

#include "format.hpp"
#include "parallel.hpp"
#include "topotess/alpha_complex.hpp"
#include "topotess/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace topotess {

void RunConfig::validate() const {
  if (n_cells < 3) throw Error(Errc::ConfigError, "n_cells must be >= 3");
  if (threads == 0) throw Error(Errc::ConfigError, "threads must be >= 1");
  if (cap_value && !(*cap_value > 0)) throw Error(Errc::ConfigError, "cap must be positive");
}

std::uint64_t RunConfig::hash() const {
  std::ostringstream canon;
  canon << "n_cells=" << n_cells << ";policy=" << to_string(bar_policy)
        << ";cap=" << (cap_value ? detail::format_double(*cap_value) : std::string("max_filtration"))
        << ";log=" << to_string(log_base) << ";alpha=" << to_string(convention) << ";adjust=" << to_string(adjust)
        << ";alternative=" << to_string(alternative) << ";seed=" << seed;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon.str()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<ImageEntry> load_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(Errc::IoError, "cannot open manifest " + manifest.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigError, "manifest is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_array()) throw Error(Errc::ConfigError, "manifest must be a JSON array");
  const auto base = manifest.parent_path();
  std::vector<ImageEntry> out;
  std::map<std::string, int> seen_ids;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("path") || !item.contains("group") || !item["path"].is_string() ||
        !item["group"].is_string())
      throw Error(Errc::ConfigError, "manifest entries need string 'path' and 'group'");
    if (item.value("exclude", false)) continue;
    ImageEntry e;
    e.path = item["path"].get<std::string>();
    if (e.path.is_relative()) e.path = base / e.path;
    e.group = item["group"].get<std::string>();
    e.id = item.contains("id") ? item["id"].get<std::string>() : e.path.stem().string();
    if (e.id.find(',') != std::string::npos || e.group.find(',') != std::string::npos)
      throw Error(Errc::ConfigError, "ids and group names may not contain commas");
    if (seen_ids[e.id]++) throw Error(Errc::ConfigError, "duplicate image id " + e.id);
    out.push_back(std::move(e));
  }
  return out;
}

void write_manifest(const std::filesystem::path& manifest, std::span<const ImageEntry> entries) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  const auto base = manifest.parent_path();
  for (const auto& e : entries) {
    nlohmann::ordered_json item;
    item["id"] = e.id;
    item["path"] = e.path.is_absolute() ? e.path.lexically_relative(std::filesystem::absolute(base)).generic_string()
                                        : e.path.generic_string();
    item["group"] = e.group;
    doc.push_back(item);
  }
  std::ofstream out(manifest);
  if (!out) throw Error(Errc::IoError, "cannot write " + manifest.string());
  out << doc.dump(2) << '\n';
}

EntropyRecord summarize_points(std::span<const Point2> points, const RunConfig& cfg) {
  const Filtration f = alpha_complex(points, cfg.convention);
  const Barcode full = compute_persistence(f);
  const Barcode finite = cfg.bar_policy == BarPolicy::StripInfinite
                             ? strip_infinite_dim0(full)
                             : cap_infinite_dim0(full, cfg.cap_value.value_or(f.max_value()));
  const auto len0 = BarLengths::of(finite, 0);
  const auto len1 = BarLengths::of(finite, 1);
  EntropyRecord r;
  r.n_cells = points.size();
  r.pe0 = persistent_entropy(len0, cfg.log_base);
  r.pe1 = persistent_entropy(len1, cfg.log_base);
  r.l0 = total_length(len0);
  r.l1 = total_length(len1);
  r.bars0 = len0.size();
  r.bars1 = len1.size();
  r.policy = cfg.bar_policy;
  r.convention = cfg.convention;
  return r;
}

namespace {

std::shared_ptr<const LabeledImage> image_of(const ImageEntry& e) {
  if (e.image) return e.image;
  return std::make_shared<const LabeledImage>(load_labeled_image(e.path));
}

template <class Fn>
auto with_image_context(const ImageEntry& e, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& err) {
    throw Error(err.code(), "image " + e.id + ": " + err.detail());
  }
}

} // namespace

std::vector<EntropyRecord> analyze(std::span<const ImageEntry> images, const RunConfig& cfg) {
  cfg.validate();
  std::vector<EntropyRecord> out(images.size());
  detail::parallel_for(images.size(), cfg.threads, [&](std::size_t i) {
    const auto& e = images[i];
    out[i] = with_image_context(e, [&] {
      const auto img = image_of(e);
      const auto sel = spiral_select(*img, cfg.n_cells);
      return summarize_points(sel.centroids, cfg);
    });
    out[i].image_id = e.id;
    out[i].group = e.group;
  });
  return out;
}

std::string_view to_string(Statistic s) noexcept {
  switch (s) {
  case Statistic::PE0: return "PE0";
  case Statistic::PE1: return "PE1";
  case Statistic::L0: return "L0";
  case Statistic::L1: return "L1";
  }
  return "PE0";
}

Statistic parse_statistic(std::string_view s) {
  for (auto st : {Statistic::PE0, Statistic::PE1, Statistic::L0, Statistic::L1})
    if (s == to_string(st)) return st;
  throw Error(Errc::ConfigError, "unknown statistic '" + std::string(s) + "' (PE0, PE1, L0, L1)");
}

double value_of(const EntropyRecord& r, Statistic s) {
  switch (s) {
  case Statistic::PE0: return r.pe0;
  case Statistic::PE1: return r.pe1;
  case Statistic::L0: return r.l0;
  case Statistic::L1: return r.l1;
  }
  return r.pe0;
}

RunMetadata metadata_for(const RunConfig& cfg) {
  RunMetadata m;
  m.config_hash = cfg.hash();
  m.seed = cfg.seed;
  std::ostringstream extra;
  extra << "n_cells=" << cfg.n_cells << " bar_policy=" << to_string(cfg.bar_policy)
        << " alpha=" << to_string(cfg.convention) << " log_base=" << to_string(cfg.log_base);
  if (cfg.bar_policy == BarPolicy::CapInfinite)
    extra << " cap=" << (cfg.cap_value ? detail::format_double(*cfg.cap_value) : std::string("max_filtration"));
  m.extra = extra.str();
  return m;
}

namespace {

void write_metadata_lines(std::ostream& out, const RunMetadata& meta) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(meta.config_hash));
  out << "# topotess " << meta.version << '\n' << "# config_hash=" << hash << '\n' << "# seed=" << meta.seed << '\n';
  if (!meta.extra.empty()) out << "# " << meta.extra << '\n';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

} // namespace

void write_records_csv(std::ostream& out, std::span<const EntropyRecord> records, const RunMetadata& meta) {
  write_metadata_lines(out, meta);
  out << "image_id,group,n_cells,PE0,PE1,L0,L1,bars0,bars1,bar_policy,alpha\n";
  for (const auto& r : records)
    out << r.image_id << ',' << r.group << ',' << r.n_cells << ',' << detail::format_double(r.pe0) << ','
        << detail::format_double(r.pe1) << ',' << detail::format_double(r.l0) << ','
        << detail::format_double(r.l1) << ',' << r.bars0 << ',' << r.bars1 << ',' << to_string(r.policy) << ','
        << to_string(r.convention) << '\n';
}

std::vector<EntropyRecord> read_records_csv(std::istream& in) {
  std::string line;
  bool header = false;
  std::vector<EntropyRecord> out;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_csv(line);
    if (!header) {
      if (f.size() != 11 || f[0] != "image_id") throw Error(Errc::MalformedFile, "unexpected records header");
      header = true;
      continue;
    }
    if (f.size() != 11) throw Error(Errc::MalformedFile, "records line " + std::to_string(lineno));
    EntropyRecord r;
    r.image_id = f[0];
    r.group = f[1];
    auto num = [&](const std::string& s) {
      const auto v = detail::parse_double(s);
      if (!v) throw Error(Errc::MalformedFile, "records line " + std::to_string(lineno) + ": bad number " + s);
      return *v;
    };
    r.n_cells = static_cast<std::size_t>(num(f[2]));
    r.pe0 = num(f[3]);
    r.pe1 = num(f[4]);
    r.l0 = num(f[5]);
    r.l1 = num(f[6]);
    r.bars0 = static_cast<std::size_t>(num(f[7]));
    r.bars1 = static_cast<std::size_t>(num(f[8]));
    r.policy = f[9] == "cap_infinite" ? BarPolicy::CapInfinite : BarPolicy::StripInfinite;
    r.convention = f[10] == "radius" ? AlphaConvention::Radius : AlphaConvention::SquaredRadius;
    out.push_back(std::move(r));
  }
  if (!header) throw Error(Errc::MalformedFile, "records file has no header");
  return out;
}

std::vector<StatisticComparison> compare(std::span<const EntropyRecord> records, const CompareOptions& opts) {
  std::vector<std::string> order;
  for (const auto& r : records)
    if (std::find(order.begin(), order.end(), r.group) == order.end()) order.push_back(r.group);
  std::vector<std::string> groups = opts.groups.empty() ? order : opts.groups;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (std::find(groups.begin() + static_cast<std::ptrdiff_t>(i) + 1, groups.end(), groups[i]) != groups.end())
      throw Error(Errc::ConfigError, "duplicate group name " + groups[i]);
    if (std::find(order.begin(), order.end(), groups[i]) == order.end())
      throw Error(Errc::ConfigError, "no records for group " + groups[i]);
  }
  if (groups.size() < 2) throw Error(Errc::TooFewGroups, "comparison needs at least two groups");

  std::vector<StatisticComparison> out;
  for (Statistic st : opts.statistics) {
    SampleGroups samples;
    for (const auto& g : groups) {
      SampleGroup sg{g, {}};
      for (const auto& r : records)
        if (r.group == g) sg.values.push_back(value_of(r, st));
      samples.push_back(std::move(sg));
    }
    StatisticComparison c;
    c.statistic = st;
    if (samples.size() >= 3) {
      c.reports.push_back(kruskal_wallis(samples));
      c.reports.push_back(dunn_test(samples, opts.adjust, opts.alternative));
    } else {
      auto mw = mann_whitney_u(samples[0].values, samples[1].values, opts.mw_mode, opts.alternative);
      mw.groups = {samples[0].name, samples[1].name};
      c.reports.push_back(std::move(mw));
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<SweepRow> sweep(std::span<const ImageEntry> images, const RunConfig& cfg, const SweepOptions& opts) {
  cfg.validate();
  if (opts.n_min < 3 || opts.step == 0 || opts.n_min > opts.n_max)
    throw Error(Errc::ConfigError, "sweep needs 3 <= n_min <= n_max and step >= 1");
  std::vector<std::size_t> ns;
  for (std::size_t n = opts.n_min; n <= opts.n_max; n += opts.step) ns.push_back(n);

  // per_image[i][k] = record of image i at ns[k]
  std::vector<std::vector<EntropyRecord>> per_image(images.size());
  detail::parallel_for(images.size(), cfg.threads, [&](std::size_t i) {
    const auto& e = images[i];
    per_image[i] = with_image_context(e, [&] {
      const auto img = image_of(e);
      const auto sel = spiral_select(*img, ns.back());
      std::vector<EntropyRecord> recs;
      for (std::size_t n : ns) {
        auto r = summarize_points(std::span<const Point2>(sel.centroids).first(n), cfg);
        r.image_id = e.id;
        r.group = e.group;
        recs.push_back(std::move(r));
      }
      return recs;
    });
  });

  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    std::vector<EntropyRecord> at_n;
    for (const auto& recs : per_image) at_n.push_back(recs[k]);
    for (const auto& c : compare(at_n, opts.compare)) {
      for (const auto& rep : c.reports) {
        if (rep.pairs.empty()) {
          const std::string label =
              rep.groups.size() == 2 ? rep.groups[0] + " vs " + rep.groups[1] : std::string("all");
          rows.push_back({ns[k], c.statistic, rep.test, label, rep.statistic, rep.p_value, rep.p_value});
        }
        for (const auto& pr : rep.pairs)
          rows.push_back({ns[k], c.statistic, rep.test, pr.first + " vs " + pr.second, pr.statistic, pr.p_value,
                           pr.p_adjusted});
      }
    }
  }
  return rows;
}

std::vector<ImageEntry> generate_cvt_images(const CvtDatasetOptions& opts) {
  opts.cvt.validate();
  std::vector<std::size_t> steps = opts.emit_steps;
  if (steps.empty())
    for (std::size_t s = 1; s <= opts.cvt.steps; ++s) steps.push_back(s);
  for (std::size_t s : steps)
    if (s < 1) throw Error(Errc::ConfigError, "CVT steps are 1-based");
  const std::size_t depth = *std::max_element(steps.begin(), steps.end());

  // images[i][k] = image i at steps[k]
  std::vector<std::vector<std::shared_ptr<const LabeledImage>>> images(opts.images_per_step);
  detail::parallel_for(opts.images_per_step, opts.threads, [&](std::size_t i) {
    CvtConfig cfg = opts.cvt;
    cfg.seed = stream_seed(opts.cvt.seed, i);
    cfg.steps = depth;
    const auto path = cvt_path(cfg);
    for (std::size_t s : steps)
      images[i].push_back(std::make_shared<const LabeledImage>(rasterize(path[s - 1], cfg.box, opts.rows, opts.cols)));
  });

  std::vector<ImageEntry> out;
  for (std::size_t k = 0; k < steps.size(); ++k)
    for (std::size_t i = 0; i < opts.images_per_step; ++i) {
      char id[64];
      std::snprintf(id, sizeof id, "CVT%zu_%02zu", steps[k], i + 1);
      ImageEntry e;
      e.id = id;
      e.group = "CVT" + std::to_string(steps[k]);
      e.image = images[i][k];
      out.push_back(std::move(e));
    }
  return out;
}

std::vector<ImageEntry> make_cvt_dataset(const CvtDatasetOptions& opts, const std::filesystem::path& dir,
                                         ImageFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + dir.string());
  auto entries = generate_cvt_images(opts);
  const char* ext = format == ImageFormat::Pgm ? ".pgm" : ".txt";
  for (auto& e : entries) {
    e.path = dir / (e.id + ext);
    save_labeled_image(e.path, *e.image, format);
  }

  // Generators of every emitted image, for point-set workflows.
  std::vector<std::size_t> steps = opts.emit_steps;
  if (steps.empty())
    for (std::size_t s = 1; s <= opts.cvt.steps; ++s) steps.push_back(s);
  const std::size_t depth = *std::max_element(steps.begin(), steps.end());
  for (std::size_t i = 0; i < opts.images_per_step; ++i) {
    CvtConfig cfg = opts.cvt;
    cfg.seed = stream_seed(opts.cvt.seed, i);
    cfg.steps = depth;
    const auto path = cvt_path(cfg);
    for (std::size_t s : steps) {
      char name[64];
      std::snprintf(name, sizeof name, "CVT%zu_%02zu.points.csv", s, i + 1);
      std::ofstream out(dir / name);
      if (!out) throw Error(Errc::IoError, std::string("cannot write ") + name);
      out << "x,y\n";
      for (const auto& p : path[s - 1]) out << detail::format_double(p.x) << ',' << detail::format_double(p.y) << '\n';
    }
  }

  std::vector<ImageEntry> relative = entries;
  for (auto& e : relative) e.path = e.path.filename();
  write_manifest(dir / "manifest.json", relative);

  nlohmann::ordered_json meta;
  meta["version"] = std::string(kVersion);
  meta["seed"] = opts.cvt.seed;
  meta["expected_points"] = opts.cvt.expected_points;
  meta["fixed_count"] = opts.cvt.fixed_count;
  meta["steps"] = steps;
  meta["images_per_step"] = opts.images_per_step;
  meta["resolution"] = {opts.rows, opts.cols};
  meta["box"] = {opts.cvt.box.xmin, opts.cvt.box.ymin, opts.cvt.box.xmax, opts.cvt.box.ymax};
  meta["rng"] = "mt19937_64(splitmix64(seed ^ image_index))";
  std::ofstream mout(dir / "dataset.json");
  mout << meta.dump(2) << '\n';
  return entries;
}

} // namespace topotess
