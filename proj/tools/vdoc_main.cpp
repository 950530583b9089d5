// vdoc command line: corpus synthesis and ingestion, field construction and
// the analyses built on it. Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vdoc/boundary.hpp"
#include "vdoc/calculus.hpp"
#include "vdoc/corpus.hpp"
#include "vdoc/error.hpp"
#include "vdoc/experiments.hpp"
#include "vdoc/learn.hpp"
#include "vdoc/render.hpp"

#ifndef VDOC_VERSION
#define VDOC_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vdoc;

namespace {

// Bad flag values discovered after CLI11 has parsed them.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::pair<double, double> parse_pair(const std::string& text, char sep, const char* flag) {
  const auto at = text.find(sep);
  try {
    if (at == std::string::npos) throw std::invalid_argument(text);
    std::size_t a = 0, b = 0;
    const double x = std::stod(text.substr(0, at), &a);
    const double y = std::stod(text.substr(at + 1), &b);
    if (a != at || b != text.size() - at - 1) throw std::invalid_argument(text);
    return {x, y};
  } catch (const std::exception&) {
    throw UsageError(std::string("bad value '") + text + "' for " + flag);
  }
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text, const char* flag, bool second_optional) {
  const std::string full = second_optional && text.find('x') == std::string::npos ? text + "x0" : text;
  double a = 0, b = 0;
  try {
    std::tie(a, b) = parse_pair(full, 'x', flag);
  } catch (const UsageError&) {
    throw UsageError(std::string("bad value '") + text + "' for " + flag);
  }
  if (a < 0 || b < 0 || a != static_cast<double>(static_cast<std::size_t>(a)) ||
      b != static_cast<double>(static_cast<std::size_t>(b)))
    throw UsageError(std::string("bad value '") + text + "' for " + flag);
  return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

// Everything one run needs to describe itself in its manifest.
class Run {
 public:
  Run(std::string name, std::vector<std::string> argv) : name_(std::move(name)), argv_(std::move(argv)) {}

  fs::path out;
  std::uint64_t seed = 0;
  bool seeded = false;

  void input(const fs::path& path) {
    if (fs::is_directory(path)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(path))
        if (e.is_regular_file()) files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) input(f);
      return;
    }
    inputs_.push_back({{"path", path.string()}, {"fnv1a64", hex(fnv1a(read_file(path)))}});
  }

  void write(const std::string& file, const std::string& bytes) {
    fs::create_directories(out);
    const fs::path path = out / file;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write " + path.string());
    f << bytes;
    if (!f) throw DataError("failed writing " + path.string());
    outputs_.push_back(path.string());
  }

  void finish(const CLI::App& sub) const {
    json config = json::object();
    for (const auto* opt : sub.get_options()) {
      if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
      const std::string key = opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& r = opt->results();
        config[key] = r.size() == 1 ? json(r.front()) : json(r);
      } else if (!opt->get_default_str().empty()) {
        config[key] = opt->get_default_str();
      }
    }
    char stamp[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    json m = {{"tool", "vdoc"},
              {"version", VDOC_VERSION},
              {"subcommand", name_},
              {"command_line", argv_},
              {"seeds", seeded ? json::array({seed}) : json::array()},
              {"config", config},
              {"inputs", inputs_},
              {"outputs", outputs_},
              {"timestamp", stamp}};
    fs::create_directories(out);
    std::ofstream f(out / (name_ + ".manifest.json"));
    f << m.dump(2) << '\n';
    if (!f) throw DataError("failed writing manifest");
  }

 private:
  std::string name_;
  std::vector<std::string> argv_;
  json inputs_ = json::array();
  json outputs_ = json::array();
};

struct CorpusArgs {
  std::string path;
  bool raw_text = false;
};

void add_corpus_option(CLI::App* sub, CorpusArgs& a, bool required) {
  auto* opt = sub->add_option("--corpus", a.path, "json-lines corpus (tokens space-separated, as written by synth/ingest)");
  if (required) opt->required();
  sub->add_flag("--raw-text", a.raw_text, "tokenize the corpus text instead of reading tokens verbatim");
}

VersionedDocument load_corpus(const CorpusArgs& a, Run& run) {
  run.input(a.path);
  IngestOptions opts;
  opts.pretokenized = !a.raw_text;
  return ingest(a.path, SourceFormat::json_lines, opts);
}

struct FieldArgs {
  std::string mode = "normalized";
  std::string grid = "256";
  std::string bandwidth;
  double radius = 3.0;
};

void add_field_options(CLI::App* sub, FieldArgs& a, const std::string& grid_default = "256") {
  a.grid = grid_default;
  sub->add_option("--mode", a.mode, "normalized|raw")->capture_default_str();
  sub->add_option("--grid", a.grid, "SxT grid nodes; T = 0 or omitted means one row per revision")
      ->capture_default_str();
  sub->add_option("--bandwidth", a.bandwidth, "hs,ht in space and time units (default 0.02 I, 2)");
  sub->add_option("--radius", a.radius, "kernel truncation radius in bandwidths")->capture_default_str();
}

FieldMode mode_of(const FieldArgs& a) {
  try {
    return field_mode_from_string(a.mode);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

KernelSpec kernel_of(const FieldArgs& a, const VersionedDocument& doc) {
  KernelSpec k = default_kernel(doc, mode_of(a));
  if (!a.bandwidth.empty()) {
    const auto [hs, ht] = parse_pair(a.bandwidth, ',', "--bandwidth");
    k.space_bandwidth = hs;
    k.time_bandwidth = ht;
  }
  k.truncation_radius = a.radius;
  try {
    k.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return k;
}

GridSize grid_of(const FieldArgs& a) {
  const auto [s, t] = parse_dims(a.grid, "--grid", true);
  if (s == 0) throw UsageError("--grid needs at least one space node");
  return {s, t};
}

SpaceTimeField field_from(const CorpusArgs& c, const FieldArgs& f, const std::string& field_path, Run& run) {
  if (!field_path.empty()) {
    run.input(field_path);
    std::ifstream in(field_path, std::ios::binary);
    if (!in) throw DataError("cannot open " + field_path);
    return read_field(in);
  }
  if (c.path.empty()) throw UsageError("either --field or --corpus is required");
  const auto doc = load_corpus(c, run);
  return build_field(doc, mode_of(f), grid_of(f), kernel_of(f, doc));
}

std::string article_name(const std::string& path) { return fs::path(path).stem().string(); }

std::string csv(const ScalarField& f) {
  std::ostringstream s;
  write_scalar_csv(f, s);
  return s.str();
}

std::string curve_csv(const std::vector<double>& v, const char* header) {
  std::ostringstream s;
  write_curve_csv(v, header, s);
  return s.str();
}

SplitPolicy split_of(const std::string& text, std::uint64_t seed) {
  try {
    return SplitPolicy::parse(text, seed);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

// Splices "--key value" pairs from a flat JSON object in front of the
// command-line flags; later flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    std::size_t consumed = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      consumed = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      consumed = 1;
    } else {
      continue;
    }
    json cfg;
    try {
      cfg = json::parse(read_file(path));
    } catch (const json::exception& e) {
      throw DataError("config " + path + ": " + e.what());
    }
    if (!cfg.is_object()) throw DataError("config " + path + ": expected a JSON object");
    std::vector<std::string> spliced;
    for (const auto& [key, value] : cfg.items()) {
      if (value.is_boolean()) {
        if (value.get<bool>()) spliced.push_back("--" + key);
      } else if (value.is_string()) {
        spliced.push_back("--" + key);
        spliced.push_back(value.get<std::string>());
      } else if (value.is_number_integer() || value.is_number_unsigned()) {
        spliced.push_back("--" + key);
        spliced.push_back(value.dump());
      } else if (value.is_number()) {
        spliced.push_back("--" + key);
        spliced.push_back(format_number(value.get<double>()));
      } else {
        throw DataError("config " + path + ": value of '" + key + "' must be a scalar");
      }
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + consumed));
    // Insert right after the subcommand name so explicit flags override.
    std::size_t at = 1;
    while (at < args.size() && args[at].rfind("-", 0) == 0) ++at;
    at = std::min(at + 1, args.size());
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), spliced.begin(), spliced.end());
    break;
  }
  return args;
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args = expand_config(std::vector<std::string>(argv, argv + argc));

  CLI::App app{"Space-time analysis of versioned documents"};
  app.require_subcommand(1);
  app.set_version_flag("--version", VDOC_VERSION);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_unused;
  app.add_option("--config", config_unused, "JSON object of flag values; explicit flags override");

  std::string out = ".";
  std::uint64_t seed = 0;
  auto common = [&](CLI::App* sub, bool seeded) {
    sub->add_option("--out", out, "output directory")->capture_default_str();
    if (seeded) sub->add_option("--seed", seed, "random seed")->capture_default_str();
  };

  // synth
  auto* synth = app.add_subcommand("synth", "write a synthetic corpus");
  std::string synth_kind = "three-segment";
  bool preset = false;
  std::size_t synth_versions = 0;
  double scramble_rate = 0.15;
  synth->add_flag("--paper-fig1", preset, "the two-word three-segment corpus (same as --kind three-segment)");
  synth->add_option("--kind", synth_kind, "three-segment|sectioned|undo")->capture_default_str();
  synth->add_option("--versions", synth_versions, "number of revisions (0 keeps the preset)");
  synth->add_option("--scramble-rate", scramble_rate, "undo: fraction of scrambled revisions")->capture_default_str();
  common(synth, true);

  // ingest
  auto* ing = app.add_subcommand("ingest", "tokenize raw revisions into a corpus");
  std::string ing_input, ing_format = "auto";
  bool keep_stopwords = false, no_stem = false, strip = false;
  ing->add_option("--input", ing_input, "json-lines file or revision directory")->required();
  ing->add_option("--format", ing_format, "auto|jsonl|dir")->capture_default_str();
  ing->add_flag("--keep-stopwords", keep_stopwords);
  ing->add_flag("--no-stem", no_stem);
  ing->add_flag("--strip-tags", strip);
  common(ing, false);

  // field
  auto* fld = app.add_subcommand("field", "build and serialize the smoothed field");
  CorpusArgs fld_c;
  FieldArgs fld_f;
  add_corpus_option(fld, fld_c, true);
  add_field_options(fld, fld_f);
  common(fld, false);

  // derive
  auto* der = app.add_subcommand("derive", "derivative norm fields, h(s), g(t), directional change");
  CorpusArgs der_c;
  FieldArgs der_f;
  std::string der_field, der_curve;
  add_corpus_option(der, der_c, false);
  add_field_options(der, der_f);
  der->add_option("--field", der_field, "serialized field instead of --corpus");
  der->add_option("--curve", der_curve, "CSV of s,t points for the directional change");
  common(der, false);

  // edges
  auto* edg = app.add_subcommand("edges", "edge detection and the edge prediction table");
  CorpusArgs edg_c;
  FieldArgs edg_f;
  std::string cells = "20x20", edg_split = "random:0.7";
  double threshold = 0.2;
  std::size_t tt_window = 20, tt_spacing = 0, tt_max = 0;
  add_corpus_option(edg, edg_c, true);
  add_field_options(edg, edg_f);
  edg->add_option("--cells", cells, "AxB cell grid")->capture_default_str();
  edg->add_option("--threshold", threshold, "edge threshold relative to the maximum magnitude")->capture_default_str();
  edg->add_option("--split", edg_split, "random:F|time:F")->capture_default_str();
  edg->add_option("--tt-window", tt_window, "TextTiling tokens per side")->capture_default_str();
  edg->add_option("--tt-spacing", tt_spacing, "TextTiling minimum boundary spacing (0 = window/2)");
  edg->add_option("--tt-max", tt_max, "TextTiling boundaries per revision (0 = no cap)");
  common(edg, true);

  // segment
  auto* seg = app.add_subcommand("segment", "space-time segmentation");
  CorpusArgs seg_c;
  FieldArgs seg_f;
  std::string seg_field, seg_method = "embedded-lloyd";
  std::size_t k = 11;
  double c1 = -1, c2 = -1;
  add_corpus_option(seg, seg_c, false);
  add_field_options(seg, seg_f, "64");
  seg->add_option("--field", seg_field, "serialized field instead of --corpus");
  seg->add_option("--k", k, "number of segments")->capture_default_str();
  seg->add_option("--c1", c1, "space weight (default 1/I^2)");
  seg->add_option("--c2", c2, "time weight (default 1/J^2)");
  seg->add_option("--method", seg_method, "embedded-lloyd|exact-medoids")->capture_default_str();
  common(seg, true);

  // undo
  auto* und = app.add_subcommand("undo", "UNDO prediction table");
  CorpusArgs und_c;
  FieldArgs und_f;
  std::string und_split = "time:0.7";
  add_corpus_option(und, und_c, true);
  add_field_options(und, und_f);
  und->add_option("--split", und_split, "random:F|time:F")->capture_default_str();
  common(und, true);

  // render
  auto* ren = app.add_subcommand("render", "PGM images and CSV exports");
  CorpusArgs ren_c;
  FieldArgs ren_f;
  std::string ren_field, what = "d1_space", word, range;
  bool quiver = false;
  add_corpus_option(ren, ren_c, false);
  add_field_options(ren, ren_f);
  ren->add_option("--field", ren_field, "serialized field instead of --corpus");
  ren->add_option("--what", what, "d1_space|d1_time|d2_space|d2_time|component|magnitude")->capture_default_str();
  ren->add_option("--word", word, "word for --what component (and --quiver)");
  ren->add_option("--range", range, "lo,hi fixed gray range (default: min-max)");
  ren->add_flag("--quiver", quiver, "also export the word's gradient as s,t,ds,dt,magnitude");
  common(ren, false);

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  Run run(sub->get_name(), args);
  run.out = out;
  run.seed = seed;
  run.seeded = sub->get_option_no_throw("--seed") != nullptr;

  if (sub == synth) {
    if (preset) synth_kind = "three-segment";
    SyntheticCorpus corpus = [&] {
      if (synth_kind == "three-segment") {
        auto cfg = SyntheticConfig::three_segment(seed);
        if (synth_versions) cfg.num_versions = synth_versions;
        return synthesize(cfg);
      }
      SectionedConfig cfg;
      cfg.seed = seed;
      if (synth_versions) cfg.num_versions = synth_versions;
      if (synth_kind == "sectioned") return synthesize_sectioned(cfg);
      if (synth_kind == "undo") return synthesize_with_undo({cfg, scramble_rate});
      throw UsageError("unknown --kind '" + synth_kind + "'");
    }();
    std::ostringstream corpus_text;
    export_json_lines(corpus.document, corpus_text);
    run.write("corpus.jsonl", corpus_text.str());
    run.write("labels.json", json({{"segment_labels", corpus.segment_labels}}).dump() + "\n");
  } else if (sub == ing) {
    SourceFormat format = fs::is_directory(ing_input) ? SourceFormat::revision_directory : SourceFormat::json_lines;
    if (ing_format == "jsonl") format = SourceFormat::json_lines;
    else if (ing_format == "dir") format = SourceFormat::revision_directory;
    else if (ing_format != "auto") throw UsageError("unknown --format '" + ing_format + "'");
    IngestOptions opts;
    opts.tokenizer = {!keep_stopwords, !no_stem, strip};
    run.input(ing_input);
    const auto doc = ingest(ing_input, format, opts);
    std::ostringstream text;
    export_json_lines(doc, text);
    run.write("corpus.jsonl", text.str());
  } else if (sub == fld) {
    const auto f = field_from(fld_c, fld_f, "", run);
    std::ostringstream bin;
    write_field(f, bin);
    run.write("field.bin", bin.str());
  } else if (sub == der) {
    const auto f = field_from(der_c, der_f, der_field, run);
    ScalarField d1s, d1t;
    for (auto which : {DerivativeNorm::d1_space, DerivativeNorm::d1_time, DerivativeNorm::d2_space,
                       DerivativeNorm::d2_time}) {
      const bool space = which == DerivativeNorm::d1_space || which == DerivativeNorm::d2_space;
      const bool second = which == DerivativeNorm::d2_space || which == DerivativeNorm::d2_time;
      if ((space ? f.grid_s() : f.grid_t()) < (second ? 3u : 2u)) {
        std::cerr << "skipping " << to_string(which) << ": grid too small along that axis\n";
        continue;
      }
      const auto norm = derivative_norm_field(f, which);
      run.write(std::string(to_string(which)) + ".csv", csv(norm));
      if (which == DerivativeNorm::d1_space) d1s = norm;
      if (which == DerivativeNorm::d1_time) d1t = norm;
    }
    if (d1s.size()) run.write("h.csv", curve_csv(integrated_change(d1s, Axis::space), "s,h"));
    if (d1t.size()) run.write("g.csv", curve_csv(integrated_change(d1t, Axis::time), "t,g"));
    if (!der_curve.empty()) {
      run.input(der_curve);
      std::ifstream in(der_curve);
      if (!in) throw DataError("cannot open " + der_curve);
      run.write("directional.txt", format_number(directional_change(f, read_curve_csv(in))) + "\n");
    }
  } else if (sub == edg) {
    const auto doc = load_corpus(edg_c, run);
    EdgeExperiment ex;
    ex.mode = mode_of(edg_f);
    ex.grid = grid_of(edg_f);
    ex.kernel = kernel_of(edg_f, doc);
    const auto [ca, cb] = parse_dims(cells, "--cells", false);
    if (ca == 0 || cb == 0) throw UsageError("--cells needs positive dimensions");
    ex.cells = {ca, cb};
    ex.split = split_of(edg_split, seed);
    ex.train.seed = seed;
    ex.texttiling = {tt_window, 0, tt_spacing, tt_max};
    const TableRow row = run_edge_experiment(doc, article_name(edg_c.path), ex);
    const auto f = build_field(doc, ex.mode, ex.grid, *ex.kernel);
    const auto edges = detect_edges(sqrt(derivative_norm_field(f, DerivativeNorm::d1_space)), threshold);
    std::ostringstream e;
    write_edges_csv(edges, e);
    run.write("edges.csv", e.str());
    const std::span<const TableRow> rows(&row, 1);
    run.write("table.txt", format_table(rows));
    run.write("table.json", table_to_json(rows));
    std::cout << format_table(rows);
  } else if (sub == seg) {
    const auto f = field_from(seg_c, seg_f, seg_field, run);
    SegmentOptions so;
    so.k = k;
    so.c1 = c1;
    so.c2 = c2;
    so.seed = seed;
    try {
      so.method = segment_method_from_string(seg_method);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    const auto s = segment(f, so);
    std::ostringstream c;
    write_segmentation_csv(s, c);
    run.write("segmentation.csv", c.str());
    run.write("segmentation.pgm", segmentation_pgm(s.assignment, s.grid_s, s.grid_t, s.k));
    run.write("segmentation.json", json({{"k", s.k},
                                         {"method", to_string(so.method)},
                                         {"c1", s.c1},
                                         {"c2", s.c2},
                                         {"objective", s.objective},
                                         {"objective_trace", s.objective_trace},
                                         {"iterations", s.iterations}})
                                           .dump(2) +
                                       "\n");
  } else if (sub == und) {
    const auto doc = load_corpus(und_c, run);
    UndoExperiment ex;
    ex.mode = mode_of(und_f);
    ex.grid_s = grid_of(und_f).space;
    ex.kernel = kernel_of(und_f, doc);
    ex.split = split_of(und_split, seed);
    ex.train.seed = seed;
    const TableRow row = run_undo_experiment(doc, article_name(und_c.path), ex);
    const std::span<const TableRow> rows(&row, 1);
    run.write("table.txt", format_table(rows));
    run.write("table.json", table_to_json(rows));
    std::cout << format_table(rows);
  } else if (sub == ren) {
    const auto f = field_from(ren_c, ren_f, ren_field, run);
    std::optional<WordId> id;
    if (!word.empty()) {
      if (ren_c.path.empty()) throw UsageError("--word needs --corpus to resolve the vocabulary");
      IngestOptions opts;
      opts.pretokenized = !ren_c.raw_text;
      id = ingest(ren_c.path, SourceFormat::json_lines, opts).vocabulary().find(word);
      if (!id) throw DataError("word '" + word + "' is not in the vocabulary");
    }
    ScalarField img;
    if (what == "component") {
      if (!id) throw UsageError("--what component needs --word");
      img = component_field(f, *id);
    } else if (what == "magnitude") {
      img = sqrt(derivative_norm_field(f, DerivativeNorm::d1_space) + derivative_norm_field(f, DerivativeNorm::d1_time));
    } else {
      std::optional<DerivativeNorm> which;
      for (auto d : {DerivativeNorm::d1_space, DerivativeNorm::d1_time, DerivativeNorm::d2_space,
                     DerivativeNorm::d2_time})
        if (what == to_string(d)) which = d;
      if (!which) throw UsageError("unknown --what '" + what + "'");
      img = derivative_norm_field(f, *which);
    }
    ImageSpec spec;
    if (!range.empty()) {
      const auto [lo, hi] = parse_pair(range, ',', "--range");
      if (!(hi > lo)) throw UsageError("--range needs lo < hi");
      spec = ImageSpec::fixed_range(lo, hi);
    }
    const std::string stem = what == "component" ? "component-" + word : what;
    run.write(stem + ".pgm", to_pgm(img, spec));
    run.write(stem + ".csv", csv(img));
    if (quiver) {
      if (!id) throw UsageError("--quiver needs --word");
      std::ostringstream q;
      export_quiver(component_partial(f, *id, Axis::space), component_partial(f, *id, Axis::time), q);
      run.write("quiver-" + word + ".csv", q.str());
    }
  }
  run.finish(*sub);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
