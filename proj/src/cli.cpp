#include "scalocal/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "scalocal/analytic.hpp"
#include "scalocal/entropy.hpp"
#include "scalocal/errors.hpp"
#include "scalocal/generators.hpp"
#include "scalocal/io.hpp"
#include "scalocal/measures.hpp"

namespace scalocal::cli {

namespace {

using nlohmann::json;

std::string_view name(ReferenceKind k) {
  switch (k) {
    case ReferenceKind::none: return "none";
    case ReferenceKind::brud: return "brud";
    case ReferenceKind::bud: return "bud";
    case ReferenceKind::file: return "file";
  }
  return "none";
}

ReferenceKind parse_reference(const std::string& s) {
  if (s == "none") return ReferenceKind::none;
  if (s == "brud") return ReferenceKind::brud;
  if (s == "bud") return ReferenceKind::bud;
  if (s == "file") return ReferenceKind::file;
  throw InvalidArgument("unknown reference '" + s + "' (none, brud, bud, file)");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw InvalidArgument("unknown format '" + s + "' (csv, json)");
}

LogBase parse_log_base(const std::string& s) {
  if (s == "natural" || s == "e") return LogBase::natural;
  if (s == "base10" || s == "10") return LogBase::base10;
  throw InvalidArgument("unknown log base '" + s + "' (natural, base10)");
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json array_of(std::span<const double> v, double factor = 1.0) {
  json a = json::array();
  for (double x : v) a.push_back(number_or_null(x * factor));
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// AnalysisConfig

void AnalysisConfig::validate() const {
  if (qs.empty()) throw InvalidArgument("at least one rank q is required");
  for (double q : qs) validate_rank(q);
  if (!(e_min > 0.0)) throw InvalidArgument("e_min must be positive");
  if (!(e_min < e_max)) throw InvalidArgument("e_min must be smaller than e_max");
  if (!(per_decade > 0.0)) throw InvalidArgument("points per decade must be positive");
  if (dither == 0) throw InvalidArgument("dither count J must be >= 1");
  if (reference == ReferenceKind::file && reference_file.empty())
    throw InvalidArgument("reference 'file' needs a reference file path");
}

ScaleGrid AnalysisConfig::grid(double side) const {
  return ScaleGrid::log_spaced(e_min * side, e_max * side, per_decade);
}

double AnalysisConfig::report_factor() const {
  return log_base == LogBase::base10 ? 1.0 / std::numbers::ln10 : 1.0;
}

json to_json(const AnalysisConfig& c) {
  return json{{"qs", c.qs},
              {"e_min", c.e_min},
              {"e_max", c.e_max},
              {"per_decade", c.per_decade},
              {"J", c.dither},
              {"seed", c.seed},
              {"reference", name(c.reference)},
              {"reference_file", c.reference_file},
              {"format", c.format == OutputFormat::csv ? "csv" : "json"},
              {"log_base", c.log_base == LogBase::natural ? "natural" : "base10"}};
}

void merge_json(const json& j, AnalysisConfig& c) {
  if (!j.is_object()) throw InvalidArgument("analysis config must be a JSON object");
  if (j.contains("qs")) c.qs = j.at("qs").get<std::vector<double>>();
  if (j.contains("e_min")) c.e_min = j.at("e_min").get<double>();
  if (j.contains("e_max")) c.e_max = j.at("e_max").get<double>();
  if (j.contains("per_decade")) c.per_decade = j.at("per_decade").get<double>();
  if (j.contains("J")) c.dither = j.at("J").get<std::size_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("reference")) c.reference = parse_reference(j.at("reference").get<std::string>());
  if (j.contains("reference_file")) c.reference_file = j.at("reference_file").get<std::string>();
  if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
  if (j.contains("log_base")) c.log_base = parse_log_base(j.at("log_base").get<std::string>());
}

// ---------------------------------------------------------------------------
// Analysis

AnalysisResult analyze(const PointSet& points, const AnalysisConfig& config,
                       const std::vector<Curve>& file_references) {
  config.validate();
  const ScaleGrid grid = config.grid(points.side());
  std::vector<Curve> entropies =
      entropy_sweep(points, config.qs, grid, config.dither, config.seed);

  AnalysisResult result;
  result.side = points.side();
  for (Curve& s : entropies) {
    RankResult r{.entropy = std::move(s)};
    if (grid.size() >= 3) r.dimension = dimension_curve(r.entropy);

    ReferenceSpec spec{.dim = points.dim(), .side = points.side(), .points = {}, .q = r.entropy.q};
    switch (config.reference) {
      case ReferenceKind::none:
        break;
      case ReferenceKind::brud:
        spec.points = points.size();
        r.reference = reference_entropy_curve(spec, grid);
        break;
      case ReferenceKind::bud:
        r.reference = reference_entropy_curve(spec, grid);
        break;
      case ReferenceKind::file: {
        for (const Curve& c : file_references) {
          if (c.q == r.entropy.q) r.reference = c;
        }
        if (!r.reference)
          throw IncompatibleCurves("reference file has no curve for q=" +
                                   format_double(r.entropy.q));
        break;
      }
    }
    if (r.reference) {
      r.information = information(CurvePair{.reference = *r.reference, .object = r.entropy});
      if (grid.size() >= 3) r.transport = dimension_transport(*r.information);
    }
    result.ranks.push_back(std::move(r));
  }
  return result;
}

void write_csv(std::ostream& os, const AnalysisResult& result, const AnalysisConfig& config) {
  const double f = config.report_factor();
  const auto field = [](double v) { return format_double(v); };
  os << "scale,log10_scale_over_L,q,S,S_stderr,S_ref,I,d_q,transport\n";
  for (const RankResult& r : result.ranks) {
    const Curve& s = r.entropy;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double e = s.grid[k];
      std::string row = field(e) + ',' + field(std::log10(e / result.side)) + ',' +
                        field(s.q) + ',' + field(s.values[k] * f) + ',';
      if (s.has_error()) row += field(s.standard_error[k] * f);
      row += ',';
      if (r.reference) row += field(r.reference->values[k] * f);
      row += ',';
      if (r.information) row += field(r.information->values[k] * f);
      row += ',';
      if (r.dimension) row += field(r.dimension->values[k]);
      row += ',';
      if (r.transport) row += field(r.transport->values[k]);
      row += '\n';
      os << row;
    }
  }
}

namespace {

json curve_json(const Curve& c, double factor) {
  json j{{"q", c.q},
         {"kind", to_string(c.kind)},
         {"source", to_string(c.source)},
         {"values", array_of(c.values, factor)}};
  if (!c.standard_error.empty()) j["standard_error"] = array_of(c.standard_error, factor);
  if (!c.phase_spread.empty()) j["phase_spread"] = array_of(c.phase_spread, factor);
  if (c.phase_count) j["phase_count"] = c.phase_count;
  return j;
}

}  // namespace

void write_json(std::ostream& os, const AnalysisResult& result, const AnalysisConfig& config,
                const json& extra) {
  const double f = config.report_factor();
  json doc{{"format", "scalocal-curves v1"}, {"config", to_json(config)}, {"L", result.side}};
  if (!result.ranks.empty()) {
    const ScaleGrid& g = result.ranks.front().entropy.grid;
    doc["scale"] = array_of(g.scales());
    json lg = json::array();
    for (double e : g.scales()) lg.push_back(std::log10(e / result.side));
    doc["log10_scale_over_L"] = lg;
  }
  json curves = json::array();
  for (const RankResult& r : result.ranks) {
    curves.push_back(curve_json(r.entropy, f));
    if (r.reference) {
      json c = curve_json(*r.reference, f);
      c["role"] = "reference";
      curves.push_back(std::move(c));
    }
    if (r.information) curves.push_back(curve_json(*r.information, f));
    if (r.dimension) curves.push_back(curve_json(*r.dimension, 1.0));
    if (r.transport) curves.push_back(curve_json(*r.transport, 1.0));
  }
  doc["curves"] = std::move(curves);
  if (extra.is_object()) {
    for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
  }
  os << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Commands

namespace {

json load_recipe(const std::string& path, const char* section) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open recipe '" + path + "'");
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("recipe '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.contains(section)) throw InvalidArgument("recipe has no '" + std::string(section) + "' section");
  return doc.at(section);
}

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

template <class T>
void take(const std::optional<T>& flag, T& dst) {
  if (flag) dst = *flag;
}

/// Output sink: a file when a path is given, the command's stdout otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }
  void finish(const std::string& path) {
    stream().flush();
    if (!stream()) throw IoError("failed writing '" + (path.empty() ? "stdout" : path) + "'");
  }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

struct GenerateParams {
  std::string kind;
  std::size_t n = 0;
  std::size_t d = 2;
  double side = 1.0;
  std::uint64_t seed = 1;
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  double delta1 = 0.0;
  std::size_t n_total = 0;
  std::vector<std::size_t> sites;
  std::string out;
};

struct GenerateFlags {
  std::optional<std::string> kind;
  std::optional<std::size_t> n, d, n0, n1, n_total;
  std::optional<double> side, delta1;
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> sites;
  std::optional<std::string> out, recipe;
};

std::string member_path(const std::string& out, std::size_t sites) {
  const std::string tag = std::to_string(sites);
  if (const auto pos = out.find("{sites}"); pos != std::string::npos) {
    std::string s = out;
    s.replace(pos, 7, tag);
    return s;
  }
  std::filesystem::path p(out);
  const std::string stem = p.stem().string() + "_sites" + tag;
  return (p.parent_path() / (stem + p.extension().string())).string();
}

void summarize(std::ostream& os, const PointSet& p, const std::string& where) {
  os << "N=" << p.size() << " d=" << p.dim() << " L=" << format_double(p.side());
  if (!where.empty()) os << " -> " << where;
  os << '\n';
}

int cmd_generate(const GenerateFlags& flags, std::ostream& out, std::ostream& err) {
  GenerateParams p;
  if (flags.recipe) {
    const json j = load_recipe(*flags.recipe, "generate");
    take(j, "kind", p.kind);
    take(j, "n", p.n);
    take(j, "d", p.d);
    take(j, "L", p.side);
    take(j, "seed", p.seed);
    take(j, "n0", p.n0);
    take(j, "n1", p.n1);
    take(j, "delta1", p.delta1);
    take(j, "n_total", p.n_total);
    take(j, "sites", p.sites);
    take(j, "out", p.out);
  }
  take(flags.kind, p.kind);
  take(flags.n, p.n);
  take(flags.d, p.d);
  take(flags.side, p.side);
  take(flags.seed, p.seed);
  take(flags.n0, p.n0);
  take(flags.n1, p.n1);
  take(flags.delta1, p.delta1);
  take(flags.n_total, p.n_total);
  if (!flags.sites.empty()) p.sites = flags.sites;
  take(flags.out, p.out);

  std::vector<std::pair<PointSet, std::string>> sets;
  if (p.kind == "uniform") {
    sets.emplace_back(uniform_points(p.n, p.d, p.side, p.seed), p.out);
  } else if (p.kind == "hierarchy") {
    const HierarchySpec spec{.sites = p.n0, .per_site = p.n1, .width = p.delta1,
                             .side = p.side, .dim = p.d, .seed = p.seed};
    sets.emplace_back(hierarchy_points(spec), p.out);
  } else if (p.kind == "condensation") {
    if (p.out.empty()) throw InvalidArgument("condensation needs --out (one file per site count)");
    auto members = condensation_sequence(p.n_total, p.sites, p.delta1, p.side, p.d, p.seed);
    for (std::size_t k = 0; k < members.size(); ++k)
      sets.emplace_back(std::move(members[k]), member_path(p.out, p.sites[k]));
  } else {
    throw InvalidArgument("unknown generator '" + p.kind + "' (uniform, hierarchy, condensation)");
  }

  for (auto& [points, path] : sets) {
    if (path.empty()) {
      write_points(out, points);
      out.flush();
      if (!out) throw IoError("failed writing points to stdout");
      summarize(err, points, "");
    } else {
      save_points(path, points);
      summarize(out, points, path);
    }
  }
  return 0;
}

struct AnalysisFlags {
  std::vector<double> qs;
  std::optional<double> e_min, e_max, per_decade;
  std::optional<std::size_t> dither;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> reference, reference_file, format, log_base, recipe;
  std::string out;
};

AnalysisConfig resolve_config(const AnalysisFlags& f, const char* section) {
  AnalysisConfig c;
  if (f.recipe) merge_json(load_recipe(*f.recipe, section), c);
  if (!f.qs.empty()) c.qs = f.qs;
  take(f.e_min, c.e_min);
  take(f.e_max, c.e_max);
  take(f.per_decade, c.per_decade);
  take(f.dither, c.dither);
  take(f.seed, c.seed);
  if (f.reference) c.reference = parse_reference(*f.reference);
  take(f.reference_file, c.reference_file);
  if (f.format) c.format = parse_format(*f.format);
  if (f.log_base) c.log_base = parse_log_base(*f.log_base);
  c.validate();
  return c;
}

void emit(const AnalysisResult& result, const AnalysisConfig& config, const json& extra,
          const std::string& path, std::ostream& out) {
  Sink sink(path, out);
  if (config.format == OutputFormat::csv)
    write_csv(sink.stream(), result, config);
  else
    write_json(sink.stream(), result, config, extra);
  sink.finish(path);
}

int cmd_analyze(const std::string& in_path, const AnalysisFlags& flags, std::ostream& out) {
  const AnalysisConfig config = resolve_config(flags, "analyze");
  const PointSet points = load_points(in_path);

  std::vector<Curve> refs;
  if (config.reference == ReferenceKind::file) {
    std::ifstream is(config.reference_file);
    if (!is) throw IoError("cannot open reference file '" + config.reference_file + "'");
    refs = read_entropy_csv(is, 1.0 / config.report_factor());
  }
  const AnalysisResult result = analyze(points, config, refs);
  const json extra{{"points", {{"file", in_path}, {"N", points.size()}, {"d", points.dim()},
                               {"L", points.side()}}}};
  emit(result, config, extra, flags.out, out);
  return 0;
}

struct ReferenceFlags {
  std::optional<std::string> kind;
  std::optional<std::size_t> d;
  std::optional<double> side;
  std::optional<std::uint64_t> n;
};

int cmd_reference(const ReferenceFlags& rf, const AnalysisFlags& flags, std::ostream& out) {
  AnalysisConfig config = resolve_config(flags, "reference");
  std::string kind = "brud";
  ReferenceSpec base;
  if (flags.recipe) {
    const json j = load_recipe(*flags.recipe, "reference");
    take(j, "kind", kind);
    take(j, "d", base.dim);
    take(j, "L", base.side);
    if (j.contains("n")) base.points = j.at("n").get<std::uint64_t>();
  }
  take(rf.kind, kind);
  take(rf.d, base.dim);
  take(rf.side, base.side);
  if (rf.n) base.points = *rf.n;

  if (kind == "brud") {
    if (!base.points) throw InvalidArgument("brud reference needs --n");
    config.reference = ReferenceKind::brud;
  } else if (kind == "bud") {
    base.points.reset();
    config.reference = ReferenceKind::bud;
  } else {
    throw InvalidArgument("unknown reference kind '" + kind + "' (brud, bud)");
  }

  const ScaleGrid grid = config.grid(base.side);
  AnalysisResult result;
  result.side = base.side;
  for (double q : config.qs) {
    ReferenceSpec spec = base;
    spec.q = q;
    spec.validate();
    RankResult r{.entropy = reference_entropy_curve(spec, grid)};
    r.dimension = reference_dimension_curve(spec, grid);
    result.ranks.push_back(std::move(r));
  }
  json ref{{"kind", kind}, {"d", base.dim}, {"L", base.side}};
  if (base.points) ref["N"] = *base.points;
  emit(result, config, json{{"reference_spec", ref}}, flags.out, out);
  return 0;
}

void add_analysis_flags(CLI::App* app, AnalysisFlags& f, bool with_sweep) {
  app->add_option("--q", f.qs, "Ranks, comma separated (q >= 0, q != 1)")->delimiter(',');
  app->add_option("--emin", f.e_min, "Smallest scale, units of L");
  app->add_option("--emax", f.e_max, "Largest scale, units of L");
  app->add_option("--ppd", f.per_decade, "Grid points per decade");
  if (with_sweep) {
    app->add_option("--J", f.dither, "Dither phases per scale");
    app->add_option("--seed", f.seed, "Dither seed");
    app->add_option("--reference", f.reference, "none | brud | bud | file");
    app->add_option("--reference-file", f.reference_file, "Curve CSV used with --reference file");
  }
  app->add_option("--format", f.format, "csv | json");
  app->add_option("--log-base", f.log_base, "Reporting log base: natural | base10");
  app->add_option("--recipe", f.recipe, "JSON recipe file supplying defaults");
  app->add_option("--out", f.out, "Output file (default stdout)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scale-local Renyi entropy analysis of point sets", "scalocal"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic point-set file");
  generate->add_option("kind", gen.kind, "uniform | hierarchy | condensation");
  generate->add_option("--n", gen.n, "Point count (uniform)");
  generate->add_option("--d", gen.d, "Dimension");
  generate->add_option("--L", gen.side, "Support side");
  generate->add_option("--seed", gen.seed, "Generator seed");
  generate->add_option("--n0", gen.n0, "Cluster sites (hierarchy)");
  generate->add_option("--n1", gen.n1, "Points per cluster (hierarchy)");
  generate->add_option("--delta1", gen.delta1, "Cluster width (hierarchy, condensation)");
  generate->add_option("--n-total", gen.n_total, "Total points (condensation)");
  generate->add_option("--sites", gen.sites, "Site counts, comma separated (condensation)")
      ->delimiter(',');
  generate->add_option("--out", gen.out,
                       "Output file; condensation writes one file per site count");
  generate->add_option("--recipe", gen.recipe, "JSON recipe file supplying defaults");

  std::string in_path;
  AnalysisFlags af;
  auto* analyze_cmd = app.add_subcommand("analyze", "Entropy sweep of a point-set file");
  analyze_cmd->add_option("--in", in_path, "Point-set file")->required();
  add_analysis_flags(analyze_cmd, af, true);

  ReferenceFlags rf;
  AnalysisFlags rflags;
  auto* reference = app.add_subcommand("reference", "Analytic BUD/BRUD curves on a grid");
  reference->add_option("--kind", rf.kind, "brud | bud");
  reference->add_option("--d", rf.d, "Dimension");
  reference->add_option("--L", rf.side, "Support side");
  reference->add_option("--n", rf.n, "Point count (brud)");
  add_analysis_flags(reference, rflags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out, err);
    if (analyze_cmd->parsed()) return cmd_analyze(in_path, af, out);
    if (reference->parsed()) return cmd_reference(rf, rflags, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    err << "error: bad recipe value: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace scalocal::cli
