#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "scalocal/curve.hpp"
#include "scalocal/point_set.hpp"

namespace scalocal::cli {

enum class ReferenceKind { none, brud, bud, file };
enum class OutputFormat { csv, json };
enum class LogBase { natural, base10 };

/// Everything that determines an analysis run. Grid bounds are in units of L.
struct AnalysisConfig {
  std::vector<double> qs{0.0};
  double e_min = 1e-3;
  double e_max = 3.0;
  double per_decade = 8.0;
  std::size_t dither = 16;
  std::uint64_t seed = 1;
  ReferenceKind reference = ReferenceKind::none;
  std::string reference_file;
  OutputFormat format = OutputFormat::csv;
  LogBase log_base = LogBase::natural;

  void validate() const;
  ScaleGrid grid(double side) const;
  /// Multiplier from natural log to the reporting base.
  double report_factor() const;
};

nlohmann::json to_json(const AnalysisConfig& config);
/// Keys absent from `j` keep the values already in `config`.
void merge_json(const nlohmann::json& j, AnalysisConfig& config);

/// Curves of one rank; the reference-dependent members are empty when the
/// run has no reference.
struct RankResult {
  Curve entropy;
  std::optional<Curve> dimension;
  std::optional<Curve> reference;
  std::optional<Curve> information;
  std::optional<Curve> transport;
};

struct AnalysisResult {
  double side = 1.0;
  std::vector<RankResult> ranks;
};

/// Runs the sweep and derives every curve. `file_references` supplies the
/// reference curves when config.reference == file.
AnalysisResult analyze(const PointSet& points, const AnalysisConfig& config,
                       const std::vector<Curve>& file_references = {});

/// CSV columns: scale, log10_scale_over_L, q, S, S_stderr, S_ref, I, d_q,
/// transport. Rows ordered by (q, scale); missing values are empty fields.
void write_csv(std::ostream& os, const AnalysisResult& result, const AnalysisConfig& config);
void write_json(std::ostream& os, const AnalysisResult& result, const AnalysisConfig& config,
                const nlohmann::json& extra = {});

/// Entry point shared by the executable and the tests. Returns the process
/// exit code: 0 success, 1 user error, 2 I/O error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scalocal::cli
