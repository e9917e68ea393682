#pragma once

// Results table over the catalog and its CSV / JSON / text serializations.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "s2xr/optimizer.hpp"

namespace s2xr {

struct ReportRow {
  std::string group;
  std::vector<Fraction> parts;  ///< translation parts of the generators
  std::optional<int> q;
  std::optional<int> k;
  bool failed = false;
  std::string error;
  double radius = 0.0;
  double density = 0.0;
  int kissing = 0;
  Vec3 kernel;
  double tau = 0.0;
  bool certified = false;
  bool global_max = false;
};

/// (group, q, k) combinations tried for one catalog row.
struct RowSweep {
  std::string group;
  std::vector<std::pair<std::optional<int>, std::optional<int>>> qk;
};

/// Default sweep: q = 3 (k = 1) for 1q.I.1, 1q.I.2 and 3q.I.1; q = 3..8 for
/// 3q.I.2; even q = 4, 6, 8 for 3qe.I.3.
std::vector<RowSweep> default_sweeps();

/// Optimizes every (q, k) of each sweep and keeps the densest per row. Rows
/// whose optimization throws are marked failed. The densest row is flagged.
std::vector<ReportRow> build_table(const SearchParams& params,
                                   const std::vector<RowSweep>& sweeps = default_sweeps());

ReportRow make_row(const OptimizationResult& r);

/// "%.17g"
std::string format_full(double v);
/// Four decimals.
std::string format_short(double v);

void write_table_csv(const std::vector<ReportRow>& rows, std::ostream& os);
void write_table_json(const std::vector<ReportRow>& rows, std::ostream& os);
void write_table_text(const std::vector<ReportRow>& rows, std::ostream& os);

void write_curve_csv(const DensityCurve& c, std::ostream& os);
void write_curve_json(const std::string& group, const DensityCurve& c, std::ostream& os);
void write_curve_text(const DensityCurve& c, std::ostream& os);

void write_optimization_json(const OptimizationResult& r, std::ostream& os);
void write_optimization_text(const OptimizationResult& r, std::ostream& os);

/// RFC-4180 reader: quoted fields, doubled quotes, embedded separators.
std::vector<std::vector<std::string>> parse_csv(std::istream& is);

}  // namespace s2xr
