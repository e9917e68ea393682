#include "s2xr/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace s2xr {

std::vector<RowSweep> default_sweeps() {
  std::vector<RowSweep> out;
  for (const auto& name : catalog_names()) {
    RowSweep s{name, {}};
    if (name == "3q.I.2") {
      for (int q = 3; q <= 8; ++q) s.qk.push_back({q, std::nullopt});
    } else if (name == "3qe.I.3") {
      for (int q = 4; q <= 8; q += 2) s.qk.push_back({q, std::nullopt});
    } else if (has_q_parameter(name)) {
      s.qk.push_back({3, name == "1q.I.2" ? std::optional<int>(1) : std::nullopt});
    } else {
      s.qk.push_back({std::nullopt, std::nullopt});
    }
    out.push_back(std::move(s));
  }
  return out;
}

ReportRow make_row(const OptimizationResult& r) {
  ReportRow row;
  row.group = r.spec.name;
  row.parts = r.spec.translation_parts();
  row.q = r.spec.q;
  row.k = r.spec.k;
  row.radius = r.best.radius;
  row.density = r.best.density;
  row.kissing = r.best.kissing;
  row.kernel = r.best.kernel.direction();
  row.tau = r.best.tau;
  row.certified = r.best.k_max_certified;
  return row;
}

std::vector<ReportRow> build_table(const SearchParams& params, const std::vector<RowSweep>& sweeps) {
  struct Job {
    std::size_t row;
    std::string group;
    std::optional<int> q, k;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < sweeps.size(); ++i)
    for (const auto& [q, k] : sweeps[i].qk) jobs.push_back({i, sweeps[i].group, q, k});

  std::vector<std::optional<ReportRow>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  SearchParams inner = params;
  inner.threads = 1;
  parallel_for(jobs.size(), params.threads, [&](std::size_t j) {
    try {
      results[j] = make_row(optimize(make_group(jobs[j].group, jobs[j].q, jobs[j].k), inner));
    } catch (const std::exception& e) {
      errors[j] = e.what();
    }
  });

  std::vector<ReportRow> rows(sweeps.size());
  for (std::size_t i = 0; i < sweeps.size(); ++i) {
    rows[i].group = sweeps[i].group;
    rows[i].failed = true;
  }
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    ReportRow& row = rows[jobs[j].row];
    if (!results[j]) {
      // One failed q invalidates the row's claim to be the optimum.
      row.failed = true;
      row.error = jobs[j].group + (jobs[j].q ? " q=" + std::to_string(*jobs[j].q) : "") + ": " +
                  errors[j];
      row.density = -1.0;
      continue;
    }
    if (!row.error.empty()) continue;
    if (row.failed || results[j]->density > row.density) row = *results[j];
  }
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].failed) continue;
    if (!best || rows[i].density > rows[*best].density) best = i;
  }
  if (best) rows[*best].global_max = true;
  return rows;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

namespace {

std::string parts_string(const std::vector<Fraction>& parts) {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += parts[i].str();
  }
  return s + ")";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

nlohmann::json opt_json(const std::optional<int>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json element_json(const GroupElement& e, const S2RPoint& kernel) {
  return {{"word", e.word},
          {"frac", e.frac.str()},
          {"lattice", e.lattice},
          {"shift_units", e.shift_units()},
          {"distance", distance(kernel, apply(e.iso, kernel))}};
}

}  // namespace

void write_table_csv(const std::vector<ReportRow>& rows, std::ostream& os) {
  os << "group,translation_parts,q,k,radius,density,kissing,kernel_x,kernel_y,kernel_z,tau,"
        "k_max_certified,global_max,status\r\n";
  for (const auto& r : rows) {
    os << csv_field(r.group) << ',' << csv_field(parts_string(r.parts)) << ',' << opt_int(r.q)
       << ',' << opt_int(r.k) << ',';
    if (r.failed) {
      os << ",,,,,,,,false," << csv_field("FAILED: " + r.error) << "\r\n";
      continue;
    }
    os << format_full(r.radius) << ',' << format_full(r.density) << ',' << r.kissing << ','
       << format_full(r.kernel.x) << ',' << format_full(r.kernel.y) << ','
       << format_full(r.kernel.z) << ',' << format_full(r.tau) << ','
       << (r.certified ? "true" : "false") << ',' << (r.global_max ? "true" : "false")
       << ",ok\r\n";
  }
}

void write_table_json(const std::vector<ReportRow>& rows, std::ostream& os) {
  nlohmann::json out;
  out["rows"] = nlohmann::json::array();
  std::string max_group;
  for (const auto& r : rows) {
    nlohmann::json j;
    j["group"] = r.group;
    std::vector<std::string> parts;
    for (const auto& p : r.parts) parts.push_back(p.str());
    j["translation_parts"] = parts;
    j["q"] = opt_json(r.q);
    j["k"] = opt_json(r.k);
    j["status"] = r.failed ? "FAILED" : "ok";
    if (r.failed) {
      j["error"] = r.error;
    } else {
      j["radius"] = r.radius;
      j["density"] = r.density;
      j["kissing"] = r.kissing;
      j["kernel"] = {r.kernel.x, r.kernel.y, r.kernel.z};
      j["tau"] = r.tau;
      j["k_max_certified"] = r.certified;
      j["global_max"] = r.global_max;
    }
    if (r.global_max) max_group = r.group;
    out["rows"].push_back(j);
  }
  out["global_max"] = max_group.empty() ? nlohmann::json(nullptr) : nlohmann::json(max_group);
  // nlohmann prints doubles with round-trip precision (max_digits10 = 17).
  os << out.dump(2) << '\n';
}

void write_table_text(const std::vector<ReportRow>& rows, std::ostream& os) {
  char line[256];
  std::snprintf(line, sizeof line, "%-9s %-10s %-3s %-3s %-8s %-8s %-5s %-8s %s\n", "group",
                "parts", "q", "k", "radius", "density", "kiss", "tau", "kernel");
  os << line;
  const ReportRow* best = nullptr;
  for (const auto& r : rows) {
    if (r.failed) {
      std::snprintf(line, sizeof line, "%-9s FAILED: %s\n", r.group.c_str(), r.error.c_str());
      os << line;
      continue;
    }
    if (r.global_max) best = &r;
    std::snprintf(line, sizeof line, "%-9s %-10s %-3s %-3s %-8s %-8s %-5d %-8s (%s, %s, %s)\n",
                  r.group.c_str(), parts_string(r.parts).c_str(), opt_int(r.q).c_str(),
                  opt_int(r.k).c_str(), format_short(r.radius).c_str(),
                  format_short(r.density).c_str(), r.kissing, format_short(r.tau).c_str(),
                  format_short(r.kernel.x).c_str(), format_short(r.kernel.y).c_str(),
                  format_short(r.kernel.z).c_str());
    os << line;
  }
  if (best) {
    os << "global maximum: " << best->group << (best->q ? " q=" + std::to_string(*best->q) : "")
       << " density " << format_short(best->density) << '\n';
  }
}

void write_curve_csv(const DensityCurve& c, std::ostream& os) {
  os << "tau,density,radius,kissing,kernel_x,kernel_y,kernel_z\r\n";
  for (const auto& s : c.samples) {
    const Vec3& k = s.kernel.direction();
    os << format_full(s.tau) << ',' << format_full(s.density) << ',' << format_full(s.radius)
       << ',' << s.kissing << ',' << format_full(k.x) << ',' << format_full(k.y) << ','
       << format_full(k.z) << "\r\n";
  }
}

void write_curve_json(const std::string& group, const DensityCurve& c, std::ostream& os) {
  nlohmann::json out;
  out["group"] = group;
  out["samples"] = nlohmann::json::array();
  for (const auto& s : c.samples) {
    const Vec3& k = s.kernel.direction();
    out["samples"].push_back({{"tau", s.tau},
                              {"density", s.density},
                              {"radius", s.radius},
                              {"kissing", s.kissing},
                              {"kernel", {k.x, k.y, k.z}}});
  }
  os << out.dump(2) << '\n';
}

void write_curve_text(const DensityCurve& c, std::ostream& os) {
  os << "tau       density   radius    kissing\n";
  char line[128];
  for (const auto& s : c.samples) {
    std::snprintf(line, sizeof line, "%-9s %-9s %-9s %d\n", format_short(s.tau).c_str(),
                  format_short(s.density).c_str(), format_short(s.radius).c_str(), s.kissing);
    os << line;
  }
}

void write_optimization_json(const OptimizationResult& r, std::ostream& os) {
  const auto& b = r.best;
  nlohmann::json out;
  out["group"] = r.spec.name;
  out["signature"] = r.spec.signature;
  out["q"] = opt_json(r.spec.q);
  out["k"] = opt_json(r.spec.k);
  std::vector<std::string> parts;
  for (const auto& p : r.spec.translation_parts()) parts.push_back(p.str());
  out["translation_parts"] = parts;
  out["method"] = method_name(r.method);
  out["radius"] = b.radius;
  out["density"] = b.density;
  out["tau"] = b.tau;
  out["kissing"] = b.kissing;
  const Vec3& k = b.kernel.direction();
  out["kernel"] = {k.x, k.y, k.z};
  out["k_max_used"] = b.k_max_used;
  out["k_max_certified"] = b.k_max_certified;
  out["evaluations"] = r.evaluations;
  out["wall_time"] = r.wall_time;
  out["restart_densities"] = r.restart_densities;
  out["touching"] = nlohmann::json::array();
  for (const auto& e : b.argmin_elements) out["touching"].push_back(element_json(e, b.kernel));
  os << out.dump(2) << '\n';
}

void write_optimization_text(const OptimizationResult& r, std::ostream& os) {
  const auto& b = r.best;
  const Vec3& k = b.kernel.direction();
  os << "group    " << r.spec.name << (r.spec.q ? " q=" + std::to_string(*r.spec.q) : "")
     << (r.spec.k ? " k=" + std::to_string(*r.spec.k) : "") << '\n';
  os << "method   " << method_name(r.method) << '\n';
  os << "radius   " << format_short(b.radius) << '\n';
  os << "density  " << format_short(b.density) << '\n';
  os << "tau      " << format_short(b.tau) << '\n';
  os << "kernel   (" << format_short(k.x) << ", " << format_short(k.y) << ", "
     << format_short(k.z) << ")\n";
  os << "kissing  " << b.kissing << '\n';
  os << "k_max    " << b.k_max_used << (b.k_max_certified ? " (certified)" : " (NOT certified)")
     << '\n';
  os << "touching elements:\n";
  for (const auto& e : b.argmin_elements) {
    std::string w;
    for (int i : e.word) w += "g" + std::to_string(i + 1);
    if (w.empty()) w = "id";
    os << "  " << w << " shift " << format_short(e.shift_units()) << " tau\n";
  }
}

std::vector<std::vector<std::string>> parse_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  char c;
  while (is.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (is.peek() == '"') {
          is.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && is.peek() == '\n') is.get(c);
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw std::runtime_error("parse_csv: unterminated quoted field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace s2xr
