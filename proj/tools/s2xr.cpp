// s2xr: geodesic ball packings of the screw-motion space groups of S^2 x R.
//
//   s2xr table    [--format csv|json|text] [--out FILE] [search flags]
//   s2xr optimize --group G [--q Q] [--k K] [--format json|text] [search flags]
//   s2xr curve    --group G --tau-min A --tau-max B [--samples N] [--format csv|json|text]
//   s2xr volume   RHO [--format text|json]
//   s2xr mesh     [--group G] [--rho R] [--grid N] --out FILE.obj
//
// Exit codes: 0 success, 1 runtime/IO failure, 2 some table rows failed,
// 3 bad arguments.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "s2xr/mesh.hpp"
#include "s2xr/report.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitPartial = 2;
constexpr int kExitBadArgs = 3;

struct Options {
  std::string group;
  std::optional<int> q;
  std::optional<int> k;
  int grid = 40;
  double tau_min = 0.05;
  double tau_max = 2 * s2xr::kPi;
  int k_max = 2;
  std::uint64_t seed = 1;
  std::string format;
  std::string out;
  int samples = 100;
  double rho = 0.0;
  bool rho_set = false;
};

class BadArguments : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

s2xr::SearchParams search_params(const Options& o) {
  s2xr::SearchParams p;
  p.grid = o.grid;
  p.tau_min = o.tau_min;
  p.tau_max = o.tau_max;
  p.k_max = o.k_max;
  p.seed = o.seed;
  if (p.grid < 1) throw BadArguments("--grid must be positive");
  if (!(p.tau_min > 0.0) || !(p.tau_max > p.tau_min)) {
    throw BadArguments("need 0 < --tau-min < --tau-max");
  }
  if (p.k_max < 1) throw BadArguments("--kmax must be at least 1");
  return p;
}

// Writes through `emit` to --out, or to stdout.
void output(const Options& o, const std::function<void(std::ostream&)>& emit) {
  if (o.out.empty() || o.out == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + o.out + "' for writing");
  emit(f);
  if (!f) throw std::runtime_error("write to '" + o.out + "' failed");
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw BadArguments("unsupported --format '" + f + "'");
}

int cmd_table(const Options& o) {
  const std::string fmt = o.format.empty() ? "text" : o.format;
  check_format(fmt, {"csv", "json", "text"});
  const auto rows = s2xr::build_table(search_params(o));
  output(o, [&](std::ostream& os) {
    if (fmt == "csv") s2xr::write_table_csv(rows, os);
    else if (fmt == "json") s2xr::write_table_json(rows, os);
    else s2xr::write_table_text(rows, os);
  });
  bool failed = false;
  for (const auto& r : rows) {
    if (r.failed) {
      std::cerr << "s2xr: row " << r.group << " FAILED: " << r.error << '\n';
      failed = true;
    }
  }
  return failed ? kExitPartial : 0;
}

int cmd_optimize(const Options& o) {
  const std::string fmt = o.format.empty() ? "text" : o.format;
  check_format(fmt, {"json", "text"});
  const auto params = search_params(o);
  const auto result = s2xr::optimize(s2xr::make_group(o.group, o.q, o.k), params);
  output(o, [&](std::ostream& os) {
    if (fmt == "json") s2xr::write_optimization_json(result, os);
    else s2xr::write_optimization_text(result, os);
  });
  return 0;
}

int cmd_curve(const Options& o) {
  const std::string fmt = o.format.empty() ? "csv" : o.format;
  check_format(fmt, {"csv", "json", "text"});
  if (o.samples < 2) throw BadArguments("--samples must be at least 2");
  const auto spec = s2xr::make_group(o.group, o.q, o.k);
  const auto params = search_params(o);
  const auto curve = s2xr::density_curve(spec, o.tau_min, o.tau_max, o.samples, params);
  output(o, [&](std::ostream& os) {
    if (fmt == "csv") s2xr::write_curve_csv(curve, os);
    else if (fmt == "json") s2xr::write_curve_json(spec.name, curve, os);
    else s2xr::write_curve_text(curve, os);
  });
  return 0;
}

int cmd_volume(const Options& o) {
  const std::string fmt = o.format.empty() ? "text" : o.format;
  check_format(fmt, {"json", "text"});
  const double quad = s2xr::ball_volume(o.rho);
  const double series = s2xr::ball_volume_series(o.rho);
  output(o, [&](std::ostream& os) {
    if (fmt == "json") {
      nlohmann::json j{{"rho", o.rho}, {"volume", quad}, {"series", series}};
      os << j.dump(2) << '\n';
    } else {
      os << "rho     " << s2xr::format_short(o.rho) << '\n'
         << "volume  " << s2xr::format_short(quad) << '\n'
         << "series  " << s2xr::format_short(series) << '\n';
    }
  });
  return 0;
}

int cmd_mesh(const Options& o) {
  if (o.out.empty()) throw BadArguments("mesh requires --out");
  if (o.grid < 8) throw BadArguments("mesh --grid must be at least 8");
  s2xr::Mesh mesh;
  if (!o.group.empty()) {
    auto params = search_params(o);
    params.grid = 40;
    const auto result = s2xr::optimize(s2xr::make_group(o.group, o.q, o.k), params);
    auto config = result.best;
    if (o.rho_set) config.radius = o.rho;
    mesh = s2xr::orbit_mesh(config, o.grid);
  } else {
    if (!o.rho_set) throw BadArguments("mesh needs --rho or --group");
    mesh = s2xr::geodesic_sphere(o.rho, o.grid);
  }
  output(o, [&](std::ostream& os) { s2xr::write_obj(mesh, os); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesic ball packings for the screw-motion space groups of S^2 x R"};
  app.require_subcommand(1);
  Options o;

  auto add_search = [&](CLI::App* c) {
    c->add_option("--tau-min", o.tau_min, "Lower end of the tau bracket");
    c->add_option("--tau-max", o.tau_max, "Upper end of the tau bracket");
    c->add_option("--kmax", o.k_max, "Initial translation window for element enumeration");
    c->add_option("--seed", o.seed, "Seed for the simplex restarts");
  };
  auto add_group = [&](CLI::App* c, bool required) {
    auto* g = c->add_option("--group", o.group, "Group name, e.g. 8.I.2");
    if (required) g->required();
    c->add_option("--q", o.q, "Parameter q of the 1q / 3q groups");
    c->add_option("--k", o.k, "Parameter k of 1q.I.2");
  };

  auto* table = app.add_subcommand("table", "Optimize every catalog group and print the table");
  add_search(table);
  table->add_option("--grid", o.grid, "Barycentric grid resolution");
  table->add_option("--format", o.format, "csv, json or text");
  table->add_option("--out", o.out, "Output file (default stdout)");

  auto* optimize = app.add_subcommand("optimize", "Optimize one group");
  add_group(optimize, true);
  add_search(optimize);
  optimize->add_option("--grid", o.grid, "Barycentric grid resolution");
  optimize->add_option("--format", o.format, "json or text");
  optimize->add_option("--out", o.out, "Output file (default stdout)");

  auto* curve = app.add_subcommand("curve", "Density as a function of tau");
  add_group(curve, true);
  curve->add_option("--tau-min", o.tau_min, "First tau")->required();
  curve->add_option("--tau-max", o.tau_max, "Last tau")->required();
  curve->add_option("--samples,-n", o.samples, "Number of samples");
  curve->add_option("--grid", o.grid, "Kernel grid resolution");
  curve->add_option("--kmax", o.k_max, "Initial translation window");
  curve->add_option("--format", o.format, "csv, json or text");
  curve->add_option("--out", o.out, "Output file (default stdout)");

  auto* volume = app.add_subcommand("volume", "Volume of the geodesic ball of radius rho");
  volume->add_option("rho", o.rho, "Radius in (0, pi)")->required();
  volume->add_option("--format", o.format, "text or json");
  volume->add_option("--out", o.out, "Output file (default stdout)");

  auto* mesh = app.add_subcommand("mesh", "Export geodesic sphere meshes as OBJ");
  add_group(mesh, false);
  mesh->add_option("--rho", o.rho, "Sphere radius (default: the group's optimal radius)");
  o.grid = 40;
  auto* mesh_grid = mesh->add_option("--grid", o.grid, "Altitude bands (longitude uses twice as many)");
  mesh->add_option("--out", o.out, "Output OBJ file")->required();
  add_search(mesh);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadArgs;
  }
  o.rho_set = mesh->count("--rho") > 0;
  if (*mesh && mesh_grid->count() == 0) o.grid = 32;

  try {
    if (*table) return cmd_table(o);
    if (*optimize) return cmd_optimize(o);
    if (*curve) return cmd_curve(o);
    if (*volume) return cmd_volume(o);
    if (*mesh) return cmd_mesh(o);
  } catch (const BadArguments& e) {
    std::cerr << "s2xr: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const s2xr::UnknownGroup& e) {
    std::cerr << "s2xr: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const s2xr::NoPackingExists& e) {
    std::cerr << "s2xr: NoPackingExists: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const s2xr::DomainError& e) {
    std::cerr << "s2xr: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const std::invalid_argument& e) {
    std::cerr << "s2xr: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const std::exception& e) {
    std::cerr << "s2xr: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitBadArgs;
}
