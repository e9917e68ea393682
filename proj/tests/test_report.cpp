#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "s2xr/mesh.hpp"
#include "s2xr/report.hpp"

using namespace s2xr;

namespace {

std::vector<RowSweep> small_sweeps() {
  return {{"8.I.1", {{std::nullopt, std::nullopt}}},
          {"3q.I.2", {{3, std::nullopt}, {4, std::nullopt}}},
          {"1q.I.1", {{3, std::nullopt}}}};
}

int run(const std::string& args) {
  const std::string cmd = std::string(S2XR_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("table rows and the global maximum flag") {
  const auto rows = build_table({}, small_sweeps());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].group == "8.I.1");
  CHECK(rows[1].q == 3);  // q = 3 is the densest 3q.I.2
  CHECK(rows[1].global_max);
  CHECK(!rows[0].global_max);
  for (const auto& r : rows) {
    CHECK(!r.failed);
    // Radius and density reproduce through the engine.
    const auto c = density(make_group(r.group, r.q, r.k), r.tau, S2RPoint(r.kernel, 0.0), 2);
    CHECK(std::abs(c.radius - r.radius) < 1e-10);
    CHECK(std::abs(c.density - r.density) < 1e-10);
  }
}

TEST_CASE("failed rows are reported, not fatal") {
  const auto rows = build_table({}, {{"1q.I.1", {{2, std::nullopt}}}, {"8.I.1", {{std::nullopt, std::nullopt}}}});
  CHECK(rows[0].failed);
  CHECK(rows[0].error.find("q=2") != std::string::npos);
  CHECK(!rows[1].failed);
  CHECK(rows[1].global_max);
  std::ostringstream csv, js, txt;
  write_table_csv(rows, csv);
  write_table_json(rows, js);
  write_table_text(rows, txt);
  CHECK(csv.str().find("FAILED") != std::string::npos);
  CHECK(nlohmann::json::parse(js.str())["rows"][0]["status"] == "FAILED");
  CHECK(txt.str().find("FAILED") != std::string::npos);
}

TEST_CASE("CSV and JSON round trip") {
  const auto rows = build_table({}, small_sweeps());
  std::stringstream csv;
  write_table_csv(rows, csv);
  const auto parsed = parse_csv(csv);
  REQUIRE(parsed.size() == rows.size() + 1);
  const auto& head = parsed[0];
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < head.size(); ++i) col[head[i]] = i;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& f = parsed[i + 1];
    REQUIRE(f.size() == head.size());
    CHECK(f[col["group"]] == rows[i].group);
    CHECK(std::stod(f[col["radius"]]) == rows[i].radius);
    CHECK(std::stod(f[col["density"]]) == rows[i].density);
    CHECK(std::stod(f[col["tau"]]) == rows[i].tau);
    CHECK(std::stod(f[col["kernel_y"]]) == rows[i].kernel.y);
  }
  CHECK(parsed[2][col["translation_parts"]] == "(1/2,1/2)");

  std::stringstream js;
  write_table_json(rows, js);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["global_max"] == "3q.I.2");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(j["rows"][i]["density"].get<double>() == rows[i].density);
    CHECK(j["rows"][i]["radius"].get<double>() == rows[i].radius);
  }
  CHECK(j["rows"][1]["translation_parts"][0] == "1/2");
}

TEST_CASE("text format uses four decimals") {
  const auto rows = build_table({}, {{"8.I.1", {{std::nullopt, std::nullopt}}}});
  std::ostringstream os;
  write_table_text(rows, os);
  CHECK(os.str().find("0.5536") != std::string::npos);
  CHECK(os.str().find("0.6005") != std::string::npos);
  CHECK(os.str().find("global maximum: 8.I.1") != std::string::npos);
  CHECK(format_full(0.1) == "0.10000000000000001");
  CHECK(format_short(kPi) == "3.1416");
}

TEST_CASE("parse_csv handles quoting") {
  std::istringstream is("a,\"b,c\",\"d\"\"e\"\r\n1,,3\n");
  const auto rows = parse_csv(is);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"a", "b,c", "d\"e"});
  CHECK(rows[1] == std::vector<std::string>{"1", "", "3"});
  std::istringstream bad("\"open");
  CHECK_THROWS(parse_csv(bad));
}

TEST_CASE("geodesic sphere mesh") {
  const double rho = 0.5536;
  const int grid = 64;
  const Mesh m = geodesic_sphere(rho, grid);
  CHECK(m.vertices.size() == static_cast<std::size_t>(2 + (grid - 1) * 2 * grid));
  const S2RPoint base({1, 0, 0}, 0);
  // Vertex order: south pole, rings of 2 * grid from v = -pi/2 upwards, north pole.
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    const Vec3& p = m.vertices[i];
    int band = i == 0 ? 0 : (i + 1 == m.vertices.size() ? grid : 1 + static_cast<int>(i - 1) / (2 * grid));
    const double v = -kPi / 2 + kPi * band / grid;
    REQUIRE(std::abs(norm(p) - std::exp(rho * std::sin(v))) < 1e-9);
    REQUIRE(std::abs(distance(base, from_model({p.x, p.y, p.z})) - rho) < 1e-9);
  }
  CHECK(signed_volume(m) > 0.0);
  CHECK_THROWS_AS(geodesic_sphere(kPi, 8), DomainError);
  CHECK_THROWS_AS(geodesic_sphere(0.0, 8), DomainError);
}

TEST_CASE("coarse mesh is watertight and outward") {
  const Mesh m = geodesic_sphere(1.0, 8);
  CHECK(m.vertices.size() == 2 + 7 * 16);
  CHECK(m.faces.size() == 2 * 16 + 6 * 16 * 2);
  std::map<std::pair<int, int>, int> edges;
  for (const auto& f : m.faces)
    for (int e = 0; e < 3; ++e) edges[{f[e], f[(e + 1) % 3]}] += 1;
  for (const auto& [e, n] : edges) {
    REQUIRE(n == 1);
    REQUIRE(edges.count({e.second, e.first}) == 1);
  }
  // Every face normal points away from the ball center.
  const Vec3 center{1, 0, 0};
  for (const auto& f : m.faces) {
    const Vec3 a = m.vertices[f[0]], b = m.vertices[f[1]], c = m.vertices[f[2]];
    const Vec3 n = cross(b - a, c - a);
    REQUIRE(dot(n, (1.0 / 3.0) * (a + b + c) - center) > 0.0);
  }
  std::ostringstream os;
  write_obj(m, os);
  std::istringstream is(os.str());
  std::string tag;
  int v = 0, f = 0;
  for (std::string line; std::getline(is, line);) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++f;
  }
  CHECK(v == static_cast<int>(m.vertices.size()));
  CHECK(f == static_cast<int>(m.faces.size()));
}

TEST_CASE("placed balls sit at their centers") {
  const Mesh m = geodesic_sphere(0.4, 12);
  const S2RPoint c({0.2, -0.5, 0.8}, 0.7);
  const Mesh p = place(m, c);
  for (const auto& v : p.vertices) REQUIRE(std::abs(distance(c, from_model({v.x, v.y, v.z})) - 0.4) < 1e-9);
  const Mesh anti = place(m, S2RPoint({-1, 0, 0}, 0.0));
  for (const auto& v : anti.vertices)
    REQUIRE(std::abs(distance(S2RPoint({-1, 0, 0}, 0.0), from_model({v.x, v.y, v.z})) - 0.4) < 1e-9);
}

TEST_CASE("orbit mesh of the 8.I.1 optimum") {
  const auto r = optimize(make_group("8.I.1"));
  const Mesh m = orbit_mesh(r.best, 8);
  const Mesh one = geodesic_sphere(r.best.radius, 8);
  CHECK(m.vertices.size() == (1 + r.best.kissing) * one.vertices.size());
  CHECK(m.faces.size() == (1 + r.best.kissing) * one.faces.size());
}

TEST_CASE("CLI verbs and exit codes") {
  const std::string dir = S2XR_TEST_TMP;
  CHECK(run("volume 1.0") == 0);
  CHECK(run("volume 3.5") == 3);
  CHECK(run("volume") == 3);
  CHECK(run("frobnicate") == 3);
  CHECK(run("optimize --group 1q.I.1 --q 2") == 3);
  CHECK(run("optimize --group nope") == 3);
  CHECK(run("optimize --group 8.I.1 --format yaml") == 3);
  CHECK(run("optimize --group 8.I.1 --format json --out " + dir + "/opt.json") == 0);
  const auto j = nlohmann::json::parse(slurp(dir + "/opt.json"));
  CHECK(j["kissing"] == 7);
  CHECK(j["touching"].size() == 7);
  CHECK(j["k_max_certified"] == true);
  CHECK(run("curve --group 8.I.2 --tau-min 1.1608 --tau-max 3.5071 -n 2 --out " + dir + "/c.csv") == 0);
  std::istringstream cs(slurp(dir + "/c.csv"));
  CHECK(parse_csv(cs).size() == 3);
  CHECK(run("mesh --rho 0.5536 --grid 8 --out " + dir + "/s.obj") == 0);
  CHECK(run("mesh --rho 0.5536 --grid 4 --out " + dir + "/s.obj") == 3);
  CHECK(run("mesh --group 8.I.1 --grid 8 --out " + dir + "/o.obj") == 0);
  CHECK(run("table --format json --out /nonexistent-dir/t.json") == 1);
}
