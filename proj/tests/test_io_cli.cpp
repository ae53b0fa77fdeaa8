#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmg/analytic.hpp"
#include "lmg/io.hpp"

using namespace lmg;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '\n') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string without_timestamp(const std::string& csv) {
  std::string out;
  for (const std::string& line : split_lines(csv)) {
    if (line.rfind("# generated: ", 0) == 0) continue;
    out += line;
    out += '\n';
  }
  return out;
}

int row_with(const ResultTable& t, std::size_t column, const std::string& value) {
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.rows[r][column] == value) return static_cast<int>(r);
  }
  return -1;
}

fs::path fresh_dir() {
  static int counter = 0;
  fs::path d = fs::temp_directory_path() /
               ("lmgfs-io-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LMGFS_BINARY) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("config parsing: defaults, strictness, validation") {
  const RunConfig d = parse_config("{}");
  CHECK(d.sizes == std::vector<int>{256, 1024, 4096, 16384, 65536});
  CHECK(d.gammas == std::vector<double>{0.5});
  CHECK(d.jobs == 1);
  CHECK(d.dense_cap == 4096);
  CHECK(d.h_grid.points == 81);
  CHECK(d.pauli_max_n == 10);
  CHECK_FALSE(d.svg);
  CHECK_FALSE(d.inject_offdiag_sign_flip);

  const RunConfig g = parse_config(R"({"h_grid": {"values": [0.1, 0.7]}, "jobs": 3})");
  CHECK(g.h_grid.values == std::vector<double>{0.1, 0.7});
  CHECK(g.jobs == 3);

  CHECK_THROWS_AS(parse_config("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[1, 2]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"typo_key": 1})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"h_grid": {"form": "log"}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"jobs": "many"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"jobs": 0})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"sizes": []})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"sizes": [0]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"gammas": [1.0]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"dense_cap": 4})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"pauli_max_n": 16})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"delta_h": -1e-4})"), std::invalid_argument);

  CHECK_THROWS_AS(load_config_file("/nonexistent/lmgfs.json"), std::invalid_argument);
}

TEST_CASE("canonical json round-trips and drives the hash") {
  RunConfig c;
  c.command = "sweep";
  c.gammas = {0.25, -0.1};
  c.h_grid.values = {0.2, 0.4};
  const std::string canon = canonical_config_json(c);
  const RunConfig back = parse_config(canon);
  CHECK(canonical_config_json(back) == canon);

  const std::string hash = config_hash(c);
  CHECK(hash.size() == 16);
  CHECK(hash.find_first_not_of("0123456789abcdef") == std::string::npos);

  RunConfig c2 = c;
  c2.jobs = 2;
  CHECK(config_hash(c2) != hash);
  RunConfig c3 = c;
  c3.command = "peak";
  CHECK(config_hash(c3) != hash);
}

TEST_CASE("fnv1a64 frozen reference vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("hello") == 0xa430d84680aabd0bull);
}

TEST_CASE("h grid materialization") {
  HGridSpec u;
  u.min = 0.0;
  u.max = 1.0;
  u.points = 5;
  const std::vector<double> g = make_h_grid(u);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[2] == doctest::Approx(0.5));

  HGridSpec vals;
  vals.values = {0.3, 0.2};
  CHECK_THROWS_AS(make_h_grid(vals), std::invalid_argument);
  vals.values = {-0.1, 0.2};
  CHECK_THROWS_AS(make_h_grid(vals), std::invalid_argument);
  HGridSpec bad;
  bad.points = 1;
  CHECK_THROWS_AS(make_h_grid(bad), std::invalid_argument);
  bad.points = 3;
  bad.min = 1.0;
  bad.max = 0.5;
  CHECK_THROWS_AS(make_h_grid(bad), std::invalid_argument);
}

TEST_CASE("csv rendering: header, quoting, determinism") {
  ResultTable t;
  t.columns = {"name", "value"};
  t.rows.push_back({"plain", "1"});
  t.rows.push_back({"with,comma", "quote\"inside"});
  t.metadata.push_back("note: frozen");
  RunConfig c;
  c.command = "verify";

  const std::string csv = render_csv(t, c);
  const std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 9);
  CHECK(lines[0] == std::string("# ") + kToolName + " " + kToolVersion);
  CHECK(lines[1] == "# command: verify");
  CHECK(lines[2] == "# config-hash: " + config_hash(c));
  CHECK(lines[3] == "# config: " + canonical_config_json(c));
  CHECK(lines[4].rfind("# generated: ", 0) == 0);
  CHECK(lines[5] == "# note: frozen");
  CHECK(lines[6] == "name,value");
  CHECK(lines[7] == "plain,1");
  CHECK(lines[8] == "\"with,comma\",\"quote\"\"inside\"");

  CHECK(without_timestamp(render_csv(t, c)) == without_timestamp(csv));
}

TEST_CASE("sweep command: schema, values, determinism") {
  RunConfig c;
  c.command = "sweep";
  c.sizes = {16, 24};
  c.gammas = {0.2};
  c.h_grid.values = {0.5, 1.5};
  const ResultTable t = cmd_sweep(c);

  REQUIRE(t.columns.size() == 9);
  CHECK(t.columns[0] == "N");
  CHECK(t.columns[3] == "chi");
  CHECK(t.columns[4] == "chi_per_spin");
  CHECK(t.columns.back() == "flags");
  REQUIRE(t.rows.size() == 4);
  for (const auto& row : t.rows) {
    REQUIRE(row.size() == t.columns.size());
    CHECK(row[5] == "perturbative");
    const double chi = std::stod(row[3]);
    CHECK(chi > 0.0);
    const int n = std::stoi(row[0]);
    CHECK(std::stod(row[4]) == doctest::Approx(chi / n).epsilon(1e-9));
    CHECK(row.back().empty());
  }

  const ResultTable again = cmd_sweep(c);
  CHECK(again.rows == t.rows);

  // Inset mode appends the closed-form comparison columns.
  RunConfig ci = c;
  ci.inset = true;
  const ResultTable ti = cmd_sweep(ci);
  REQUIRE(ti.columns.size() == 11);
  CHECK(ti.columns[8] == "chi_minus_leading");
  const int below = row_with(ti, 2, format_double(0.5));
  REQUIRE(below >= 0);
  CHECK(!ti.rows[below][8].empty());
  const int above = row_with(ti, 2, format_double(1.5));
  REQUIRE(above >= 0);
  CHECK(ti.rows[above][8].empty());
}

TEST_CASE("verify command: healthy suite passes, injected band flip is caught") {
  RunConfig c;
  c.command = "verify";
  c.pauli_max_n = 6;
  const ResultTable t = cmd_verify(c);
  REQUIRE(!t.rows.empty());
  REQUIRE(t.columns.size() == 5);
  CHECK(t.columns[0] == "check");
  CHECK(t.columns[4] == "status");
  CHECK(verify_table_passed(t));
  CHECK(row_with(t, 0, "pauli-ground-energy") >= 0);
  CHECK(row_with(t, 0, "pauli-ground-vector") >= 0);
  CHECK(row_with(t, 0, "estimator-cross-check") >= 0);

  RunConfig bad = c;
  bad.inject_offdiag_sign_flip = true;
  const ResultTable tb = cmd_verify(bad);
  CHECK_FALSE(verify_table_passed(tb));
  // The flip is a similarity transform, so every energy row still passes; the
  // amplitude rows against the product-basis oracle are what catch it.
  for (const auto& row : tb.rows) {
    if (row[0] == "pauli-ground-energy") CHECK(row[4] == "pass");
  }
  bool vector_row_failed = false;
  for (const auto& row : tb.rows) {
    if (row[0] == "pauli-ground-vector" && row[4] == "FAIL") vector_row_failed = true;
  }
  CHECK(vector_row_failed);
}

TEST_CASE("scale command with a synthetic power-law oracle") {
  RunConfig c;
  c.command = "scale";
  c.synthetic_mu = 1.5;
  const ResultTable t = cmd_scale(c);
  REQUIRE(t.rows.size() == 1);
  REQUIRE(t.columns.size() == 13);
  CHECK(t.columns[3] == "mu");
  CHECK(t.columns[7] == "mu_large");
  CHECK(t.columns[10] == "delta");
  const auto& row = t.rows[0];
  CHECK(std::stod(row[3]) == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(std::stod(row[7]) == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(std::stod(row[10]) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  REQUIRE(!t.metadata.empty());
  CHECK(t.metadata[0].rfind("synthetic-oracle:", 0) == 0);
}

TEST_CASE("analytic command: plug-in values and the singular point") {
  RunConfig c;
  c.command = "analytic";
  c.sizes = {64};
  c.gammas = {0.5};
  c.h_grid.values = {0.5, 1.0, 2.0};
  const ResultTable t = cmd_analytic(c);
  REQUIRE(t.rows.size() == 3);
  REQUIRE(t.columns.size() == 14);
  CHECK(t.columns[3] == "chi_ed");
  CHECK(t.columns[4] == "chi_hp_leading");
  CHECK(t.columns.back() == "flags");

  const int singular = row_with(t, 2, format_double(1.0));
  REQUIRE(singular >= 0);
  CHECK(t.rows[singular][13].find("hp-singular") != std::string::npos);
  CHECK(t.rows[singular][4].empty());
  CHECK(t.rows[singular][5].empty());

  const int polarized = row_with(t, 2, format_double(2.0));
  REQUIRE(polarized >= 0);
  CHECK(t.rows[polarized][4] == format_double(0.25 / 72.0));
  CHECK(std::stod(t.rows[polarized][10]) < 0.2);  // chi_rel_err at N=64

  const int broken = row_with(t, 2, format_double(0.5));
  REQUIRE(broken >= 0);
  CHECK(t.rows[broken][4] == format_double(chi_broken(0.5, 0.5, 64).leading));
  CHECK(!t.rows[broken][5].empty());
}

TEST_CASE("svg companions") {
  RunConfig c;
  c.command = "sweep";
  c.sizes = {16};
  c.gammas = {0.2};
  c.h_grid.values = {0.4, 0.8, 1.2, 1.6};
  const ResultTable t = cmd_sweep(c);
  const std::string svg = render_svg_for("sweep", t);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  RunConfig v;
  v.command = "verify";
  v.pauli_max_n = 2;
  ResultTable vt;
  vt.columns = {"check", "detail", "measured", "threshold", "status"};
  CHECK(render_svg_for("verify", vt).empty());
}

TEST_CASE("command line: exit codes and artifacts") {
  const fs::path dir = fresh_dir();

  SUBCASE("sweep writes a self-describing csv and svg") {
    const fs::path cfg = dir / "sweep.json";
    write_text_file(cfg.string(),
                    R"({"command": "sweep", "sizes": [16], "gammas": [0.2],)"
                    R"( "h_grid": {"values": [0.5, 1.5]}})");
    const fs::path out = dir / "sweep.csv";
    const int rc = run_cli("sweep --config " + cfg.string() + " --out " + out.string() + " --svg");
    CHECK(rc == 0);
    const std::string csv = read_file(out);
    CHECK(csv.rfind(std::string("# ") + kToolName, 0) == 0);
    CHECK(csv.find("\nN,gamma,h,chi,") != std::string::npos);
    CHECK(csv.find("# config-hash: ") != std::string::npos);
    CHECK(fs::exists(dir / "sweep.svg"));
    CHECK(read_file(dir / "sweep.svg").rfind("<svg", 0) == 0);
  }

  SUBCASE("unknown config key exits 2") {
    const fs::path cfg = dir / "typo.json";
    write_text_file(cfg.string(), R"({"sizs": [16]})");
    CHECK(run_cli("sweep --config " + cfg.string()) == 2);
  }

  SUBCASE("config written for another command exits 2") {
    const fs::path cfg = dir / "mismatch.json";
    write_text_file(cfg.string(), R"({"command": "sweep", "sizes": [16]})");
    CHECK(run_cli("peak --config " + cfg.string() + " --out " + (dir / "p.csv").string()) == 2);
  }

  SUBCASE("injected fault makes verify exit 3") {
    const fs::path cfg = dir / "inject.json";
    write_text_file(cfg.string(),
                    R"({"command": "verify", "pauli_max_n": 4,)"
                    R"( "inject_offdiag_sign_flip": true})");
    const fs::path out = dir / "verify.csv";
    const int rc = run_cli("verify --config " + cfg.string() + " --out " + out.string());
    CHECK(rc == 3);
    CHECK(read_file(out).find("FAIL") != std::string::npos);
  }

  fs::remove_all(dir);
}

}  // TEST_SUITE
