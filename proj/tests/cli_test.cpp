// Copyright 2026 The lindblad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "lindblad/cli/app.hpp"

namespace lindblad::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lindblad_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_conf(const fs::path& dir, const std::string& body) {
  const fs::path p = dir / "test.conf";
  std::ofstream(p) << body;
  return p;
}

struct Cli {
  int code = -1;
  std::string out, err;
};

Cli cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lindblad");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  Cli r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

TEST(ConfigParse, SectionsCommentsAndCase) {
  std::istringstream in("# header\nscenario = carnot\n[params]\nOmega_A = 1.7   # trailing\n\n[sweep]\nperiods = 1,2\n");
  const auto m = parse_config_text(in, "mem");
  EXPECT_EQ(m.at("scenario"), "carnot");
  EXPECT_EQ(m.at("params.omega_a"), "1.7");
  EXPECT_EQ(m.at("sweep.periods"), "1,2");
  EXPECT_EQ(m.size(), 3U);
}

TEST(ConfigParse, RejectsMalformedLines) {
  std::istringstream dup("a = 1\na = 2\n");
  EXPECT_THROW(parse_config_text(dup, "mem"), ConfigError);
  std::istringstream noeq("just words\n");
  try {
    parse_config_text(noeq, "file.conf");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("file.conf:1"), std::string::npos);
  }
  std::istringstream bad_section("[params\nx = 1\n");
  EXPECT_THROW(parse_config_text(bad_section, "mem"), ConfigError);
}

TEST(ConfigEnv, NameMapping) {
  EXPECT_EQ(env_name_to_key("LINDBLAD_PARAMS__OMEGA_A"), "params.omega_a");
  EXPECT_EQ(env_name_to_key("LINDBLAD_SCENARIO"), "scenario");
  EXPECT_EQ(key_to_env_name("custom.gamma0.re"), "LINDBLAD_CUSTOM__GAMMA0__RE");
  EXPECT_EQ(env_name_to_key(key_to_env_name("run.samples_per_stroke")), "run.samples_per_stroke");
}

TEST(ConfigResolve, PrecedenceAndValidation) {
  const std::vector<KeySpec> schema = {{"scenario", "", "", true}, {"a.x", "1", ""}, {"a.y", "2", ""}};
  const Config c = resolve_config(schema, {{"scenario", "s"}, {"a.x", "5"}, {"a.y", "6"}}, {{"a.y", "7"}}, {{"a.x", "9"}});
  EXPECT_EQ(c.real("a.x"), 9.0);
  EXPECT_EQ(c.real("a.y"), 7.0);
  EXPECT_EQ(c.sources().at("a.y"), "environment");
  EXPECT_THROW(resolve_config(schema, {{"a.x", "1"}}, {}, {}), ConfigError);  // scenario missing
  try {
    resolve_config(schema, {{"scenario", "s"}}, {{"a.z", "1"}}, {});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("LINDBLAD_A__Z"), std::string::npos);
  }
}

TEST(ConfigValues, TypedAccess) {
  const Config c({{"r", "1e-3"}, {"b", "off"}, {"i", "4"}, {"l", " 1, 2.5 ,3"}, {"x", "1.5abc"}, {"f", "2.5"}}, {});
  EXPECT_EQ(c.real("r"), 1e-3);
  EXPECT_FALSE(c.boolean("b"));
  EXPECT_EQ(c.integer("i"), 4);
  EXPECT_EQ(c.reals("l"), (std::vector<double>{1.0, 2.5, 3.0}));
  EXPECT_THROW(c.real("x"), ConfigError);
  EXPECT_THROW(c.integer("f"), ConfigError);
  EXPECT_THROW(c.str("missing"), ConfigError);
}

TEST(Output, FormattingAndDigest) {
  EXPECT_EQ(format_value(0.1), "1.00000000000000e-01");
  EXPECT_EQ(format_value(-2.5), "-2.50000000000000e+00");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CsvTable t({"t", "x"});
  t.row({0.0, 1.0});
  EXPECT_EQ(t.str(), "t,x\n0.00000000000000e+00,1.00000000000000e+00\n");
  EXPECT_THROW(t.row({1.0}), OutputError);
}

TEST(Output, SvgIsDeterministic) {
  PlotSpec p{"t", "x", "y", true, true, {}};
  p.series.push_back({{1, 10, 100}, {1, 0.1, 0.01}, "a & b"});
  p.series.push_back({{1, 10}, {-1, 0.5}, "skips nonpositive", true});
  const std::string s = render_svg(p);
  EXPECT_EQ(s.rfind("<svg", 0), 0U);
  EXPECT_NE(s.find("a &amp; b"), std::string::npos);
  EXPECT_EQ(s, render_svg(p));
}

TEST(Cli, ListScenarios) {
  const Cli r = cli({"list-scenarios", "--keys"});
  EXPECT_EQ(r.code, 0);
  for (const char* s : {"counter_oscillating", "incoherent", "carnot", "otto", "custom"})
    EXPECT_NE(r.out.find(s), std::string::npos) << s;
  EXPECT_NE(r.out.find("LINDBLAD_PARAMS__OMEGA_A"), std::string::npos);
}

TEST(Cli, UsageErrorsAreConfigErrors) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"bogus"}).code, 1);
  EXPECT_EQ(cli({"run", "--config", "/nonexistent/x.conf"}).code, 1);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, UnknownKeyRejected) {
  const fs::path d = scratch("unknown");
  const fs::path conf = write_conf(d, "scenario = carnot\n[params]\nomega_z = 1\n");
  const Cli r = cli({"run", "--config", conf.string(), "--out", (d / "o").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("params.omega_z"), std::string::npos);
}

TEST(Cli, BadEnumAndRangeAreConfigErrors) {
  const fs::path d = scratch("badenum");
  const fs::path conf = write_conf(d, "scenario = otto\n[run]\nmethod = magic\n");
  EXPECT_EQ(cli({"run", "--config", conf.string(), "--out", (d / "o").string()}).code, 1);
  const fs::path conf2 = write_conf(d, "scenario = counter_oscillating\n[params]\namplitude = 9\n");
  EXPECT_EQ(cli({"run", "--config", conf2.string(), "--out", (d / "o").string()}).code, 1);
}

TEST(Cli, CustomNonHermitianReportsTimestamp) {
  const fs::path d = scratch("custom");
  // gamma1 has an unpaired imaginary entry: hermitian at t = 0 only (sin 0 = 0).
  const fs::path conf = write_conf(d,
                                   "scenario = custom\n[custom]\ngamma1.im = 0,0.1,0, 0,0,0, 0,0,0\n"
                                   "[run]\nt_end = 1\nsamples = 11\n");
  const Cli r = cli({"run", "--config", conf.string(), "--out", (d / "o").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("not hermitian at t = 0.012500"), std::string::npos) << r.err;
}

TEST(Cli, CustomRunWritesCoherence) {
  const fs::path d = scratch("custom_ok");
  const fs::path conf = write_conf(d, "scenario = custom\n[run]\nt_end = 2\nsamples = 21\n");
  const Cli r = cli({"run", "--config", conf.string(), "--out", (d / "o").string(), "--plots", "false"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(d / "o" / "coherence.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,v1,v2,v3,purity,sigma3");
  EXPECT_FALSE(fs::exists(d / "o" / "sigma3.svg"));
  const auto m = nlohmann::json::parse(slurp(d / "o" / "manifest.json"));
  EXPECT_TRUE(m["results"]["one_period_map"]["passes"].get<bool>());
}

TEST(Cli, CounterOscillatingDeterministicWithManifest) {
  const fs::path d = scratch("counter");
  const fs::path conf = write_conf(d, "scenario = counter_oscillating\n[run]\nperiods = 2\nsamples_per_period = 16\n");
  const std::string out = (d / "o").string();
  ASSERT_EQ(cli({"run", "--config", conf.string(), "--out", out}).code, 0);
  const std::string csv1 = slurp(d / "o" / "sigma3.csv"), man1 = slurp(d / "o" / "manifest.json");
  ASSERT_EQ(cli({"run", "--config", conf.string(), "--out", out}).code, 0);
  EXPECT_EQ(csv1, slurp(d / "o" / "sigma3.csv"));
  EXPECT_EQ(man1, slurp(d / "o" / "manifest.json"));

  EXPECT_EQ(csv1.substr(0, csv1.find('\n')), "t,sigma3_exact,sigma3_strobo_predicted,sigma3_rotating_frame,stroboscopic");
  const auto m = nlohmann::json::parse(man1);
  EXPECT_EQ(m["schema_version"], kManifestSchemaVersion);
  EXPECT_EQ(m["csv_schema_version"], kCsvSchemaVersion);
  EXPECT_EQ(m["files"]["sigma3.csv"]["sha256"], sha256_hex(csv1));
  EXPECT_EQ(m["files"]["sigma3.csv"]["rows"], 33);
  EXPECT_TRUE(m["files"].contains("sigma3.svg"));
  EXPECT_NEAR(m["results"]["delta_gamma_t0"].get<double>(), 0.096154, 1e-6);
  EXPECT_LT(m["results"]["max_stroboscopic_deviation"].get<double>(), 1e-6);
  EXPECT_LT(m["results"]["max_rotating_frame_deviation"].get<double>(), 1e-6);
  EXPECT_FALSE(fs::exists(d / "o" / "sigma3.csv.tmp"));
}

TEST(Cli, EnvironmentOverride) {
  const fs::path d = scratch("env");
  const fs::path conf = write_conf(d, "scenario = incoherent\n[params]\nswitch_times = 2\n[run]\nsamples = 11\n");
  ::setenv("LINDBLAD_PARAMS__SWITCH_TIMES", "0.5", 1);
  const Cli r = cli({"run", "--config", conf.string(), "--out", (d / "o").string(), "--plots", "no"});
  ::unsetenv("LINDBLAD_PARAMS__SWITCH_TIMES");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(d / "o" / "populations_ts_0.5.csv"));
  EXPECT_FALSE(fs::exists(d / "o" / "populations_ts_2.csv"));
  const auto m = nlohmann::json::parse(slurp(d / "o" / "manifest.json"));
  EXPECT_LT(m["results"]["switch_times"][0]["max_population_error"].get<double>(), 1e-6);

  ::setenv("LINDBLAD_PARAMS__NOPE", "1", 1);
  const Cli bad = cli({"run", "--config", conf.string(), "--out", (d / "o").string()});
  ::unsetenv("LINDBLAD_PARAMS__NOPE");
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, EngineSweepWritesFit) {
  const fs::path d = scratch("engine");
  const fs::path conf = write_conf(d, "scenario = carnot\n[sweep]\nperiods = 25,50,100,200\n[run]\nsamples_per_stroke = 40\n");
  const Cli r = cli({"run", "--config", conf.string(), "--out", (d / "o").string(), "--set", "run.parallel=2", "--set",
                     "run.method=floquet"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"cycle_T25.csv", "cycle_T200.csv", "quasi_static.csv", "deltaA.csv", "deltaA.svg",
                        "energy_vs_inv_omega.svg"})
    EXPECT_TRUE(fs::exists(d / "o" / f)) << f;
  const auto m = nlohmann::json::parse(slurp(d / "o" / "manifest.json"));
  EXPECT_GT(m["results"]["fit"]["c"].get<double>(), 9.0);
  EXPECT_LT(m["results"]["fit"]["c"].get<double>(), 14.0);
  EXPECT_EQ(m["results"]["periods"].size(), 4U);
  EXPECT_TRUE(m["results"]["periods"][0]["one_period_map"]["passes"].get<bool>());
  EXPECT_EQ(m["files"]["deltaA.csv"]["columns"][2], "delta_A");
  EXPECT_EQ(m["config"]["run.parallel"], "2");  // repeated --set flags accumulate
}

TEST(Verify, FaultInjectionFailsAlgebra) {
  VerifyOptions clean;
  EXPECT_TRUE(Verifier(clean).algebra().passed);
  VerifyOptions faulty;
  faulty.inject_fault = true;
  const CheckResult r = Verifier(faulty).algebra();
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.metrics["max_residual"].get<double>(), 1e-4);
}

TEST(Verify, CliExitCodes) {
  const fs::path d = scratch("verify");
  const Cli ok = cli({"verify", "--level", "fast", "--report", (d / "r.json").string()});
  EXPECT_EQ(ok.code, 0) << ok.err;
  const auto rep = nlohmann::json::parse(slurp(d / "r.json"));
  EXPECT_TRUE(rep["passed"].get<bool>());
  EXPECT_EQ(rep["level"], "fast");
  const Cli bad = cli({"verify", "--inject-fault"});
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.err.find("[FAIL] AC1"), std::string::npos);
  EXPECT_EQ(cli({"verify", "--level", "slow"}).code, 1);
}

}  // namespace
}  // namespace lindblad::cli
