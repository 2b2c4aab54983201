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

#pragma once

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lindblad/cli/config.hpp"
#include "lindblad/cli/output.hpp"
#include "lindblad/cli/scenarios.hpp"
#include "lindblad/cli/verify.hpp"

namespace lindblad::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericalError = 2, kVerificationFailed = 3 };

struct RunRequest {
  std::string config_path;
  std::map<std::string, std::string> flags;  // already mapped to config keys
  bool use_environment = true;
};

/// Layers file, environment and flags; the scenario name may come from any layer.
inline Config load_run_config(const RunRequest& req) {
  std::map<std::string, std::string> file;
  if (!req.config_path.empty()) file = load_config_file(req.config_path);
  const auto env = req.use_environment ? environment_overrides() : std::map<std::string, std::string>{};
  std::string name;
  using Layer = const std::map<std::string, std::string>*;
  for (Layer layer : {Layer(&file), Layer(&env), Layer(&req.flags)})
    if (auto it = layer->find("scenario"); it != layer->end()) name = it->second;
  if (name.empty()) throw ConfigError("no scenario given (set 'scenario = ...' in the config file)");
  return resolve_config(schema_for(find_scenario(name)), file, env, req.flags);
}

inline Json tolerance_block(const Config& c) {
  return Json{{"integrator.rel_tol", c.real("integrator.rel_tol")},
              {"integrator.abs_tol", c.real("integrator.abs_tol")},
              {"integrator.max_step", c.str("integrator.max_step")},
              {"cptp.choi_floor", tol::choi_floor},
              {"cptp.trace", tol::trace}};
}

/// Runs one scenario and writes its artifacts; returns the manifest content.
inline Json run_scenario(const Config& c) {
  const Scenario& s = find_scenario(c.str("scenario"));
  ArtifactSink sink(c.str("output.dir"));
  ScenarioContext ctx{c, sink, c.boolean("output.plots"), c.integer("run.parallel")};
  if (ctx.parallel < 1) throw ConfigError("run.parallel must be >= 1");
  const Json results = s.run(ctx);
  Json cfg = Json::object();
  for (const auto& [k, v] : c.values()) cfg[k] = v;
  Json header;
  header["scenario"] = s.name;
  header["config"] = cfg;
  header["tolerances"] = tolerance_block(c);
  header["results"] = results;
  sink.manifest(header);
  Json m = header;
  m["files"] = Json::object();
  for (const auto& [k, v] : sink.files()) m["files"][k] = v;
  return m;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"lindblad: time-dependent Lindblad equations with closed algebras"};
  app.require_subcommand(1);

  RunRequest req;
  std::string out_dir, plots, parallel, seed;
  std::vector<std::string> sets;
  auto* run = app.add_subcommand("run", "run a scenario and write CSV/SVG artifacts plus manifest.json");
  run->add_option("--config", req.config_path, "scenario config file (key = value)");
  run->add_option("--out", out_dir, "output directory (output.dir)");
  run->add_option("--plots", plots, "write SVG plots: true|false (output.plots)");
  run->add_option("--parallel", parallel, "sweep worker threads (run.parallel)");
  run->add_option("--seed", seed, "reserved; all algorithms are deterministic (run.seed)");
  run->add_option("--set", sets, "override a key: --set params.omega_a=1.7 (repeatable)");

  std::string level = "fast", report_path, configs_dir;
  bool inject_fault = false;
  int verify_parallel = 1;
  auto* verify = app.add_subcommand("verify", "run the invariant suites and print a JSON report");
  verify->add_option("--level", level, "fast | full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--report", report_path, "also write the JSON report to this file");
  verify->add_option("--configs", configs_dir, "certify one-period maps of the *.conf files in this directory");
  verify->add_option("--parallel", verify_parallel, "sweep worker threads");
  verify->add_flag("--inject-fault", inject_fault, "test hook: perturb one structure constant by 1e-3");

  bool show_keys = false;
  auto* list = app.add_subcommand("list-scenarios", "list scenarios and their configuration keys");
  list->add_flag("--keys", show_keys, "also print every key with its default");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*list) {
      for (const auto& s : scenarios()) {
        out << s.name << "  " << s.description << "\n";
        if (show_keys)
          for (const auto& k : schema_for(s))
            out << "    " << k.key << " = " << (k.required ? "<required>" : k.default_value) << "  # " << k.help
                << " [" << key_to_env_name(k.key) << "]\n";
      }
      return kOk;
    }

    if (*run) {
      if (!out_dir.empty()) req.flags["output.dir"] = out_dir;
      if (!plots.empty()) req.flags["output.plots"] = plots;
      if (!parallel.empty()) req.flags["run.parallel"] = parallel;
      if (!seed.empty()) req.flags["run.seed"] = seed;
      for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        req.flags[detail::lower(detail::trim(kv.substr(0, eq)))] = detail::trim(kv.substr(eq + 1));
      }
      const Config c = load_run_config(req);
      const Json m = run_scenario(c);
      out << "wrote " << m["files"].size() << " files + manifest.json to " << c.str("output.dir") << "\n";
      if (m["results"].contains("fit") && !m["results"]["fit"].is_null())
        out << "fit: c = " << m["results"]["fit"]["c"].get<double>()
            << ", exponent = " << m["results"]["fit"]["exponent"].get<double>() << "\n";
      return kOk;
    }

    if (*verify) {
      VerifyOptions vo;
      vo.level = level == "full" ? VerifyLevel::full : VerifyLevel::fast;
      vo.inject_fault = inject_fault;
      vo.parallel = std::max(1, verify_parallel);
      if (!configs_dir.empty()) {
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(configs_dir))
          if (e.path().extension() == ".conf") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
          RunRequest rr;
          rr.config_path = f.string();
          rr.use_environment = false;
          vo.scenario_configs.push_back(load_run_config(rr));
        }
      }
      Verifier v(vo);
      const auto checks = v.run_all();
      const Json rep = Verifier::report(checks, vo.level);
      for (const auto& c : checks) err << Verifier::line(c) << "\n";
      out << rep.dump(2) << "\n";
      if (!report_path.empty()) write_atomic(report_path, rep.dump(2) + "\n");
      return rep["passed"].get<bool>() ? kOk : kVerificationFailed;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
  return kOk;
}

}  // namespace lindblad::cli
