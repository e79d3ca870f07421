// SPDX-License-Identifier: Apache-2.0
//
// risrcs: RCS-based received power model for reconfigurable intelligent surfaces
// Copyright (C) 2026 The risrcs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// risrcs command line: eval, sweep, configure, fit, boundary.
// Exit status: 0 success, 1 computation error, 2 usage error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "risrcs.hpp"
#include "risrcs/scene_io.hpp"

namespace {

using namespace risrcs;

std::string fmt(const char* pattern, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// Writes the whole payload to a sibling temp file, then renames it into place,
// so a failed run never leaves a partial file at `path`.
void write_file_atomic(const std::string& path, const std::string& payload) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << payload;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, target);
}

void print_power(const char* label, const PowerResult& r) {
  std::cout << label << ": Pr = " << fmt("%.6e", r.pr) << " W, attenuation = " << fmt("%.4f", r.attenuation_db)
            << " dB\n";
}

struct EvalArgs {
  std::string scene;
  std::string config = "one-bit";
  int reference_scan = kDefaultReferenceScan;
  double mu_bar = 1.0;
};

int cmd_eval(const EvalArgs& a) {
  const SceneConfig scene = parse_scene(a.scene);
  const Configuration config = parse_configuration(a.config);
  const PowerResult proposed = configured_power(scene, config, a.reference_scan);
  const PowerResult specular = specular_power(scene, a.mu_bar);
  std::cout << "surface: " << scene.layout.rows << " x " << scene.layout.cols << " elements, lambda = "
            << fmt("%.7g", scene.wavelength()) << " m\n";
  std::cout << "placement: d1 = " << fmt("%.6g", scene.tx.d) << " m, theta1 = " << fmt("%.6g", rad_to_deg(scene.tx.theta))
            << " deg, d2 = " << fmt("%.6g", scene.rx.d) << " m, theta2 = " << fmt("%.6g", rad_to_deg(scene.rx.theta))
            << " deg\n";
  std::cout << "configuration: " << to_string(config) << '\n';
  print_power("proposed", proposed);
  print_power("specular", specular);
  return 0;
}

struct SweepArgs {
  std::string scene;
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 41;
  std::vector<std::string> models{"proposed", "specular"};
  std::string config = "one-bit";
  int reference_scan = kDefaultReferenceScan;
  double mu_bar = 1.0;
  bool frozen = false;
  std::string out;
  std::string plot;
};

int cmd_sweep(const SweepArgs& a) {
  const SceneConfig scene = parse_scene(a.scene);
  SweepSpec spec;
  spec.parameter = parse_sweep_parameter(a.param);
  spec.from = a.from;
  spec.to = a.to;
  spec.steps = a.steps;
  spec.proposed = false;
  spec.specular = false;
  for (const auto& m : a.models) {
    if (m == "proposed")
      spec.proposed = true;
    else if (m == "specular")
      spec.specular = true;
    else
      throw InputError("unknown model '" + m + "' (expected proposed or specular)");
  }
  spec.configuration = parse_configuration(a.config);
  spec.reference_scan = a.reference_scan;
  spec.mu_bar = a.mu_bar;
  spec.freeze_configuration = a.frozen;

  const auto rows = run_sweep(scene, spec);
  std::ostringstream csv;
  write_sweep_csv(csv, spec.parameter, rows);
  std::string svg;
  if (!a.plot.empty()) {
    std::ostringstream s;
    write_sweep_svg(s, spec.parameter, rows);
    svg = s.str();
  }

  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file_atomic(a.out, csv.str());
    std::cout << "wrote " << rows.size() << " rows to " << a.out << '\n';
  }
  if (!a.plot.empty()) write_file_atomic(a.plot, svg);
  return 0;
}

struct ConfigureArgs {
  std::string scene;
  std::string out;
  int reference_scan = kDefaultReferenceScan;
};

int cmd_configure(const ConfigureArgs& a) {
  const SceneConfig scene = parse_scene(a.scene);
  const ConfigReport report = one_bit_configure(scene, a.reference_scan);
  std::ostringstream csv;
  write_state_csv(csv, report.states);
  write_file_atomic(a.out, csv.str());
  std::size_t ones = 0;
  for (auto s : report.states.values()) ones += s;
  std::cout << "method: " << report.method << '\n';
  std::cout << "reference phase: " << fmt("%.4f", rad_to_deg(report.reference_phase)) << " deg\n";
  std::cout << "elements in state 1: " << ones << " of " << report.states.size() << '\n';
  print_power("proposed", make_power_result(report.pr, scene.pt));
  std::cout << "wrote state grid to " << a.out << '\n';
  return 0;
}

struct FitArgs {
  std::string data;
  std::string target;
  std::string scene;
};

int cmd_fit(const FitArgs& a) {
  std::ifstream in(a.data);
  if (!in) throw InputError("cannot open data file '" + a.data + "'");
  const auto samples = read_reflection_csv(in);
  if (a.target == "rcs") {
    const SceneConfig scene = a.scene.empty() ? measurement_scene() : parse_scene(a.scene);
    const RcsFloorFit fit = fit_rcs_floor(samples, scene.layout.element_area(), scene.wavelength());
    std::cout << "c=" << fmt("%.5e", fit.c) << " m^2\n";
    std::cout << "residual rms=" << fmt("%.3e", fit.residuals.rms) << " m^2 over " << fit.residuals.count
              << " samples\n";
  } else if (a.target == "phase") {
    const PhaseFit fit = fit_phase(samples);
    std::cout << "a=" << fmt("%.3f", rad_to_deg(fit.a)) << "°, b=" << fmt("%.3f", rad_to_deg(fit.b)) << "°\n";
    std::cout << "residual rms=" << fmt("%.3e", rad_to_deg(fit.residuals.rms)) << " deg over "
              << fit.residuals.count << " samples\n";
  } else {
    throw InputError("unknown fit target '" + a.target + "'");
  }
  return 0;
}

struct BoundaryArgs {
  std::string scene;
  std::string convention = "effective";
};

int cmd_boundary(const BoundaryArgs& a) {
  const SceneConfig scene = parse_scene(a.scene);
  const FieldConvention c = a.convention == "as-printed" ? FieldConvention::as_printed : FieldConvention::effective;
  std::cout << fmt("%.2f", fraunhofer_distance(scene.layout, scene.wavelength(), c)) << " m\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RCS-based received power model for reconfigurable intelligent surfaces"};
  app.require_subcommand(1);

  std::function<int()> action;

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Evaluate both power models for one scene");
  e->add_option("--scene", eval.scene, "Scene JSON file")->required()->check(CLI::ExistingFile);
  e->add_option("--config", eval.config, "Surface configuration")
      ->check(CLI::IsMember({"one-bit", "all-zero", "continuous-aligned"}));
  e->add_option("--reference-scan", eval.reference_scan, "Reference angles for one-bit configuration")
      ->check(CLI::PositiveNumber);
  e->add_option("--mu-bar", eval.mu_bar, "Mean reflection amplitude for the specular model");
  e->callback([&] { action = [&] { return cmd_eval(eval); }; });

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Sweep d1, d2 or theta2 and tabulate attenuation");
  s->add_option("--scene", sweep.scene, "Scene JSON file")->required()->check(CLI::ExistingFile);
  s->add_option("--param", sweep.param, "Swept parameter")->required()->check(CLI::IsMember({"d1", "d2", "theta2"}));
  s->add_option("--from", sweep.from, "First value (m or deg)")->required();
  s->add_option("--to", sweep.to, "Last value (m or deg)")->required();
  s->add_option("--steps", sweep.steps, "Number of points")->required();
  s->add_option("--models", sweep.models, "Models to evaluate")
      ->delimiter(',')
      ->check(CLI::IsMember({"proposed", "specular"}));
  s->add_option("--config", sweep.config, "Surface configuration")
      ->check(CLI::IsMember({"one-bit", "all-zero", "continuous-aligned"}));
  s->add_option("--reference-scan", sweep.reference_scan, "Reference angles for one-bit configuration")
      ->check(CLI::PositiveNumber);
  s->add_option("--mu-bar", sweep.mu_bar, "Mean reflection amplitude for the specular model");
  s->add_flag("--frozen", sweep.frozen, "Configure once at the scene placement and keep the grid");
  s->add_option("--out", sweep.out, "CSV output file (default: standard output)");
  s->add_option("--plot", sweep.plot, "SVG plot output file");
  s->callback([&] { action = [&] { return cmd_sweep(sweep); }; });

  ConfigureArgs conf;
  auto* c = app.add_subcommand("configure", "Compute a 1-bit state grid and write it as CSV");
  c->add_option("--scene", conf.scene, "Scene JSON file")->required()->check(CLI::ExistingFile);
  c->add_option("--out", conf.out, "State grid CSV")->required();
  c->add_option("--reference-scan", conf.reference_scan, "Reference angles")->check(CLI::PositiveNumber);
  c->callback([&] { action = [&] { return cmd_configure(conf); }; });

  FitArgs fit;
  auto* f = app.add_subcommand("fit", "Fit the RCS floor or the phase model to sampled data");
  f->add_option("--data", fit.data, "CSV with theta_deg,sigma_m2,phase_deg")->required()->check(CLI::ExistingFile);
  f->add_option("--target", fit.target, "rcs or phase")->required()->check(CLI::IsMember({"rcs", "phase"}));
  f->add_option("--scene", fit.scene, "Scene supplying element area and wavelength (default: built-in measurement scene)")
      ->check(CLI::ExistingFile);
  f->callback([&] { action = [&] { return cmd_fit(fit); }; });

  BoundaryArgs bound;
  auto* b = app.add_subcommand("boundary", "Near/far field boundary of the surface");
  b->add_option("--scene", bound.scene, "Scene JSON file")->required()->check(CLI::ExistingFile);
  b->add_option("--convention", bound.convention, "effective (2MNdxdy/lambda) or as-printed (.../lambda^2)")
      ->check(CLI::IsMember({"effective", "as-printed"}));
  b->callback([&] { action = [&] { return cmd_boundary(bound); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    std::string msg = ex.what();
    for (auto& ch : msg)
      if (ch == '\n') ch = ' ';
    std::cerr << "usage error: " << msg << '\n';
    return 2;
  }

  try {
    return action();
  } catch (const risrcs::InputError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
