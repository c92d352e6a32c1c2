// Copyright 2026 The IFE Authors
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


#include "ife/report/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "ife/ife.hpp"
#include "ife/report/canonical_json.hpp"
#include "ife/report/io.hpp"

#ifndef IFE_VERSION
#define IFE_VERSION "0.0.0"
#endif

namespace ife::report {

namespace fs = std::filesystem;

std::string tool_version() { return IFE_VERSION; }

namespace {

struct Outcome {
  Json payload = Json::object();
  int code = kOk;
};

struct LoadedSystem {
  std::string name;
  std::string bytes;
  SystemFile file;
  BipartiteSystem system;
};

LoadedSystem load_system(const std::string& path) {
  std::string bytes = read_text_file(path);
  SystemFile file = parse_system(parse_json_text(bytes, path));
  BipartiteSystem sys = file.system();
  return {fs::path(path).filename().string(), std::move(bytes), std::move(file), std::move(sys)};
}

Json system_summary(const LoadedSystem& s) {
  Json j = {{"file", s.name}, {"dim_a", s.file.dim_a}, {"dim_b", s.file.dim_b}};
  if (s.file.label) j["label"] = *s.file.label;
  return j;
}

Json claim_json(const std::string& name, double residual, double tolerance) {
  return {{"name", name}, {"passed", residual <= tolerance}, {"residual", residual},
          {"tolerance", tolerance}};
}

Json sector_json(const IfeSector& s, bool include_basis) {
  Json j = {{"alpha", s.alpha}, {"dimension", s.basis.size()}};
  if (include_basis) j["basis"] = encode_matrix(s.basis.matrix());
  return j;
}

std::vector<double> time_grid(double t_max, int steps) {
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InputError("--t-max", "must be finite and >= 0");
  if (steps < 1) throw InputError("--steps", "must be >= 1");
  return uniform_grid(t_max, static_cast<std::size_t>(steps));
}

int classify(const std::exception& e) {
  if (dynamic_cast<const ResonanceError*>(&e)) return kResonance;
  if (dynamic_cast<const NumericalError*>(&e)) return kNumericalFailure;
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const ife::Error*>(&e)) return kInputError;
  return kNumericalFailure;
}

const char* error_kind(int code) {
  switch (code) {
    case kInputError: return "input_error";
    case kResonance: return "resonance";
    default: return "numerical_failure";
  }
}

// Runs `body`, turning exceptions into an error payload with the mapped code.
Outcome guarded(const std::function<Outcome()>& body, std::ostream& err, const std::string& cmd) {
  try {
    return body();
  } catch (const std::exception& e) {
    Outcome o;
    o.code = classify(e);
    o.payload["error"] = {{"kind", error_kind(o.code)}, {"message", e.what()}};
    if (const auto* ie = dynamic_cast<const InputError*>(&e)) o.payload["error"]["field"] = ie->field();
    err << "ife " << cmd << ": " << error_kind(o.code) << ": " << e.what() << '\n';
    return o;
  }
}

std::vector<std::string> batch_files(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("--batch", "no .json files in " + dir);
  return files;
}

// --- per-system commands ---------------------------------------------------

Outcome sectors_one(const LoadedSystem& s, double tol, bool include_bases) {
  const IfeDecomposition dec = ife_sectors(s.system, tol);
  Outcome o;
  o.payload["system"] = system_summary(s);
  o.payload["cluster_tolerance"] = cluster_tolerance(s.system.h_i());
  o.payload["commutator_kernel_dimension"] = dec.commutator_kernel.size();
  o.payload["ife_exists"] = ife_exists(s.system, tol);
  o.payload["ife_dimension"] = dec.ife_dimension();
  Json sectors = Json::array();
  for (const auto& sec : dec.sectors) sectors.push_back(sector_json(sec, include_bases));
  o.payload["sectors"] = std::move(sectors);
  o.code = dec.sectors.empty() ? kEmptyDecomposition : kOk;
  return o;
}

Outcome oracle_diff_one(const LoadedSystem& s, double tol) {
  const IfeDecomposition fast = ife_sectors(s.system, tol);
  const IfeDecomposition slow = ife_sectors_oracle(s.system, tol);
  const double alpha_tol = cluster_tolerance(s.system.h_i());
  const std::size_t n = std::max(fast.sectors.size(), slow.sectors.size());

  Outcome o;
  o.payload["system"] = system_summary(s);
  o.payload["sector_count"] = {{"fast", fast.sectors.size()}, {"oracle", slow.sectors.size()}};
  Json rows = Json::array();
  double worst = 0.0;
  bool all_match = fast.sectors.size() == slow.sectors.size();
  for (std::size_t k = 0; k < n; ++k) {
    Json row = Json::object();
    const IfeSector* a = k < fast.sectors.size() ? &fast.sectors[k] : nullptr;
    const IfeSector* b = k < slow.sectors.size() ? &slow.sectors[k] : nullptr;
    row["alpha"] = a ? Json(a->alpha) : Json(nullptr);
    row["alpha_oracle"] = b ? Json(b->alpha) : Json(nullptr);
    row["dimension"] = a ? a->basis.size() : 0;
    row["dimension_oracle"] = b ? b->basis.size() : 0;
    double angle = std::numbers::pi / 2;
    bool match = false;
    if (a && b) {
      angle = max_principal_angle(a->basis, b->basis);
      match = angle <= kSubspaceAngleTol && std::abs(a->alpha - b->alpha) <= alpha_tol;
    }
    row["max_principal_angle"] = angle;
    row["match"] = match;
    worst = std::max(worst, angle);
    all_match = all_match && match;
    rows.push_back(std::move(row));
  }
  if (fast.sectors.size() != slow.sectors.size()) worst = std::numbers::pi / 2;
  o.payload["sectors"] = std::move(rows);
  o.payload["claims"] = Json::array({claim_json("oracle_equivalence", worst, kSubspaceAngleTol)});
  o.code = all_match ? kOk : kOracleMismatch;
  return o;
}

// Single system or --batch directory; batch exit code is the largest per-file code.
Outcome per_system(const std::string& input, const std::string& batch, std::string& digest,
                   std::ostream& err, const std::string& cmd,
                   const std::function<Outcome(const LoadedSystem&)>& body) {
  if (batch.empty()) {
    const LoadedSystem s = load_system(input);
    digest = sha256_hex(s.bytes);
    return body(s);
  }
  Outcome o;
  std::string all_bytes;
  Json items = Json::array();
  for (const std::string& path : batch_files(batch)) {
    const std::string name = fs::path(path).filename().string();
    Outcome one = guarded(
        [&] {
          const LoadedSystem s = load_system(path);
          all_bytes += name + '\0' + s.bytes;
          return body(s);
        },
        err, cmd + " " + name);
    one.payload["file"] = name;
    one.payload["exit_code"] = one.code;
    o.code = std::max(o.code, one.code);
    items.push_back(std::move(one.payload));
  }
  digest = sha256_hex(all_bytes);
  o.payload["batch"] = std::move(items);
  return o;
}

Json trace_json(const EvolutionReport& rep) {
  Json j = {{"times", rep.times}, {"deviation", rep.deviation}, {"energy_a", rep.energy_a},
            {"energy_b", rep.energy_b}};
  if (rep.covariance) {
    Json cov = Json::array();
    for (const Complex& c : *rep.covariance) cov.push_back({c.real(), c.imag()});
    j["covariance"] = std::move(cov);
  }
  return j;
}

void write_csv(const std::string& path, const EvolutionReport& rep) {
  std::string text = "time,deviation,energy_a,energy_b";
  if (rep.covariance) text += ",covariance_re,covariance_im";
  text += '\n';
  for (std::size_t k = 0; k < rep.times.size(); ++k) {
    text += format_double(rep.times[k]) + ',' + format_double(rep.deviation[k]) + ',' +
            format_double(rep.energy_a[k]) + ',' + format_double(rep.energy_b[k]);
    if (rep.covariance) {
      text += ',' + format_double((*rep.covariance)[k].real()) + ',' +
              format_double((*rep.covariance)[k].imag());
    }
    text += '\n';
  }
  write_text_file(path, text);
}

Json params_json(const SpinStarParams& p) {
  return {{"n_spins", p.n_spins}, {"omega0", p.omega0}, {"omega", p.omega}, {"gammas", p.gammas}};
}

// --- report plumbing ---------------------------------------------------------

struct Emitter {
  std::string command;
  std::string out_path;
  Json tolerances = Json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  int emit(Outcome o, const std::string& digest, std::ostream& out, std::ostream& err) const {
    Json report = std::move(o.payload);
    report["schema_version"] = kSchemaVersion;
    report["tool"] = {{"name", "ife"}, {"version", tool_version()}};
    report["command"] = command;
    report["inputs_digest"] = digest.empty() ? Json(nullptr) : Json("sha256:" + digest);
    report["tolerances"] = tolerances;
    report["exit_code"] = o.code;
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    const std::string text = canonical_dump(report);
    if (out_path.empty()) {
      out << text;
    } else {
      try {
        write_text_file(out_path, text);
      } catch (const InputError& e) {
        err << "ife " << command << ": input_error: " << e.what() << '\n';
        return kInputError;
      }
    }
    return o.code;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interaction-free evolving states of bipartite quantum systems", "ife"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  std::string input, batch, out_path, state_path, rho_path, observables_path, csv_path,
      system_out;
  double tol = kDefaultNullTol, t_max = kDefaultTimeMax;
  int steps = static_cast<int>(kDefaultTimePoints);
  bool include_bases = false, check_all = false;
  std::optional<double> dev_tol, coherence_tol;
  std::optional<int> sector_index;
  int vector_index = 0, sample_count = 0;
  std::uint64_t seed = kDefaultSeed;
  SpinStarParams params;

  auto add_tol = [&](CLI::App* c) {
    c->add_option("--tol", tol, "Relative null-space tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", out_path, "Write the JSON report here"); };
  auto add_grid = [&](CLI::App* c) {
    c->add_option("--t-max", t_max, "Final time of the uniform grid")->capture_default_str();
    c->add_option("--steps", steps, "Number of grid points")->capture_default_str();
  };
  auto add_system = [&](CLI::App* c, bool batchable) {
    auto* pos = c->add_option("system", input, "System file (JSON)");
    if (batchable) {
      auto* b = c->add_option("--batch", batch, "Process every .json file in this directory")
                    ->check(CLI::ExistingDirectory);
      pos->excludes(b);
    } else {
      pos->required();
    }
  };

  auto* sectors = app.add_subcommand("sectors", "Compute the IFE sectors of a system");
  add_system(sectors, true);
  add_tol(sectors);
  add_out(sectors);
  sectors->add_flag("--include-bases", include_bases, "Include sector basis matrices");

  auto* verify = app.add_subcommand("verify", "Check the evolution of a state against the free evolution");
  add_system(verify, false);
  add_tol(verify);
  add_out(verify);
  add_grid(verify);
  auto* state_opt = verify->add_option("--state", state_path, "State file {\"state\": [[re, im], ...]}");
  verify->add_option("--sector", sector_index, "Use a basis vector of this sector (0-based)")
      ->excludes(state_opt);
  verify->add_option("--vector", vector_index, "Basis vector index inside --sector (0-based)")
      ->capture_default_str();
  verify->add_option("--dev-tol", dev_tol, "Deviation tolerance (default 1e-9 * sqrt(dim))");
  verify->add_option("--observables", observables_path, "File {\"o_a\": ..., \"o_b\": ...} for the covariance trace");
  verify->add_option("--csv", csv_path, "Write the traces as CSV here");

  auto* spin = app.add_subcommand("spin-star", "Closed-form IFE basis of the spin-star model");
  spin->add_option("--n", params.n_spins, "Number of bath spins")->required();
  spin->add_option("--omega0", params.omega0, "Central spin frequency")->required();
  spin->add_option("--omega", params.omega, "Bath spin frequency")->required();
  spin->add_option("--gammas", params.gammas, "Comma-separated couplings")->required()->delimiter(',');
  spin->add_flag("--check-all", check_all, "Verify every claim against the numerical pipeline");
  spin->add_flag("--include-bases", include_bases, "Include the basis matrix");
  spin->add_option("--system-out", system_out, "Also write the system file here");
  add_tol(spin);
  add_out(spin);

  auto* oracle = app.add_subcommand("oracle-diff", "Compare ife_sectors with the brute-force oracle");
  add_system(oracle, true);
  add_tol(oracle);
  add_out(oracle);

  auto* mixed = app.add_subcommand("mixed", "Check a density matrix, or sample random IFE mixed states");
  add_system(mixed, false);
  add_tol(mixed);
  add_out(mixed);
  add_grid(mixed);
  auto* rho_opt = mixed->add_option("--rho", rho_path, "Density matrix file {\"rho\": matrix}");
  mixed->add_option("--sample", sample_count, "Number of random IFE mixed states to check")
      ->check(CLI::PositiveNumber)
      ->excludes(rho_opt);
  mixed->add_option("--seed", seed, "Seed for --sample")->capture_default_str();
  mixed->add_option("--dev-tol", dev_tol, "Deviation tolerance (default 1e-8 * dim)");
  mixed->add_option("--coherence-tol", coherence_tol, "Block-form tolerance (default 1e-8 * ||rho||_F)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  CLI::App* active = app.get_subcommands().front();
  Emitter emitter{active->get_name(), out_path};
  emitter.tolerances = {{"rel_tol", tol},
                        {"angle_tol", kSubspaceAngleTol},
                        {"load_hermitian_tol", kLoadHermitianTol}};
  std::string digest;

  if (active == sectors || active == oracle) {
    if (input.empty() && batch.empty()) {
      err << "ife " << active->get_name() << ": input_error: need a system file or --batch\n";
      return kInputError;
    }
    const bool is_sectors = active == sectors;
    Outcome o = guarded(
        [&] {
          return per_system(input, batch, digest, err, active->get_name(), [&](const LoadedSystem& s) {
            return is_sectors ? sectors_one(s, tol, include_bases) : oracle_diff_one(s, tol);
          });
        },
        err, active->get_name());
    return emitter.emit(std::move(o), digest, out, err);
  }

  if (active == verify) {
    Outcome o = guarded(
        [&] {
          const LoadedSystem s = load_system(input);
          std::string bytes = s.bytes;
          const std::vector<double> grid = time_grid(t_max, steps);
          Outcome r;
          r.payload["system"] = system_summary(s);
          Vector psi;
          double alpha = 0.0;
          Json state = Json::object();
          if (!state_path.empty()) {
            const std::string text = read_text_file(state_path);
            bytes += text;
            psi = parse_state(parse_json_text(text, state_path), s.system.dim());
            alpha = psi.dot(s.system.h_i().matrix() * psi).real();
            state = {{"source", "file"}, {"file", fs::path(state_path).filename().string()}};
          } else {
            if (!sector_index) throw InputError("--sector", "need --state or --sector");
            const IfeDecomposition dec = ife_sectors(s.system, tol);
            if (dec.sectors.empty()) {
              r.code = kEmptyDecomposition;
              r.payload["sectors"] = Json::array();
              return r;
            }
            if (*sector_index < 0 || *sector_index >= static_cast<int>(dec.sectors.size())) {
              throw InputError("--sector", "index out of range (have " +
                                               std::to_string(dec.sectors.size()) + " sectors)");
            }
            const IfeSector& sec = dec.sectors[static_cast<std::size_t>(*sector_index)];
            if (vector_index < 0 || vector_index >= sec.basis.size()) {
              throw InputError("--vector", "index out of range (sector dimension " +
                                               std::to_string(sec.basis.size()) + ")");
            }
            psi = sec.basis.vector(vector_index);
            alpha = sec.alpha;
            state = {{"source", "sector"}, {"sector", *sector_index}, {"vector", vector_index}};
          }
          const std::optional<double> member = classify_pure(psi, s.system, tol);
          state["alpha"] = alpha;
          state["sector_alpha"] = member ? Json(*member) : Json(nullptr);
          r.payload["state"] = std::move(state);

          EvolutionReport rep;
          if (!observables_path.empty()) {
            const std::string text = read_text_file(observables_path);
            bytes += text;
            const Observables obs = parse_observables(parse_json_text(text, observables_path),
                                                      s.system.dim_a(), s.system.dim_b());
            rep = covariance_trace(s.system, psi, obs.o_a, obs.o_b, grid);
            rep.alpha = alpha;
            const EvolutionReport shifted = ife_deviation_trace(s.system, psi, alpha, grid);
            rep.deviation = shifted.deviation;
            rep.max_deviation = shifted.max_deviation;
          } else {
            rep = ife_deviation_trace(s.system, psi, alpha, grid);
          }
          const double limit = dev_tol.value_or(1e-9 * std::sqrt(static_cast<double>(s.system.dim())));
          emitter.tolerances["deviation_tol"] = limit;
          r.payload["max_deviation"] = rep.max_deviation;
          r.payload["oscillation"] = {{"energy_a", oscillation_amplitude(rep.energy_a)},
                                      {"energy_b", oscillation_amplitude(rep.energy_b)}};
          r.payload["traces"] = trace_json(rep);
          r.payload["claims"] =
              Json::array({claim_json("interaction_free_evolution", rep.max_deviation, limit)});
          if (!csv_path.empty()) write_csv(csv_path, rep);
          digest = sha256_hex(bytes);
          r.code = rep.max_deviation <= limit ? kOk : kNotIfe;
          return r;
        },
        err, "verify");
    return emitter.emit(std::move(o), digest, out, err);
  }

  if (active == spin) {
    Outcome o = guarded(
        [&] {
          Outcome r;
          r.payload["params"] = params_json(params);
          digest = sha256_hex(canonical_dump(params_json(params)));
          params.validate();
          if (!system_out.empty()) {
            write_text_file(system_out, canonical_dump(system_to_json(system_file_from(
                                            build_spin_star(params), "spin-star N=" +
                                                                         std::to_string(params.n_spins)))));
          }
          const IfeDecomposition dec = spin_star_ife_basis(params);
          r.payload["params"]["gamma_norm"] = gamma_norm(params.gammas);
          Json multiplicities = Json::array();
          std::uint64_t nu_sum = 0;
          for (HalfInteger rr : admissible_spins(params.n_spins)) {
            multiplicities.push_back({{"r", rr.str()}, {"nu", multiplicity(params.n_spins, rr)}});
            nu_sum += multiplicity(params.n_spins, rr);
          }
          r.payload["multiplicities"] = std::move(multiplicities);
          Json blocks = Json::array();
          for (const DressedBasis& b : dressed_bases(params)) {
            const double sign = b.branch == Branch::plus ? 1.0 : -1.0;
            blocks.push_back({{"branch", b.branch == Branch::plus ? "plus" : "minus"},
                              {"r", b.r.str()},
                              {"dimension", b.vectors.size()},
                              {"h0_eigenvalue", sign * (params.omega0 + 2.0 * b.r.value() * params.omega)}});
          }
          r.payload["dressed_blocks"] = std::move(blocks);
          r.payload["ife_dimension"] = dec.ife_dimension();
          r.payload["expected_dimension"] = 2 * nu_sum;
          Json sectors_out = Json::array();
          for (const auto& sec : dec.sectors) sectors_out.push_back(sector_json(sec, include_bases));
          r.payload["sectors"] = std::move(sectors_out);
          if (check_all) {
            const SpinStarClaimReport rep = verify_spin_star_claims(params, tol);
            Json claims = Json::array();
            for (const ClaimResult& c : rep.claims) claims.push_back(claim_json(c.name, c.residual, c.tolerance));
            r.payload["claims"] = std::move(claims);
            r.code = rep.all_passed() ? kOk : kOracleMismatch;
          }
          return r;
        },
        err, "spin-star");
    return emitter.emit(std::move(o), digest, out, err);
  }

  // mixed
  Outcome o = guarded(
      [&] {
        const LoadedSystem s = load_system(input);
        std::string bytes = s.bytes;
        const std::vector<double> grid = time_grid(t_max, steps);
        const IfeDecomposition dec = ife_sectors(s.system, tol);
        const double limit = dev_tol.value_or(1e-8 * static_cast<double>(s.system.dim()));
        emitter.tolerances["deviation_tol"] = limit;
        Outcome r;
        r.payload["system"] = system_summary(s);
        Json alphas = Json::array();
        for (const auto& sec : dec.sectors) alphas.push_back(sec.alpha);
        r.payload["sector_alphas"] = std::move(alphas);

        if (!rho_path.empty()) {
          const std::string text = read_text_file(rho_path);
          bytes += text;
          digest = sha256_hex(bytes);
          const DensityMatrix rho = parse_density(parse_json_text(text, rho_path), s.system.dim());
          const SectorBlockForm form = project_to_sectors(rho, dec);
          const double block_tol = coherence_tol.value_or(1e-8 * rho.matrix().norm());
          emitter.tolerances["coherence_tol"] = block_tol;
          Json traces = Json::array();
          for (const Matrix& b : form.blocks) traces.push_back(b.trace().real());
          r.payload["block_form"] = {{"block_traces", std::move(traces)},
                                     {"residual_weight", form.residual_weight},
                                     {"leakage_norm", form.leakage_norm},
                                     {"cross_norm", form.cross_norm}};
          const bool block_ok = is_ife_mixed(rho, dec, block_tol);
          const double dev = mixed_deviation(rho, s.system, grid);
          r.payload["is_ife_mixed"] = block_ok;
          r.payload["mixed_deviation"] = dev;
          r.payload["claims"] = Json::array(
              {claim_json("sector_block_form", std::max(form.leakage_norm, form.cross_norm), block_tol),
               claim_json("mixed_evolution", dev, limit)});
          r.code = block_ok && dev <= limit ? kOk : kNotIfe;
          return r;
        }

        if (sample_count < 1) throw InputError("--rho", "need --rho or --sample");
        digest = sha256_hex(bytes);
        if (dec.sectors.empty()) {
          r.code = kEmptyDecomposition;
          return r;
        }
        const std::vector<double> weights(dec.sectors.size(),
                                          1.0 / static_cast<double>(dec.sectors.size()));
        Json samples = Json::array();
        double worst = 0.0;
        for (int k = 0; k < sample_count; ++k) {
          const std::uint64_t sample_seed = seed + static_cast<std::uint64_t>(k);
          const double dev = mixed_deviation(random_ife_mixed(dec, weights, sample_seed), s.system, grid);
          samples.push_back({{"seed", sample_seed}, {"mixed_deviation", dev}});
          worst = std::max(worst, dev);
        }
        r.payload["seed"] = seed;
        r.payload["samples"] = std::move(samples);
        r.payload["claims"] = Json::array({claim_json("sampled_mixed_evolution", worst, limit)});
        r.code = worst <= limit ? kOk : kNotIfe;
        return r;
      },
      err, "mixed");
  return emitter.emit(std::move(o), digest, out, err);
}

}  // namespace ife::report
