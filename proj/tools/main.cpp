// Copyright 2026 The bosonsamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "bosonsamp/bosonsamp.h"
#include "run_config.hpp"

namespace {

using bosonsamp::cli::RunConfig;

struct Failure {
  bs_status status;
  std::string message;
};

void check(bs_status s) {
  if (s != BS_OK) throw Failure{s, bs_last_error()};
}

std::string text(const std::string& v) { return v; }
std::string text(bool v) { return v ? "true" : "false"; }
std::string text(int v) { return std::to_string(v); }
std::string text(std::uint64_t v) { return std::to_string(v); }
std::string text(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}
std::string text(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + text(v[i]);
  return out;
}

// Options of one subcommand, tracked so a config file can fill the ones not
// given on the command line and the effective values can be written back.
class Options {
 public:
  explicit Options(CLI::App* app) : app_(app) {
    app_->add_option("--config", config_path_, "Read key=value defaults from a file");
    app_->add_option("--write-config", write_config_path_, "Write the effective configuration and exit");
    app_->add_option("--threads", threads_, "Worker thread cap (0 = all cores); never changes results")
        ->check(CLI::NonNegativeNumber);
  }

  template <typename T>
  CLI::Option* add(const std::string& flags, T& var, const std::string& desc) {
    CLI::Option* o = app_->add_option(flags, var, desc)->capture_default_str();
    entries_.push_back({o, [&var] { return text(var); }});
    return o;
  }

  CLI::Option* flag(const std::string& flags, bool& var, const std::string& desc) {
    CLI::Option* o = app_->add_flag(flags, var, desc);
    entries_.push_back({o, [&var] { return text(var); }});
    return o;
  }

  // Required after config values are merged, so a config file may supply it.
  void require(CLI::Option* o) { required_.push_back(o); }

  CLI::App* app() const { return app_; }

  // Returns false if the run should stop after writing the config.
  bool prepare() {
    if (!config_path_.empty()) apply(bosonsamp::cli::read_config(config_path_));
    bs_set_threads(threads_);
    if (write_config_path_.empty()) {
      for (CLI::Option* o : required_) {
        if (o->count() == 0) throw CLI::RequiredError(o->get_name());
      }
      return true;
    }
    RunConfig cfg;
    for (const auto& e : entries_) cfg.emplace_back(e.option->get_single_name(), e.value());
    const std::string body = bosonsamp::cli::format_config(cfg);
    if (write_config_path_ == "-") {
      std::cout << body;
    } else {
      std::FILE* f = std::fopen(write_config_path_.c_str(), "wb");
      if (!f || std::fwrite(body.data(), 1, body.size(), f) != body.size() || std::fclose(f) != 0) {
        throw Failure{BS_E_IO, "cannot write config '" + write_config_path_ + "'"};
      }
    }
    return false;
  }

 private:
  struct Entry {
    CLI::Option* option;
    std::function<std::string()> value;
  };

  void apply(const RunConfig& cfg) {
    for (const auto& [key, value] : cfg) {
      Entry* match = nullptr;
      for (auto& e : entries_) {
        if (e.option->check_lname(key)) match = &e;
      }
      if (!match) throw CLI::ValidationError("config", "unknown key '" + key + "'");
      if (match->option->count() > 0) continue;  // command line wins
      match->option->add_result(value);
      match->option->run_callback();
    }
  }

  CLI::App* app_;
  std::vector<Entry> entries_;
  std::vector<CLI::Option*> required_;
  std::string config_path_;
  std::string write_config_path_;
  int threads_ = 0;
};

struct UnitaryHandle {
  bs_unitary* u = nullptr;
  std::string source;
  ~UnitaryHandle() { bs_unitary_free(u); }
};

struct RunHandle {
  bs_run* run = nullptr;
  ~RunHandle() { bs_run_free(run); }
};

// --unitary file, else a Haar unitary from (m, seed).
void obtain_unitary(UnitaryHandle& h, const std::string& path, int modes, std::uint64_t seed) {
  if (!path.empty()) {
    check(bs_unitary_load(path.c_str(), 1e-8, &h.u));
    h.source = path;
    return;
  }
  if (modes < 1) throw Failure{BS_E_INVALID_ARGUMENT, "need --unitary or --modes >= 1"};
  check(bs_unitary_haar(modes, seed, &h.u));
  h.source = "haar:" + std::to_string(seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boson sampling simulation with sample-caching Markov chains"};
  app.require_subcommand(1);

  // gen-unitary
  int gu_modes = 0;
  std::uint64_t gu_seed = 0;
  std::string gu_out = "-";
  Options gu(app.add_subcommand("gen-unitary", "Write a Haar-random unitary"));
  gu.require(gu.add("-m,--modes", gu_modes, "Number of modes")->check(CLI::PositiveNumber));
  gu.add("--seed", gu_seed, "Seed");
  gu.add("--out", gu_out, "Output path ('-' for stdout)");

  // permanent
  std::string pm_unitary;
  int pm_modes = 0;
  int pm_photons = 0;
  std::uint64_t pm_seed = 0;
  std::string pm_method = "glynn";
  Options pm(app.add_subcommand("permanent", "Permanent of a matrix file or of a Haar unitary block"));
  pm.add("--unitary", pm_unitary, "Matrix file (no unitarity check)");
  pm.add("-m,--modes", pm_modes, "Haar unitary size when no file is given");
  pm.add("-n,--photons", pm_photons, "Leading block size (default: whole matrix)");
  pm.add("--seed", pm_seed, "Haar seed");
  pm.add("--method", pm_method, "glynn, ryser or naive")->check(CLI::IsMember({"glynn", "ryser", "naive"}));

  // sample
  bs_sample_config sc;
  bs_sample_config_init(&sc);
  int sa_modes = 0;
  std::string sa_sampler = sc.sampler;
  std::string sa_proposal = sc.proposal;
  std::string sa_unitary;
  std::string sa_out = "-";
  bool sa_retain = false;
  bool sa_discard = false;
  Options sa(app.add_subcommand("sample", "Draw samples"));
  sa.require(sa.add("-n,--photons", sc.photons, "Photons"));
  sa.add("-m,--modes", sa_modes, "Modes (Haar unitary when --unitary is absent)");
  sa.add("--unitary", sa_unitary, "Unitary file");
  sa.add("--sampler", sa_sampler, "brute, rejection, mcmc, mis, scmcmc, scmcmc-improved")
      ->check(CLI::IsMember({"brute", "rejection", "mcmc", "mis", "scmcmc", "scmcmc-improved"}));
  sa.add("--proposal", sa_proposal, "uniform, mov1p, distinguishable")
      ->check(CLI::IsMember({"uniform", "mov1p", "distinguishable"}));
  sa.add("-L,--cache-size", sc.cache_size, "Cache size L");
  sa.add("-K,--jump", sc.jump, "Jump K");
  sa.add("--lambda", sc.lambda, "Rejection bound (0 = exact)");
  sa.require(sa.add("-N,--count", sc.count, "Number of samples"));
  sa.add("--seed", sc.seed, "Seed");
  sa.add("--burn-in", sc.burn_in, "Burn-in steps");
  sa.add("--out", sa_out, "Samples path ('-' for stdout)");
  sa.flag("--retain-candidates", sa_retain, "Also write <out>.candidates and <out>.sources");
  sa.flag("--discard-cache", sa_discard, "Drop the cache at the end instead of draining it");

  // diagnose
  bs_diagnose_config dc;
  bs_diagnose_config_init(&dc);
  std::string dg_samples;
  std::string dg_sources;
  std::string dg_unitary;
  std::string dg_strategy = dc.strategy;
  std::string dg_out = "-";
  Options dg(app.add_subcommand("diagnose", "Autocorrelation, similarity and cache statistics"));
  dg.require(dg.add("samples", dg_samples, "Samples file"));
  dg.add("--sources", dg_sources, "Candidate-index file (default: <samples>.sources if present)");
  dg.add("--unitary", dg_unitary, "Unitary file (default: the one named in the samples header)");
  dg.add("--strategy", dg_strategy, "sort_order, binary_decimal, neg_log_p")
      ->check(CLI::IsMember({"sort_order", "binary_decimal", "neg_log_p"}));
  dg.add("--lags", dc.lags, "Largest lag")->check(CLI::Range(1, 200));
  dg.add("-L,--cache-size", dc.cache_size, "Cache size for the geometric fit (default: header)");
  dg.add("-K,--jump", dc.jump, "Jump for epsilon (default: header)");
  dg.add("--out", dg_out, "Report path ('-' for stdout)");

  // qa-curve
  bs_qa_params qp;
  bs_qa_params_init(&qp);
  std::vector<double> qa_eta{1.0};
  std::string qa_rate = qp.rate;
  std::string qa_network = qp.network;
  std::string qa_preset = qp.preset;
  int qa_n_min = 1;
  int qa_n_max = 60;
  std::string qa_out = "-";
  Options qc(app.add_subcommand("qa-curve", "Quantum-advantage sweep over n and eta"));
  qc.add("--eta", qa_eta, "Transmission probabilities (comma separated)")->delimiter(',');
  qc.add("--rate", qa_rate, "const:<Hz> or scaled:<Hz>");
  qc.add("--network", qa_network, "square or linear")->check(CLI::IsMember({"square", "linear"}));
  qc.add("--classical-preset", qa_preset, "scmcmc or mis")->check(CLI::IsMember({"scmcmc", "mis"}));
  qc.add("--n-min", qa_n_min, "First n")->check(CLI::PositiveNumber);
  qc.add("--n-max", qa_n_max, "Last n")->check(CLI::PositiveNumber);
  qc.add("--out", qa_out, "CSV path ('-' for stdout)");

  // distribution
  int ds_photons = 0;
  int ds_modes = 0;
  std::uint64_t ds_seed = 0;
  std::string ds_unitary;
  std::string ds_out = "-";
  Options ds(app.add_subcommand("distribution", "Exact collision-free distribution as CSV"));
  ds.require(ds.add("-n,--photons", ds_photons, "Photons"));
  ds.add("-m,--modes", ds_modes, "Modes (Haar unitary when --unitary is absent)");
  ds.add("--seed", ds_seed, "Haar seed");
  ds.add("--unitary", ds_unitary, "Unitary file");
  ds.add("--out", ds_out, "CSV path ('-' for stdout)");

  try {
    app.parse(argc, argv);

    if (gu.app()->parsed()) {
      if (!gu.prepare()) return 0;
      UnitaryHandle h;
      check(bs_unitary_haar(gu_modes, gu_seed, &h.u));
      check(bs_unitary_save(h.u, gu_out.c_str()));
      (gu_out == "-" ? std::cerr : std::cout) << "residual=" << text(bs_unitary_residual(h.u)) << '\n';
    } else if (pm.app()->parsed()) {
      if (!pm.prepare()) return 0;
      UnitaryHandle h;
      if (!pm_unitary.empty()) {
        check(bs_unitary_load(pm_unitary.c_str(), -1.0, &h.u));
      } else {
        obtain_unitary(h, "", pm_modes, pm_seed);
      }
      double re = 0.0;
      double im = 0.0;
      check(bs_unitary_permanent(h.u, pm_photons, pm_method.c_str(), &re, &im));
      std::cout << "re,im\n" << text(re) << ',' << text(im) << '\n';
    } else if (sa.app()->parsed()) {
      if (!sa.prepare()) return 0;
      if (sa_retain && sa_out == "-") throw Failure{BS_E_INVALID_ARGUMENT, "--retain-candidates needs --out <file>"};
      UnitaryHandle h;
      obtain_unitary(h, sa_unitary, sa_modes, sc.seed);
      sc.sampler = sa_sampler.c_str();
      sc.proposal = sa_proposal.c_str();
      sc.retain_candidates = sa_retain ? 1 : 0;
      sc.discard_cache = sa_discard ? 1 : 0;
      RunHandle r;
      check(bs_sample(h.u, &sc, &r.run));
      const char* keys[] = {"unitary"};
      const char* values[] = {h.source.c_str()};
      check(bs_run_write(r.run, sa_out.c_str(), keys, values, 1));
      if (sa_retain) {
        check(bs_run_write_candidates(r.run, (sa_out + ".candidates").c_str()));
        check(bs_run_write_sources(r.run, (sa_out + ".sources").c_str()));
      }
      bs_run_info info;
      check(bs_run_get_info(r.run, &info));
      const double share = info.wall_seconds > 0.0 ? 100.0 * info.permanent_seconds / info.wall_seconds : 0.0;
      std::cerr << "# wall_seconds=" << text(info.wall_seconds)
                << " permanent_seconds=" << text(info.permanent_seconds) << " permanent_share_pct=" << text(share)
                << " permanent_evals=" << info.permanent_evals << " acceptance_count=" << info.acceptance_count
                << '\n';
    } else if (dg.app()->parsed()) {
      if (!dg.prepare()) return 0;
      if (dg_sources.empty() && std::filesystem::exists(dg_samples + ".sources")) {
        dg_sources = dg_samples + ".sources";
      }
      UnitaryHandle h;
      if (!dg_unitary.empty()) check(bs_unitary_load(dg_unitary.c_str(), 1e-8, &h.u));
      dc.samples_path = dg_samples.c_str();
      dc.sources_path = dg_sources.empty() ? nullptr : dg_sources.c_str();
      dc.strategy = dg_strategy.c_str();
      check(bs_diagnose(&dc, h.u, dg_out.c_str()));
    } else if (qc.app()->parsed()) {
      if (!qc.prepare()) return 0;
      if (qa_eta.empty()) throw Failure{BS_E_INVALID_ARGUMENT, "need at least one --eta"};
      qp.rate = qa_rate.c_str();
      qp.network = qa_network.c_str();
      qp.preset = qa_preset.c_str();
      qp.eta = qa_eta.front();
      check(bs_qa_curve(&qp, qa_n_min, qa_n_max, qa_eta.data(), qa_eta.size(), qa_out.c_str()));
    } else if (ds.app()->parsed()) {
      if (!ds.prepare()) return 0;
      UnitaryHandle h;
      obtain_unitary(h, ds_unitary, ds_modes, ds_seed);
      check(bs_distribution_write(h.u, ds_photons, ds_out.c_str()));
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    std::cerr << "error[E_USAGE]: " << e.what() << '\n';
    return 2;
  } catch (const bosonsamp::cli::ConfigError& e) {
    std::cerr << "error[E_CONFIG]: " << e.what() << '\n';
    return 2;
  } catch (const Failure& f) {
    std::cerr << "error[" << bs_status_name(f.status) << "]: " << f.message << '\n';
    return 1;
  }
  return 0;
}
