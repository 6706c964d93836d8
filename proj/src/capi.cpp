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

#include "bosonsamp/bosonsamp.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bosonic.hpp"
#include "diagnostics.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "pattern.hpp"
#include "perfmodel.hpp"
#include "permanent.hpp"
#include "sample_io.hpp"
#include "samplers.hpp"

struct bs_unitary {
  bosonsamp::ComplexMatrix matrix;
};

struct bs_run {
  bosonsamp::SampleRun run;
};

namespace {

using namespace bosonsamp;

thread_local std::string g_last_error;

bs_status fail(bs_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
bs_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return BS_OK;
  } catch (const Error& e) {
    return fail(static_cast<bs_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BS_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BS_E_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

// Opens `path` for writing, with "-" meaning stdout, and runs body(stream).
template <typename F>
void with_output(const char* path, F&& body) {
  require(path != nullptr, "output path is null");
  if (std::strcmp(path, "-") == 0) {
    body(std::cout);
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::kIo, "failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, std::string("cannot open '") + path + "' for writing");
  body(out);
  out.close();
  if (!out) throw Error(ErrorCode::kIo, std::string("failed writing '") + path + "'");
}

PermanentMethod parse_method(const char* name) {
  const std::string s = name ? name : "glynn";
  if (s == "glynn") return PermanentMethod::kGlynn;
  if (s == "ryser") return PermanentMethod::kRyser;
  if (s == "naive") return PermanentMethod::kNaive;
  throw Error(ErrorCode::kInvalidArgument, "unknown permanent method '" + s + "' (glynn, ryser, naive)");
}

ValueStrategy parse_strategy(const char* name) {
  const std::string s = name ? name : "sort_order";
  if (s == "sort_order") return ValueStrategy::kSortOrder;
  if (s == "binary_decimal") return ValueStrategy::kBinaryDecimal;
  if (s == "neg_log_p") return ValueStrategy::kNegLogP;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown strategy '" + s + "' (sort_order, binary_decimal, neg_log_p)");
}

QAParams to_params(const bs_qa_params* in) {
  require(in != nullptr, "params is null");
  QAParams p;
  p.rate = parse_rate(in->rate ? in->rate : "const:1e10");
  p.eta = in->eta;
  p.network = parse_network(in->network ? in->network : "square");
  p.classical = parse_classical_preset(in->preset ? in->preset : "scmcmc");
  if (in->a > 0.0) p.classical.a = in->a;
  if (in->b > 0.0) p.classical.b = in->b;
  p.validate();
  return p;
}

std::optional<std::uint64_t> header_u64(const SampleFile& file, const std::string& key) {
  auto v = file.get(key);
  if (!v) return std::nullopt;
  std::uint64_t out = 0;
  const char* end = v->data() + v->size();
  auto [ptr, ec] = std::from_chars(v->data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParse, "header " + key + "='" + *v + "' is not an integer");
  }
  return out;
}

// Unitary named by a samples header: "haar:<seed>" or a file path.
std::optional<ComplexMatrix> header_unitary(const SampleFile& file) {
  auto src = file.get("unitary");
  if (!src) return std::nullopt;
  if (src->rfind("haar:", 0) == 0) {
    std::uint64_t seed = 0;
    const std::string s = src->substr(5);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorCode::kParse, "bad unitary source '" + *src + "'");
    }
    return haar_random_unitary(file.modes, seed);
  }
  return read_unitary(*src);
}

void write_report(std::ostream& out, const bs_diagnose_config& cfg, const SampleFile& file,
                  const ComplexMatrix* unitary) {
  const ValueStrategy strategy = parse_strategy(cfg.strategy);
  require(cfg.lags >= 1, "lags must be >= 1");
  const std::size_t count = file.size();
  if (count < 2) throw Error(ErrorCode::kInvalidArgument, "diagnostics need at least 2 samples");
  const std::size_t lags = std::min<std::size_t>(static_cast<std::size_t>(cfg.lags), count - 1);

  std::optional<ProblemInstance> inst;
  if (unitary) {
    if (unitary->dim() != file.modes) {
      throw Error(ErrorCode::kInvalidArgument, "unitary has " + std::to_string(unitary->dim()) +
                                                   " modes but samples have " + std::to_string(file.modes));
    }
    inst.emplace(*unitary, file.photons);
  }
  if (strategy == ValueStrategy::kNegLogP && !inst) {
    throw Error(ErrorCode::kInvalidArgument, "neg_log_p needs the unitary");
  }

  out << "metric,lag-or-param,value\n";
  out << "samples,T," << count << '\n';
  const std::vector<double> values =
      sequence_values(file.samples, file.photons, file.modes, strategy, inst ? &*inst : nullptr);
  const auto r = autocorrelations(values, lags);
  for (std::size_t k = 0; k < r.size(); ++k) {
    out << "r_k," << (k + 1) << ',' << (r[k].zero_variance ? "zero_variance" : format_double(r[k].value))
        << '\n';
  }
  try {
    const DurbinWatson dw = durbin_watson(values);
    out << "durbin_watson,d," << format_double(dw.d) << '\n';
    out << "durbin_watson,1-d/2," << format_double(dw.r1_estimate) << '\n';
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kZeroVariance) throw;
    out << "durbin_watson,d,zero_variance\n";
  }
  {
    // Centred series, where 1 - d/2 tracks r_1.
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(count);
    std::vector<double> centred(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) centred[i] = values[i] - mean;
    try {
      const DurbinWatson dw = durbin_watson(centred);
      out << "durbin_watson_centred,d," << format_double(dw.d) << '\n';
      out << "durbin_watson_centred,1-d/2," << format_double(dw.r1_estimate) << '\n';
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kZeroVariance) throw;
      out << "durbin_watson_centred,d,zero_variance\n";
    }
  }

  if (inst) {
    auto states = binomial(static_cast<std::uint64_t>(file.modes), static_cast<std::uint64_t>(file.photons));
    if (states && *states <= enumeration_cap()) {
      const DistributionTable table = full_distribution(*inst);
      const std::vector<double> freq = frequency_histogram(file.samples, file.photons, file.modes);
      out << "similarity,exact," << format_double(similarity(freq, table.normalized())) << '\n';
    }
  }

  if (cfg.sources_path && *cfg.sources_path) {
    const std::vector<std::uint64_t> sources = read_sources(cfg.sources_path);
    if (sources.size() != count) {
      throw Error(ErrorCode::kInvalidArgument, "sources file has " + std::to_string(sources.size()) +
                                                   " entries for " + std::to_string(count) + " samples");
    }
    const std::uint64_t jump = cfg.jump ? cfg.jump : header_u64(file, "K").value_or(200);
    const CacheDistanceStats st = cache_distance_stats(sources, jump);
    out << "cache_distance,mean," << format_double(st.mean) << '\n';
    out << "cache_distance,pairs," << st.pairs << '\n';
    out << "cache_distance,N1," << st.adjacent << '\n';
    out << "cache_distance,R1," << format_double(st.adjacent_ratio) << '\n';
    out << "cache_distance,F_K:" << jump << ',' << st.within_jump << '\n';
    out << "cache_distance,epsilon:" << jump << ',' << format_double(st.epsilon) << '\n';
    const std::uint64_t cache = cfg.cache_size ? cfg.cache_size : header_u64(file, "L").value_or(0);
    if (cache > 0) {
      const GoodnessOfFit fit = geometric_fit(st, cache);
      out << "geometric_fit,chi_square:L=" << cache << ',' << format_double(fit.chi_square) << '\n';
      out << "geometric_fit,dof:L=" << cache << ',' << fit.dof << '\n';
      out << "geometric_fit,p_value:L=" << cache << ',' << format_double(fit.p_value) << '\n';
    }
  }
}

}  // namespace

extern "C" {

const char* bs_status_name(bs_status status) {
  switch (status) {
    case BS_OK:
      return "OK";
    case BS_E_INTERNAL:
      return "E_INTERNAL";
    default:
      if (status >= BS_E_INVALID_ARGUMENT && status <= BS_E_UNREACHABLE) {
        return error_code_name(static_cast<ErrorCode>(static_cast<int>(status)));
      }
      return "E_UNKNOWN";
  }
}

const char* bs_last_error(void) { return g_last_error.c_str(); }

void bs_set_threads(int threads) { set_max_threads(threads); }

void bs_set_enumeration_cap(uint64_t cap) { set_enumeration_cap(cap); }

bs_status bs_unitary_haar(int modes, uint64_t seed, bs_unitary** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    require(modes >= 1, "modes must be >= 1");
    *out = new bs_unitary{haar_random_unitary(modes, seed)};
  });
}

bs_status bs_unitary_load(const char* path, double tolerance, bs_unitary** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "null argument");
    *out = new bs_unitary{tolerance < 0.0 ? read_matrix(path) : read_unitary(path, tolerance)};
  });
}

bs_status bs_unitary_save(const bs_unitary* u, const char* path) {
  return guarded([&] {
    require(u != nullptr, "null argument");
    with_output(path, [&](std::ostream& out) { write_matrix(out, u->matrix); });
  });
}

int bs_unitary_modes(const bs_unitary* u) { return u ? u->matrix.dim() : 0; }

double bs_unitary_residual(const bs_unitary* u) { return u ? u->matrix.unitarity_residual() : NAN; }

void bs_unitary_free(bs_unitary* u) { delete u; }

bs_status bs_permanent(const double* entries, int dim, const char* method, double* re, double* im) {
  return guarded([&] {
    require(entries != nullptr && re != nullptr && im != nullptr, "null argument");
    require(dim >= 1, "dim must be >= 1");
    const auto n = static_cast<std::size_t>(dim);
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = {entries[2 * i], entries[2 * i + 1]};
    const Complex p = permanent(ComplexMatrix(dim, std::move(e)), parse_method(method));
    *re = p.real();
    *im = p.imag();
  });
}

bs_status bs_unitary_permanent(const bs_unitary* u, int dim, const char* method, double* re, double* im) {
  return guarded([&] {
    require(u != nullptr && re != nullptr && im != nullptr, "null argument");
    const int m = u->matrix.dim();
    if (dim <= 0) dim = m;
    require(dim <= m, "block larger than the matrix");
    const auto n = static_cast<std::size_t>(dim);
    std::vector<Complex> e(n * n);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) e[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)] = u->matrix(r, c);
    }
    const Complex p = permanent(ComplexMatrix(dim, std::move(e)), parse_method(method));
    *re = p.real();
    *im = p.imag();
  });
}

bs_status bs_distribution_write(const bs_unitary* u, int photons, const char* path) {
  return guarded([&] {
    require(u != nullptr, "unitary is null");
    const ProblemInstance inst(u->matrix, photons);
    const DistributionTable table = full_distribution(inst);
    const std::vector<double> norm = table.normalized();
    with_output(path, [&](std::ostream& out) {
      out << "# n=" << photons << "\n# m=" << inst.modes() << "\n# collision_free_mass="
          << format_double(table.collision_free_mass) << '\n';
      out << "rank,modes,probability,normalized\n";
      std::vector<int> modes(static_cast<std::size_t>(photons));
      for (std::size_t r = 0; r < table.size(); ++r) {
        unrank_collision_free(r, photons, inst.modes(), modes);
        out << r << ',';
        for (std::size_t k = 0; k < modes.size(); ++k) out << (k ? " " : "") << modes[k];
        out << ',' << format_double(table.raw[r]) << ',' << format_double(norm[r]) << '\n';
      }
    });
  });
}

void bs_sample_config_init(bs_sample_config* config) {
  if (!config) return;
  const SamplerOptions d;
  config->photons = 0;
  config->sampler = "scmcmc-improved";
  config->proposal = "uniform";
  config->count = 0;
  config->seed = 0;
  config->cache_size = d.cache_size;
  config->jump = d.jump;
  config->burn_in = d.burn_in;
  config->lambda = 0.0;
  config->retain_candidates = 0;
  config->discard_cache = 0;
}

bs_status bs_sample(const bs_unitary* u, const bs_sample_config* config, bs_run** out) {
  return guarded([&] {
    require(u != nullptr && config != nullptr && out != nullptr, "null argument");
    SamplerOptions o;
    const std::string sampler = config->sampler ? config->sampler : "scmcmc-improved";
    const std::string proposal = config->proposal ? config->proposal : "uniform";
    auto kind = parse_sampler(sampler);
    if (!kind) {
      throw Error(ErrorCode::kInvalidArgument, "unknown sampler '" + sampler +
                                                   "' (brute, rejection, mcmc, mis, scmcmc, scmcmc-improved)");
    }
    auto prop = parse_proposal(proposal);
    if (!prop) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown proposal '" + proposal + "' (uniform, mov1p, distinguishable)");
    }
    o.kind = *kind;
    o.proposal = *prop;
    o.count = config->count;
    o.seed = config->seed;
    o.cache_size = config->cache_size;
    o.jump = config->jump;
    o.burn_in = config->burn_in;
    o.lambda = config->lambda;
    o.retain_candidates = config->retain_candidates != 0;
    o.discard_cache = config->discard_cache != 0;
    const ProblemInstance inst(u->matrix, config->photons, config->seed);
    auto run = std::make_unique<bs_run>();
    run->run = run_sampler(inst, o);
    *out = run.release();
  });
}

bs_status bs_run_get_info(const bs_run* run, bs_run_info* info) {
  return guarded([&] {
    require(run != nullptr && info != nullptr, "null argument");
    const SampleRun& r = run->run;
    info->photons = r.photons;
    info->modes = r.modes;
    info->samples = r.sample_count();
    info->candidates = r.candidate_count;
    info->permanent_evals = r.permanent_evals;
    info->warmup_evals = r.warmup_evals;
    info->real_permanent_evals = r.real_permanent_evals;
    info->acceptance_count = r.acceptance_count;
    info->cache_full_after = r.cache_full_after;
    info->candidates_retained = r.candidates_retained ? 1 : 0;
    info->wall_seconds = r.wall_seconds;
    info->permanent_seconds = r.permanent_seconds;
  });
}

bs_status bs_run_sample(const bs_run* run, uint64_t i, int* modes) {
  return guarded([&] {
    require(run != nullptr && modes != nullptr, "null argument");
    require(i < run->run.sample_count(), "sample index out of range");
    auto s = run->run.sample(static_cast<std::size_t>(i));
    std::copy(s.begin(), s.end(), modes);
  });
}

bs_status bs_run_source(const bs_run* run, uint64_t i, uint64_t* source) {
  return guarded([&] {
    require(run != nullptr && source != nullptr, "null argument");
    require(run->run.candidates_retained, "candidates not retained");
    require(i < run->run.sources.size(), "sample index out of range");
    *source = run->run.sources[static_cast<std::size_t>(i)];
  });
}

bs_status bs_run_write(const bs_run* run, const char* path, const char* const* extra_keys,
                       const char* const* extra_values, size_t extra_count) {
  return guarded([&] {
    require(run != nullptr, "run is null");
    require(extra_count == 0 || (extra_keys != nullptr && extra_values != nullptr), "null metadata");
    Metadata md = run_metadata(run->run);
    for (size_t i = 0; i < extra_count; ++i) {
      require(extra_keys[i] != nullptr && extra_values[i] != nullptr, "null metadata entry");
      md.emplace_back(extra_keys[i], extra_values[i]);
    }
    with_output(path, [&](std::ostream& out) { write_samples(out, md, run->run.photons, run->run.samples); });
  });
}

bs_status bs_run_write_candidates(const bs_run* run, const char* path) {
  return guarded([&] {
    require(run != nullptr, "run is null");
    if (!run->run.candidates_retained) throw Error(ErrorCode::kInvalidArgument, "candidates not retained");
    Metadata md{{"n", std::to_string(run->run.photons)},
                {"m", std::to_string(run->run.modes)},
                {"candidates", std::to_string(run->run.candidate_sample_count())}};
    with_output(path, [&](std::ostream& out) { write_samples(out, md, run->run.photons, run->run.candidates); });
  });
}

bs_status bs_run_write_sources(const bs_run* run, const char* path) {
  return guarded([&] {
    require(run != nullptr, "run is null");
    if (!run->run.candidates_retained) throw Error(ErrorCode::kInvalidArgument, "candidates not retained");
    with_output(path, [&](std::ostream& out) { write_sources(out, run->run.sources); });
  });
}

void bs_run_free(bs_run* run) { delete run; }

void bs_diagnose_config_init(bs_diagnose_config* config) {
  if (!config) return;
  config->samples_path = nullptr;
  config->sources_path = nullptr;
  config->strategy = "sort_order";
  config->lags = 200;
  config->cache_size = 0;
  config->jump = 0;
}

bs_status bs_diagnose(const bs_diagnose_config* config, const bs_unitary* u, const char* out_path) {
  return guarded([&] {
    require(config != nullptr && config->samples_path != nullptr, "samples path is null");
    const SampleFile file = read_samples(std::filesystem::path(config->samples_path));
    std::optional<ComplexMatrix> from_header;
    const ComplexMatrix* unitary = u ? &u->matrix : nullptr;
    if (!unitary) {
      from_header = header_unitary(file);
      if (from_header) unitary = &*from_header;
    }
    std::ostringstream report;
    write_report(report, *config, file, unitary);
    with_output(out_path, [&](std::ostream& out) { out << report.str(); });
  });
}

void bs_qa_params_init(bs_qa_params* params) {
  if (!params) return;
  params->rate = "const:1e10";
  params->eta = 1.0;
  params->network = "square";
  params->preset = "scmcmc";
  params->a = 0.0;
  params->b = 0.0;
}

bs_status bs_qa(int photons, const bs_qa_params* params, double* t_c, double* t_q, double* qa_out) {
  return guarded([&] {
    const QAParams p = to_params(params);
    if (t_c) *t_c = classical_time(photons, p.classical);
    if (t_q) *t_q = quantum_time(photons, p);
    if (qa_out) *qa_out = qa(photons, p);
  });
}

bs_status bs_qa_threshold(const bs_qa_params* params, int cap, int* photons) {
  return guarded([&] {
    require(photons != nullptr, "null argument");
    const QAParams p = to_params(params);
    const Threshold t = threshold_photons(p, cap);
    if (t.below_limit) {
      throw Error(ErrorCode::kUnreachable, "unreachable: eta " + format_double(p.eta) + " <= eta_limit " +
                                               format_double(eta_limit(p.network)));
    }
    if (!t.photons) throw Error(ErrorCode::kUnreachable, "unreachable at cap " + std::to_string(cap));
    *photons = *t.photons;
  });
}

bs_status bs_qa_min_eta(const bs_qa_params* params, int cap, double* eta) {
  return guarded([&] {
    require(eta != nullptr, "null argument");
    *eta = min_eta_at_cap(to_params(params), cap);
  });
}

double bs_qa_eta_limit(const char* network) {
  try {
    return eta_limit(parse_network(network ? network : "square"));
  } catch (const Error& e) {
    g_last_error = e.what();
    return NAN;
  }
}

bs_status bs_qa_curve(const bs_qa_params* params, int n_min, int n_max, const double* etas, size_t eta_count,
                      const char* path) {
  return guarded([&] {
    require(n_min >= 1 && n_max >= n_min, "need 1 <= n_min <= n_max");
    require(etas != nullptr && eta_count > 0, "need at least one eta");
    QAParams p = to_params(params);
    std::ostringstream s;
    s << "n,eta,t_c,t_q,qa\n";
    for (size_t e = 0; e < eta_count; ++e) {
      p.eta = etas[e];
      p.validate();
      for (int n = n_min; n <= n_max; ++n) {
        s << n << ',' << format_double(p.eta) << ',' << format_double(classical_time(n, p.classical)) << ','
          << format_double(quantum_time(n, p)) << ',' << format_double(qa(n, p)) << '\n';
      }
    }
    s << "# network=" << to_string(p.network) << " rate=" << to_string(p.rate)
      << " a=" << format_double(p.classical.a) << " b=" << format_double(p.classical.b)
      << " eta_limit=" << format_double(eta_limit(p.network)) << '\n';
    for (size_t e = 0; e < eta_count; ++e) {
      p.eta = etas[e];
      const Threshold t = threshold_photons(p);
      s << "# threshold eta=" << format_double(p.eta) << " n=";
      if (t.photons) {
        s << *t.photons;
      } else {
        s << (t.below_limit ? "unreachable (eta <= eta_limit)" : "unreachable at cap");
      }
      s << '\n';
    }
    try {
      s << "# min_eta_at_cap n=100 eta=" << format_double(min_eta_at_cap(p, 100)) << '\n';
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnreachable) throw;
      s << "# min_eta_at_cap n=100 eta=unreachable\n";
    }
    with_output(path, [&](std::ostream& out) { out << s.str(); });
  });
}

}  // extern "C"
