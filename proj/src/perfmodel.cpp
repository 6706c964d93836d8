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

#include "perfmodel.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "error.hpp"

namespace bosonsamp {

namespace {

double log10_classical(int n, const ClassicalModel& m) {
  return std::log10(m.a) + m.b * std::log10(static_cast<double>(n)) + n * std::log10(2.0);
}

double log10_quantum(int n, const QAParams& p) {
  const double log_rate = std::log10(p.rate.at(n));
  if (p.network == Network::kSquare) {
    return std::log10(std::numbers::e) - log_rate - n * std::log10(p.eta);
  }
  return n * std::log10(1.25 / p.eta) - log_rate;
}

void check_photons(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "photon number must be >= 1");
}

}  // namespace

double RepetitionRate::at(int photons) const {
  return form == Form::kConstant ? hz : hz / photons;
}

void QAParams::validate() const {
  if (!(classical.a > 0.0)) throw Error(ErrorCode::kInvalidArgument, "classical coefficient a must be > 0");
  if (!(classical.b >= 1.0 && classical.b <= 2.0)) {
    throw Error(ErrorCode::kInvalidArgument, "classical exponent b must lie in [1, 2]");
  }
  if (!(eta > 0.0 && eta <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "eta must lie in (0, 1]");
  if (!(rate.hz > 0.0)) throw Error(ErrorCode::kInvalidArgument, "repetition rate must be > 0");
}

std::string to_string(Network network) { return network == Network::kSquare ? "square" : "linear"; }

Network parse_network(const std::string& s) {
  if (s == "square") return Network::kSquare;
  if (s == "linear") return Network::kLinear;
  throw Error(ErrorCode::kInvalidArgument, "unknown network '" + s + "' (square, linear)");
}

RepetitionRate parse_rate(const std::string& s) {
  const auto colon = s.find(':');
  RepetitionRate r;
  std::string form = colon == std::string::npos ? "const" : s.substr(0, colon);
  std::string value = colon == std::string::npos ? s : s.substr(colon + 1);
  if (form == "const") {
    r.form = RepetitionRate::Form::kConstant;
  } else if (form == "scaled") {
    r.form = RepetitionRate::Form::kScaled;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "rate must be const:<Hz> or scaled:<Hz>, got '" + s + "'");
  }
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, r.hz);
  if (ec != std::errc() || ptr != end || !(r.hz > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bad repetition rate '" + value + "'");
  }
  return r;
}

std::string to_string(const RepetitionRate& rate) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, rate.hz);
  (void)ec;
  return std::string(rate.form == RepetitionRate::Form::kConstant ? "const:" : "scaled:") +
         std::string(buf, ptr);
}

ClassicalModel parse_classical_preset(const std::string& s) {
  if (s == "scmcmc") return ClassicalModel::scmcmc();
  if (s == "mis") return ClassicalModel::mis();
  throw Error(ErrorCode::kInvalidArgument, "unknown classical preset '" + s + "' (scmcmc, mis)");
}

double classical_time(int photons, const ClassicalModel& model) {
  check_photons(photons);
  return model.a * std::pow(photons, model.b) * std::exp2(photons);
}

double classical_time_nodes(double nodes) {
  if (!(nodes >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "node count must be >= 1");
  return 1.9675e10 / std::pow(nodes, 0.8782);
}

double quantum_time(int photons, const QAParams& params) {
  check_photons(photons);
  if (params.eta == 0.0) throw Error(ErrorCode::kInvalidArgument, "eta must be > 0");
  params.validate();
  return std::pow(10.0, log10_quantum(photons, params));
}

double qa(int photons, const QAParams& params) {
  check_photons(photons);
  params.validate();
  return log10_classical(photons, params.classical) - log10_quantum(photons, params);
}

Threshold threshold_photons(const QAParams& params, int cap) {
  params.validate();
  if (cap < 1) throw Error(ErrorCode::kInvalidArgument, "threshold cap must be >= 1");
  Threshold t;
  if (params.eta <= eta_limit(params.network)) {
    t.below_limit = true;
    return t;
  }
  for (int n = 1; n <= cap; ++n) {
    if (qa(n, params) >= 0.0) {
      t.photons = n;
      return t;
    }
  }
  return t;
}

double eta_at(int photons, const QAParams& params) {
  check_photons(photons);
  const double n = photons;
  const double log_tc = log10_classical(photons, params.classical);
  const double log_rate = std::log10(params.rate.at(photons));
  // Solve log_tc = log10 t_q(eta) for eta.
  if (params.network == Network::kSquare) {
    return std::pow(10.0, (std::log10(std::numbers::e) - log_rate - log_tc) / n);
  }
  return 1.25 / std::pow(10.0, (log_tc + log_rate) / n);
}

double eta_limit(Network network) { return network == Network::kSquare ? 0.5 : 0.625; }

double min_eta_at_cap(const QAParams& params, int cap) {
  check_photons(cap);
  // qa(cap, .) is increasing in eta; bisect for its root.
  QAParams p = params;
  double lo = 1e-12;
  double hi = 1.0;
  p.eta = hi;
  if (qa(cap, p) < 0.0) {
    throw Error(ErrorCode::kUnreachable, "threshold above " + std::to_string(cap) + " photons even at eta = 1");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    p.eta = 0.5 * (lo + hi);
    if (qa(cap, p) >= 0.0) {
      hi = p.eta;
    } else {
      lo = p.eta;
    }
  }
  return hi;
}

}  // namespace bosonsamp
