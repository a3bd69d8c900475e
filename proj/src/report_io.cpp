// Copyright 2026 The filterkey project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "filterkey/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace filterkey {

const char* const kCsvHeader =
    "N,m,n,n0,delta,eps_cl,gamma_bits,lambda_ec,ell,rate,security_eps";

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_row(const KeyRateReport& r) {
  std::ostringstream os;
  os << r.N << ',' << r.m << ',' << r.n << ',' << r.n0 << ','
     << format_sig12(r.delta) << ',' << format_sig12(r.eps_cl) << ','
     << format_sig12(r.gamma_bits) << ',' << format_sig12(r.lambda_ec) << ','
     << format_sig12(r.ell) << ',' << format_sig12(r.rate) << ','
     << format_sig12(r.security_epsilon);
  return os.str();
}

std::string csv_asymptote_row(double rate) {
  std::ostringstream os;
  os << "inf,0,0,0,0,0,0,0,0," << format_sig12(rate) << ",0";
  return os.str();
}

std::string csv_row(const SweepRow& r) {
  if (r.error) {
    throw std::logic_error("cannot serialize a failed sweep point: " +
                           *r.error);
  }
  return r.asymptote ? csv_asymptote_row(r.report.rate) : csv_row(r.report);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

KeyRateReport parse_csv_row(const std::string& line) {
  const std::vector<std::string> f = split_fields(line);
  if (f.size() != 11) {
    throw std::invalid_argument("expected 11 CSV fields, got " +
                                std::to_string(f.size()));
  }
  KeyRateReport r;
  r.N = std::stoull(f[0]);
  r.m = std::stoull(f[1]);
  r.n = std::stoull(f[2]);
  r.n0 = std::stoull(f[3]);
  r.delta = std::stod(f[4]);
  r.eps_cl = std::stod(f[5]);
  r.gamma_bits = std::stod(f[6]);
  r.lambda_ec = std::stod(f[7]);
  r.ell = std::stod(f[8]);
  r.rate = std::stod(f[9]);
  r.security_epsilon = std::stod(f[10]);
  return r;
}

std::string report_json(const KeyRateReport& r) {
  nlohmann::ordered_json j;
  j["N"] = r.N;
  j["m"] = r.m;
  j["n"] = r.n;
  j["n0"] = r.n0;
  j["delta"] = r.delta;
  j["eps_cl"] = r.eps_cl;
  j["gamma_bits"] = r.gamma_bits;
  j["c_bits"] = r.c_bits;
  j["lambda_ec"] = r.lambda_ec;
  j["ell"] = r.ell;
  j["rate"] = r.rate;
  j["security_epsilon"] = r.security_epsilon;
  j["no_key"] = r.no_key;
  return j.dump(2);
}

KeyRateReport parse_report_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  KeyRateReport r;
  r.N = j.at("N").get<std::uint64_t>();
  r.m = j.at("m").get<std::uint64_t>();
  r.n = j.at("n").get<std::uint64_t>();
  r.n0 = j.at("n0").get<std::uint64_t>();
  r.delta = j.at("delta").get<double>();
  r.eps_cl = j.at("eps_cl").get<double>();
  r.gamma_bits = j.at("gamma_bits").get<double>();
  r.c_bits = j.at("c_bits").get<double>();
  r.lambda_ec = j.at("lambda_ec").get<double>();
  r.ell = j.at("ell").get<double>();
  r.rate = j.at("rate").get<double>();
  r.security_epsilon = j.at("security_epsilon").get<double>();
  r.no_key = j.at("no_key").get<bool>();
  return r;
}

std::string transcript_json(const SimConfig& cfg, const Transcript& t) {
  const std::uint64_t key_rounds = cfg.rounds - cfg.m;
  const double p_a_hat =
      static_cast<double>(t.accepted) / static_cast<double>(key_rounds);
  const double p_a_sigma =
      std::sqrt(p_a_hat * (1.0 - p_a_hat) / static_cast<double>(key_rounds));
  const double x_err_sigma = std::sqrt(
      t.s_observed * (1.0 - t.s_observed) / static_cast<double>(cfg.m));

  nlohmann::ordered_json j;
  j["seed"] = cfg.seed;
  j["rounds"] = cfg.rounds;
  j["m"] = cfg.m;
  j["theta"] = cfg.params.theta;
  j["x"] = cfg.params.x;
  j["q"] = cfg.params.q;
  j["delta"] = cfg.delta;
  j["q_max"] = cfg.q_max;
  j["n0_min"] = cfg.n0_min;
  j["s_observed"] = t.s_observed;
  j["x_err_sigma"] = x_err_sigma;
  j["accepted"] = t.accepted;
  j["errors"] = t.errors;
  j["aborted"] = t.aborted;
  j["p_a_hat"] = p_a_hat;
  j["p_a_sigma"] = p_a_sigma;
  if (t.accepted > 0) {
    const double q_z_hat = static_cast<double>(t.errors) /
                           static_cast<double>(t.accepted);
    j["q_z_hat"] = q_z_hat;
    j["q_z_sigma"] = std::sqrt(q_z_hat * (1.0 - q_z_hat) /
                               static_cast<double>(t.accepted));
  } else {
    j["q_z_hat"] = nullptr;
    j["q_z_sigma"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace filterkey
