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

#pragma once

#include <string>
#include <vector>

#include "filterkey/keyrate.hpp"
#include "filterkey/sim.hpp"

namespace filterkey {

/// Fixed CSV column order; decimal point '.', separator ',', header
/// mandatory, floating values at 12 significant digits.
extern const char* const kCsvHeader;  // N,m,n,n0,delta,eps_cl,gamma_bits,...

/// Render one double with 12 significant digits ("%.12g").
std::string format_sig12(double v);

std::string csv_row(const KeyRateReport& r);
/// Asymptote pseudo-row: N printed as "inf", counts 0, rate = the limit.
std::string csv_asymptote_row(double rate);
std::string csv_row(const SweepRow& r);

/// Parse one CSV data row back into a report (counts and the 11 columns; the
/// fields CSV does not carry, c_bits and no_key, are defaulted).  Used by the
/// round-trip tests.
KeyRateReport parse_csv_row(const std::string& line);

/// JSON object with fields named exactly like the KeyRateReport members.
std::string report_json(const KeyRateReport& r);
KeyRateReport parse_report_json(const std::string& text);

/// JSON summary of one simulated run: seed, dimensions, observed statistic,
/// accepted/error counts, abort flag, and the empirical estimates with
/// standard errors.
std::string transcript_json(const SimConfig& cfg, const Transcript& t);

}  // namespace filterkey
