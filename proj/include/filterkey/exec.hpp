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

namespace filterkey {

/// Number of OpenMP workers parallel kernels should request.  Defaults to the
/// OpenMP maximum; the FILTERKEY_THREADS environment variable replaces that
/// default when set, and an active ScopedWorkers override wins over both.
/// Always >= 1.
int worker_count();

/// RAII override of worker_count(), used by tests and the benchmark to pin a
/// worker count without touching the environment.  Not thread-safe against
/// concurrent overrides (intended for top-level harness code only).
class ScopedWorkers {
 public:
  explicit ScopedWorkers(int n);
  ~ScopedWorkers();
  ScopedWorkers(const ScopedWorkers&) = delete;
  ScopedWorkers& operator=(const ScopedWorkers&) = delete;

 private:
  int saved_;
};

}  // namespace filterkey
