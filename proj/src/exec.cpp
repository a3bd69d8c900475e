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

#include "filterkey/exec.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>

namespace filterkey {

namespace {
std::atomic<int> g_override{0};  // 0 = no override

int env_cap() {
  const char* s = std::getenv("FILTERKEY_THREADS");
  if (s == nullptr) return 0;
  const long v = std::strtol(s, nullptr, 10);
  return v > 0 ? static_cast<int>(v) : 0;
}
}  // namespace

int worker_count() {
  const int o = g_override.load(std::memory_order_relaxed);
  if (o > 0) return o;
  // The environment variable wins outright when set; results do not depend
  // on the worker count, so oversubscription only costs scheduling overhead.
  const int cap = env_cap();
  if (cap > 0) return cap < 1024 ? cap : 1024;
  const int n = omp_get_max_threads();
  return n > 0 ? n : 1;
}

ScopedWorkers::ScopedWorkers(int n) : saved_(g_override.load()) {
  g_override.store(n > 0 ? n : 0);
}

ScopedWorkers::~ScopedWorkers() { g_override.store(saved_); }

}  // namespace filterkey
