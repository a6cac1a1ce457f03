// Copyright 2026 The gatepump Authors
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

#include "gatepump/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace gatepump::kernels {

namespace {

const Backend* find(std::string_view name) {
  if (name == "scalar") return &scalar_backend();
  if (name == "avx2") return avx2_backend();
  return nullptr;
}

const Backend* best_available() {
  if (const Backend* b = avx2_backend()) return b;
  return &scalar_backend();
}

const Backend* initial_backend() {
  if (const char* env = std::getenv("GATEPUMP_KERNELS")) {
    std::string_view v(env);
    if (v != "auto" && !v.empty())
      if (const Backend* b = find(v)) return b;
  }
  return best_available();
}

std::atomic<const Backend*> g_active{nullptr};

}  // namespace

const Backend& active() {
  const Backend* b = g_active.load(std::memory_order_acquire);
  if (!b) {
    b = initial_backend();
    g_active.store(b, std::memory_order_release);
  }
  return *b;
}

bool select_backend(std::string_view name) {
  const Backend* b = name == "auto" ? best_available() : find(name);
  if (!b) return false;
  g_active.store(b, std::memory_order_release);
  return true;
}

std::vector<const Backend*> available_backends() {
  std::vector<const Backend*> out{&scalar_backend()};
  if (const Backend* b = avx2_backend()) out.push_back(b);
  return out;
}

}  // namespace gatepump::kernels
