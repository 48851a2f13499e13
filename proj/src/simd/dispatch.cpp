// Copyright 2026 The polygin Authors.
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

#include <cstdlib>
#include <string>

#include "polygin/simd.hpp"

namespace polygin::simd {

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

const KernelTable* kernels_for(Isa isa) {
    switch (isa) {
        case Isa::scalar: return &detail::scalar_table;
        case Isa::avx2: return detail::avx2_table();
        case Isa::neon: return detail::neon_table();
    }
    return nullptr;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (kernels_for(isa) != nullptr) out.push_back(isa);
    }
    return out;
}

namespace {

const KernelTable& select() {
    if (const char* forced = std::getenv("POLYGIN_SIMD")) {
        const std::string want(forced);
        for (Isa isa : available_isas()) {
            if (isa_name(isa) == want) return *kernels_for(isa);
        }
    }
    if (const auto* t = detail::avx2_table()) return *t;
    if (const auto* t = detail::neon_table()) return *t;
    return detail::scalar_table;
}

}  // namespace

const KernelTable& kernels() {
    static const KernelTable& active = select();
    return active;
}

}  // namespace polygin::simd
