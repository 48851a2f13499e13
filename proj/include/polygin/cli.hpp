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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "polygin/kernels.hpp"

namespace polygin::cli {

inline constexpr std::string_view kConfigSchema = "polygin.experiment/1";

/// Exit codes shared by every subcommand.
enum ExitCode : int { kSuccess = 0, kToleranceFailure = 1, kUsageError = 2 };

/// Everything a run depends on. Reports embed the resolved config, so a
/// report can be regenerated from its own "config" member.
struct ExperimentConfig {
    int n = 64;
    int q = 1;
    Variant variant = Variant::full;
    std::string g = "bump(0.5,0.2)*harm(1)";
    int nr = 160;
    int ntheta = 512;
    double rmax = 0.0;  // 0 selects max(2, 1 + 8/sqrt(n))
    std::uint64_t seed = 1;
    int samples = 2000;
    double tolerance = 0.0;  // 0 selects the subcommand default
    std::string out;
    std::string report;
    std::string suite = "identities";
    std::string path = "basis";
    bool weighted = true;
    std::string z = "0";
    std::string w = "0";
    int pairs = 1000;

    KernelSpec spec() const { return {n, q, variant}; }
};

nlohmann::ordered_json to_json(const ExperimentConfig& c);

/// Reads a config object; requires "schema" == kConfigSchema and rejects
/// unknown keys. Throws DomainError.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Parses "x", "x,y", "x+yi", "x-yi" or "yi".
cdouble parse_complex(std::string_view text);

/// Entry point of the polygin command line; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polygin::cli
