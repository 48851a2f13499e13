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
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "polygin/kernels.hpp"

namespace polygin {

/// One configuration of unlabelled points drawn from a projection ensemble.
struct PointSample {
    std::vector<cdouble> points;
    KernelSpec spec;
    std::uint64_t seed = 0;
    /// Proposals rejected while drawing this configuration.
    std::uint64_t rejections = 0;
};

/// Radial part of the proposal: the normalized one-point intensity on
/// [0, rmax], tabulated as a CDF over equal-width radius bins. Within a bin
/// the proposal is uniform in area, so its density against dA is
/// mass(bin) / (r_{b+1}^2 - r_b^2).
class RadialProposal {
  public:
    RadialProposal(const BasisTable& table, double rmax, int bins = 4096);

    double rmax() const { return rmax_; }
    int bins() const { return static_cast<int>(mass_.size()); }
    const std::vector<double>& cdf() const { return cdf_; }

    /// Radius from two uniforms in [0, 1).
    double draw_radius(double u_bin, double u_area, int& bin) const;

    /// Proposal density against dA in a bin.
    double density(int bin) const { return density_[bin]; }

    /// Upper bound on intensity / (N * proposal density) over [0, rmax],
    /// including a safety margin.
    double bound() const { return bound_; }

  private:
    double rmax_;
    double width_;
    std::vector<double> mass_;
    std::vector<double> cdf_;  // bins + 1 knots, cdf_[0] = 0, cdf_.back() = 1
    std::vector<double> density_;
    double bound_ = 1.0;
};

/// Exact sampler for the determinantal ensembles with projection kernels.
/// Points are drawn one at a time from the conditional density
/// K_t(z,z) / (N - t), realized by Gram-Schmidt on weighted feature vectors,
/// using rejection from the radial intensity proposal.
///
/// Random numbers: std::mt19937_64 seeded for each point with
/// std::seed_seq{seed_lo32, seed_hi32, point_index, 0x706f6c79}; uniforms are
/// (x >> 11) * 2^-53. Both are fully specified by the C++ standard, so a
/// (spec, seed) pair gives the same configuration on every platform.
class DppSampler {
  public:
    static constexpr std::uint64_t kRejectionBudget = 1'000'000;
    static constexpr int kMaxDimension = 4096;

    explicit DppSampler(const KernelSpec& spec, int proposal_bins = 4096);

    const KernelSpec& spec() const { return spec_; }
    const BasisTable& basis() const { return *table_; }
    const RadialProposal& proposal() const { return *proposal_; }

    /// Throws NumericalError when one point exceeds the rejection budget or
    /// a Gram-Schmidt pivot degenerates.
    PointSample sample(std::uint64_t seed) const;

  private:
    KernelSpec spec_;
    std::shared_ptr<const BasisTable> table_;
    std::shared_ptr<const RadialProposal> proposal_;
};

/// Convenience wrapper building a sampler for one draw.
PointSample sample(const KernelSpec& spec, std::uint64_t seed);

/// Draws one configuration per seed, in parallel; output order follows seeds.
std::vector<PointSample> sample_many(const DppSampler& sampler, const std::vector<std::uint64_t>& seeds);

/// Radial histogram of sampled points against the exact intensity.
struct RadialHistogram {
    std::vector<double> edges;     // bins [edges[b], edges[b+1]); last edge may be +inf
    std::vector<std::uint64_t> counts;
    std::vector<double> density;   // counts / (samples * area), integrates to the dimension
    std::vector<double> expected;  // expected count per bin from the intensity
    std::size_t samples = 0;
};

/// Throws DomainError for an empty list, mixed specs, or non-increasing
/// edges.
RadialHistogram empirical_intensity(const std::vector<PointSample>& samples, const std::vector<double>& edges);

/// Radii splitting the intensity into `bins` bins of equal expected mass;
/// the last edge is +inf.
std::vector<double> equal_mass_edges(const KernelSpec& spec, int bins);

/// Expected number of points with radius in [a, b).
double expected_count(const BasisTable& table, double a, double b);

/// CSV `sample_id,point_id,re,im`, one row per point, coordinates printed
/// in shortest round-trip form.
void write_samples_csv(std::ostream& out, const std::vector<PointSample>& samples);

/// Sidecar JSON {n, q, variant, seed, samples, rejections}; `seed` is the
/// first seed of the run.
std::string samples_sidecar_json(const std::vector<PointSample>& samples);

/// Reads a CSV written by write_samples_csv back into point lists (spec and
/// seed are not stored in the CSV and are left default).
std::vector<std::vector<cdouble>> read_samples_csv(std::istream& in);

}  // namespace polygin
