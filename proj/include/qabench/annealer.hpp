// Copyright 2026 The qabench Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qabench/models.hpp"
#include "qabench/rng.hpp"

namespace qabench {

struct SamplerParams {
    int num_reads = 1000;
    int num_sweeps = 1000;
    double beta_hot = 0.1;
    double beta_cold = 10.0;
    std::uint64_t seed = 0;
    /// Worker threads for reads; 0 picks the hardware concurrency. Results
    /// do not depend on this value.
    int num_threads = 1;

    /// Throws std::invalid_argument when a constraint is violated.
    void validate() const;
};

inline constexpr double kDefaultSweepsPerMicrosecond = 10.0;

/// round(annealing_time_us * sweeps_per_us), at least 1.
int map_anneal_time(double annealing_time_us, double sweeps_per_us = kDefaultSweepsPerMicrosecond);

/// Geometric inverse-temperature schedule, one entry per sweep. A single
/// sweep runs at beta_hot.
std::vector<double> geometric_schedule(double beta_hot, double beta_cold, int num_sweeps);

/// Raw physical reads. Reads are stored row-major.
struct SampleSet {
    int num_variables = 0;
    std::vector<Value> spins;
    std::vector<double> energies;
    /// Energies accumulated from flip deltas during the anneal. They agree
    /// with `energies` up to rounding; empty for sets not produced locally.
    std::vector<double> tracked_energies;
    double elapsed_seconds = 0.0;
    SamplerParams params;

    int num_reads() const noexcept { return static_cast<int>(energies.size()); }
    std::span<const Value> read(int r) const {
        return {spins.data() + static_cast<std::size_t>(r) * num_variables,
                static_cast<std::size_t>(num_variables)};
    }
    std::span<Value> read(int r) {
        return {spins.data() + static_cast<std::size_t>(r) * num_variables,
                static_cast<std::size_t>(num_variables)};
    }
};

/// Single-spin-flip Metropolis annealer over an Ising model. Variables
/// without any field or coupling are left at their random initial value.
///
/// sample() anneals reads in batches of eight that share one visiting
/// permutation per sweep; initial spins and acceptance draws come from each
/// read's own stream, so read r depends only on (seed, r). The batch kernel
/// is picked for the host CPU and every variant gives identical samples.
class SimulatedAnnealer {
  public:
    explicit SimulatedAnnealer(const IsingModel& model);

    int num_variables() const noexcept { return n_; }

    /// Anneals `spins` in place (they must already hold +1/-1) through the
    /// given schedule and returns the energy tracked incrementally.
    double anneal(std::span<Value> spins, std::span<const double> betas, Rng& rng) const;

    /// num_reads restarts from uniform random spins. Read r uses the stream
    /// seeded by mix_seed({params.seed, r}).
    SampleSet sample(const SamplerParams& params) const;

    /// As above with a named batch kernel ("generic", "avx2", "avx512").
    /// Throws std::invalid_argument if the kernel is unknown or unsupported
    /// by this CPU.
    SampleSet sample(const SamplerParams& params, std::string_view kernel) const;

    /// Batch kernels usable on this CPU, fastest last.
    static std::vector<std::string> kernels();

    double energy(std::span<const Value> spins) const { return model_.energy(spins); }

  private:
    IsingModel model_;
    int n_ = 0;
    std::vector<int> active_;
    std::vector<double> h_;
    std::vector<int> row_;
    std::vector<int> col_;
    std::vector<double> weight_;
};

SampleSet sample_ising(const IsingModel& model, const SamplerParams& params);

}  // namespace qabench
