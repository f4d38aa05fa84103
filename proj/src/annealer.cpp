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

#include "qabench/annealer.hpp"

#include "anneal_kernel.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qabench {

namespace {

// Deviates u in (0, 1] carry 32 random bits, so u >= 2^-32 and a move with
// beta * dE above 32 ln 2 can never be accepted.
constexpr double kNeverAccept = 22.1808;

// Accepts an uphill move of scaled size x = beta * dE > 0 with probability
// exp(-x). Cubic Taylor bounds 1 - x + x^2/2 - x^3/6 <= exp(-x) <=
// 1 / (1 + x + x^2/2 + x^3/6) settle most draws without calling exp; the
// decision is identical to comparing against exp(-x) directly.
inline bool metropolis_accepts(double x, double u) {
    if (x >= kNeverAccept) return false;
    const double cubic = x * (1.0 + x * (0.5 + x * (1.0 / 6.0)));
    if (u * (1.0 + cubic) >= 1.0) return false;
    if (u <= 1.0 - x * (1.0 - x * (0.5 - x * (1.0 / 6.0)))) return true;
    return u < std::exp(-x);
}

// Unbiased index in [0, bound) from the low 16 bits of `word` (Lemire's
// multiply-shift), redrawing whole words on the rare rejection.
inline std::uint32_t index16(std::uint64_t word, std::uint32_t bound, Rng& rng) {
    auto m = static_cast<std::uint32_t>(word & 0xffff) * bound;
    if ((m & 0xffff) < bound) [[unlikely]] {
        const std::uint32_t threshold = (0x10000u - bound) % bound;
        while ((m & 0xffff) < threshold) m = static_cast<std::uint32_t>(rng() & 0xffff) * bound;
    }
    return m >> 16;
}

// Separates the visiting-order stream of batch b from the stream of read b.
constexpr std::uint64_t kPermutationTag = 0x7065726d75746531ULL;

}  // namespace

void SamplerParams::validate() const {
    if (num_reads < 1) throw std::invalid_argument("num_reads must be positive");
    if (num_sweeps < 1) throw std::invalid_argument("num_sweeps must be positive");
    if (!(beta_hot > 0.0) || !(beta_cold > 0.0))
        throw std::invalid_argument("inverse temperatures must be positive");
    if (!(beta_hot < beta_cold)) throw std::invalid_argument("beta_hot must be below beta_cold");
    if (num_threads < 0) throw std::invalid_argument("num_threads must be non-negative");
}

int map_anneal_time(double annealing_time_us, double sweeps_per_us) {
    if (!(annealing_time_us > 0.0)) throw std::invalid_argument("annealing time must be positive");
    if (!(sweeps_per_us > 0.0)) throw std::invalid_argument("sweeps_per_us must be positive");
    const double sweeps = std::round(annealing_time_us * sweeps_per_us);
    return std::max(1, static_cast<int>(sweeps));
}

std::vector<double> geometric_schedule(double beta_hot, double beta_cold, int num_sweeps) {
    std::vector<double> betas(static_cast<std::size_t>(std::max(num_sweeps, 0)));
    if (num_sweeps == 1) {
        betas[0] = beta_hot;
        return betas;
    }
    const double ratio = std::log(beta_cold / beta_hot);
    for (int k = 0; k < num_sweeps; ++k)
        betas[k] = beta_hot * std::exp(ratio * k / (num_sweeps - 1));
    betas.back() = beta_cold;
    return betas;
}

SimulatedAnnealer::SimulatedAnnealer(const IsingModel& model)
    : model_(model), n_(model.num_variables()) {
    std::vector<int> degree(n_, 0);
    for (const auto& [key, j] : model_.quadratic_terms()) {
        if (j == 0.0) continue;
        ++degree[key.first];
        ++degree[key.second];
    }
    std::vector<int> compact(n_, -1);
    for (int i = 0; i < n_; ++i) {
        if (degree[i] > 0 || model_.linear(i) != 0.0) {
            compact[i] = static_cast<int>(active_.size());
            active_.push_back(i);
        }
    }
    const auto na = active_.size();
    h_.resize(na);
    row_.assign(na + 1, 0);
    for (std::size_t a = 0; a < na; ++a) {
        h_[a] = model_.linear(active_[a]);
        row_[a + 1] = row_[a] + degree[active_[a]];
    }
    col_.resize(row_.back());
    weight_.resize(row_.back());
    std::vector<int> fill(row_.begin(), row_.end() - 1);
    for (const auto& [key, j] : model_.quadratic_terms()) {
        if (j == 0.0) continue;
        const int a = compact[key.first], b = compact[key.second];
        col_[fill[a]] = b;
        weight_[fill[a]++] = j;
        col_[fill[b]] = a;
        weight_[fill[b]++] = j;
    }
}

double SimulatedAnnealer::anneal(std::span<Value> spins, std::span<const double> betas,
                                 Rng& rng) const {
    if (spins.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("anneal: spin vector has wrong dimension");
    const int na = static_cast<int>(active_.size());
    std::vector<double> s(na), field(na);
    for (int a = 0; a < na; ++a) s[a] = spins[active_[a]];

    double energy = model_.offset();
    for (int a = 0; a < na; ++a) {
        double f = h_[a];
        for (int e = row_[a]; e < row_[a + 1]; ++e) f += weight_[e] * s[col_[e]];
        field[a] = f;
        energy += s[a] * 0.5 * (f + h_[a]);
    }

    std::vector<int> order(na);
    for (int a = 0; a < na; ++a) order[a] = a;

    const int* row = row_.data();
    const int* col = col_.data();
    const double* weight = weight_.data();
    double* sp = s.data();
    double* fp = field.data();

    // One 64-bit draw per visit: the low 16 bits pick the next slot of the
    // sweep's permutation, the high 32 bits give the Metropolis deviate.
    const bool small = na <= 0x10000;
    for (double beta : betas) {
        for (int i = na - 1; i >= 0; --i) {
            const auto bound = static_cast<std::uint32_t>(i) + 1;
            const std::uint64_t word = rng();
            const auto j = small ? index16(word, bound, rng) : static_cast<std::uint32_t>(rng.below(bound));
            const int a = order[j];
            order[j] = order[i];
            order[i] = a;

            const double f = fp[a];
            const double x = -2.0 * beta * sp[a] * f;
            if (x > 0.0) {
                const double u = (static_cast<double>(word >> 32) + 1.0) * 0x1.0p-32;
                if (!metropolis_accepts(x, u)) continue;
            }
            const double d = -2.0 * sp[a];
            sp[a] += d;
            energy += d * f;
            for (int e = row[a]; e < row[a + 1]; ++e) fp[col[e]] += d * weight[e];
        }
    }

    for (int a = 0; a < na; ++a) spins[active_[a]] = static_cast<Value>(sp[a]);
    return energy;
}

namespace {

bool cpu_supports(std::string_view kernel) {
    if (kernel == "generic") return true;
#if defined(QABENCH_X86_KERNELS)
    __builtin_cpu_init();
    if (kernel == "avx2") return __builtin_cpu_supports("avx2");
    if (kernel == "avx512")
        return __builtin_cpu_supports("avx512f") && __builtin_cpu_supports("avx512dq") &&
               __builtin_cpu_supports("avx512vl") && __builtin_cpu_supports("avx512bw");
#endif
    return false;
}

detail::BatchKernel kernel_by_name(std::string_view kernel) {
    if (!cpu_supports(kernel))
        throw std::invalid_argument("annealing kernel not available: " + std::string(kernel));
#if defined(QABENCH_X86_KERNELS)
    if (kernel == "avx2") return detail::anneal_batch_avx2;
    if (kernel == "avx512") return detail::anneal_batch_avx512;
#endif
    return detail::anneal_batch_generic;
}

}  // namespace

std::vector<std::string> SimulatedAnnealer::kernels() {
    std::vector<std::string> out;
    for (const char* name : {"generic", "avx2", "avx512"})
        if (cpu_supports(name)) out.emplace_back(name);
    return out;
}

SampleSet SimulatedAnnealer::sample(const SamplerParams& params) const {
    return sample(params, kernels().back());
}

SampleSet SimulatedAnnealer::sample(const SamplerParams& params, std::string_view kernel) const {
    params.validate();
    const detail::BatchKernel run_kernel = kernel_by_name(kernel);
    constexpr int L = detail::kBatchLanes;

    SampleSet out;
    out.num_variables = n_;
    out.params = params;
    out.spins.assign(static_cast<std::size_t>(params.num_reads) * n_, 1);
    out.energies.assign(params.num_reads, 0.0);
    out.tracked_energies.assign(params.num_reads, 0.0);

    const auto betas = geometric_schedule(params.beta_hot, params.beta_cold, params.num_sweeps);
    const int na = static_cast<int>(active_.size());
    const detail::BatchProblem problem{na, h_.data(), row_.data(), col_.data(), weight_.data()};
    const int num_batches = (params.num_reads + L - 1) / L;
    const auto start = std::chrono::steady_clock::now();

    auto run_batch = [&](int b) {
        std::vector<double> spins(static_cast<std::size_t>(na) * L), field(spins.size());
        std::vector<int> order(na);
        std::vector<Value> full(n_);
        detail::BatchState state{spins.data(), field.data(), order.data(), {}, {}, {}};

        // Initial spins come from each read's own stream, which then
        // continues as that read's acceptance stream. Lanes past num_reads
        // are annealed and discarded.
        for (int l = 0; l < L; ++l) {
            const int r = b * L + l;
            Rng rng(mix_seed({params.seed, static_cast<std::uint64_t>(r)}));
            std::uint64_t bits = 0;
            for (int i = 0; i < n_; ++i) {
                if (i % 64 == 0) bits = rng();
                full[i] = (bits >> (i % 64)) & 1 ? 1 : -1;
            }
            for (int a = 0; a < na; ++a) spins[static_cast<std::size_t>(a) * L + l] = full[active_[a]];
            if (r < params.num_reads) std::copy(full.begin(), full.end(), out.read(r).begin());
            const auto st = rng.state();
            std::copy(st.begin(), st.end(), state.lanes[l]);
        }
        const auto perm = Rng(mix_seed({params.seed, static_cast<std::uint64_t>(b), kPermutationTag})).state();
        std::copy(perm.begin(), perm.end(), state.perm);

        run_kernel(problem, betas.data(), static_cast<int>(betas.size()), state);

        for (int l = 0; l < L; ++l) {
            const int r = b * L + l;
            if (r >= params.num_reads) break;
            auto read = out.read(r);
            for (int a = 0; a < na; ++a)
                read[active_[a]] = static_cast<Value>(spins[static_cast<std::size_t>(a) * L + l]);
            out.energies[r] = model_.energy(read);
            out.tracked_energies[r] = model_.offset() + state.energy[l];
        }
    };

    int threads = params.num_threads == 0 ? static_cast<int>(std::thread::hardware_concurrency())
                                          : params.num_threads;
    threads = std::clamp(threads, 1, num_batches);
    if (threads == 1) {
        for (int b = 0; b < num_batches; ++b) run_batch(b);
    } else {
        std::atomic<int> next{0};
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int b = next++; b < num_batches; b = next++) run_batch(b);
            });
    }

    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

SampleSet sample_ising(const IsingModel& model, const SamplerParams& params) {
    return SimulatedAnnealer(model).sample(params);
}

}  // namespace qabench
