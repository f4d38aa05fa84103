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

// Batched Metropolis kernel shared by several instruction-set builds. This
// header is included by translation units compiled with -march flags, so it
// must stay free of inline functions and templates that could be merged
// with their baseline instantiations at link time.
#pragma once

#include <cstdint>

namespace qabench::detail {

// Reads annealed side by side; each lane is one independent read.
inline constexpr int kBatchLanes = 8;

// Draws within this relative distance of the approximate exp(-x) are
// re-decided with std::exp.
inline constexpr double kExpTolerance = 1e-7;

struct BatchProblem {
    int num_active;
    const double* h;       // [num_active]
    const int* row;        // [num_active + 1], CSR offsets
    const int* col;        // [row[num_active]]
    const double* weight;  // [row[num_active]]
};

struct BatchState {
    double* spins;                              // [num_active * kBatchLanes], lane-minor, +1/-1
    double* field;                              // scratch [num_active * kBatchLanes]
    int* order;                                 // scratch [num_active]
    std::uint64_t lanes[kBatchLanes][4];        // per-read xoshiro256** states
    std::uint64_t perm[4];                      // shared visiting-order stream
    double energy[kBatchLanes];                 // out: energy tracked from flip deltas, without offset
};

using BatchKernel = void (*)(const BatchProblem&, const double* betas, int num_betas,
                             BatchState&);

void anneal_batch_generic(const BatchProblem&, const double*, int, BatchState&);
#if defined(QABENCH_X86_KERNELS)
void anneal_batch_avx2(const BatchProblem&, const double*, int, BatchState&);
void anneal_batch_avx512(const BatchProblem&, const double*, int, BatchState&);
#endif

}  // namespace qabench::detail
