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

// Compiled once per instruction set with QABENCH_KERNEL_NAME set. Built with
// -ffp-contract=off so every build performs the same IEEE operations and
// produces bit-identical samples.

#include "anneal_kernel.hpp"

#include <cmath>
#include <cstring>

#if defined(__SSE2__)
#include <immintrin.h>
#endif

#ifndef QABENCH_KERNEL_NAME
#define QABENCH_KERNEL_NAME anneal_batch_generic
#endif

namespace qabench::detail {
namespace {

#if defined(__AVX512F__)
constexpr int kWidth = 8;
#elif defined(__AVX2__)
constexpr int kWidth = 4;
#else
constexpr int kWidth = 2;
#endif
constexpr int kChunks = kBatchLanes / kWidth;

typedef double vd __attribute__((vector_size(kWidth * 8)));
typedef std::int64_t vi __attribute__((vector_size(kWidth * 8)));
typedef std::uint64_t vu __attribute__((vector_size(kWidth * 8)));

#define QB_INLINE inline __attribute__((always_inline))

QB_INLINE vd load(const double* p) {
    vd v;
    std::memcpy(&v, p, sizeof v);
    return v;
}
QB_INLINE void store(double* p, vd v) { std::memcpy(p, &v, sizeof v); }
QB_INLINE vd as_double(vu v) {
    vd d;
    std::memcpy(&d, &v, sizeof d);
    return d;
}
QB_INLINE vu as_bits(vd v) {
    vu u;
    std::memcpy(&u, &v, sizeof u);
    return u;
}

QB_INLINE bool any(vi m) {
#if defined(__AVX512F__)
    return _mm512_test_epi64_mask(reinterpret_cast<__m512i>(m), reinterpret_cast<__m512i>(m)) != 0;
#elif defined(__AVX2__)
    return !_mm256_testz_si256(reinterpret_cast<__m256i>(m), reinterpret_cast<__m256i>(m));
#elif defined(__SSE2__)
    return _mm_movemask_pd(reinterpret_cast<__m128d>(m)) != 0;
#else
    for (int w = 0; w < kWidth; ++w)
        if (m[w]) return true;
    return false;
#endif
}

QB_INLINE std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
QB_INLINE vu rotl(vu x, int k) { return (x << k) | (x >> (64 - k)); }

// xoshiro256** on scalars and on kWidth lanes at once; the multiplications
// by 5 and 9 are spelled as shifts so they vectorize without 64-bit multiply.
QB_INLINE std::uint64_t next(std::uint64_t* s) {
    const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
}

struct LaneRng {
    vu s0, s1, s2, s3;
    QB_INLINE vu next() {
        const vu m = s1 + (s1 << 2);
        const vu r = rotl(m, 7);
        const vu result = r + (r << 3);
        const vu t = s1 << 17;
        s2 ^= s0;
        s3 ^= s1;
        s1 ^= s2;
        s0 ^= s3;
        s2 ^= t;
        s3 = rotl(s3, 45);
        return result;
    }
};

// Unbiased index in [0, bound) from the low 16 bits of a draw.
QB_INLINE std::uint32_t index16(std::uint32_t bound, std::uint64_t* s) {
    auto m = static_cast<std::uint32_t>(next(s) & 0xffff) * bound;
    if ((m & 0xffff) < bound) [[unlikely]] {
        const std::uint32_t threshold = (0x10000u - bound) % bound;
        while ((m & 0xffff) < threshold) m = static_cast<std::uint32_t>(next(s) & 0xffff) * bound;
    }
    return m >> 16;
}

QB_INLINE std::uint64_t index64(std::uint64_t bound, std::uint64_t* s) {
    unsigned __int128 m = static_cast<unsigned __int128>(next(s)) * bound;
    if (static_cast<std::uint64_t>(m) < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (static_cast<std::uint64_t>(m) < threshold)
            m = static_cast<unsigned __int128>(next(s)) * bound;
    }
    return static_cast<std::uint64_t>(m >> 64);
}

// exp(-x) for x in [0, 40], relative error about 1e-9: 2^-t is split into
// an exact power of two and a degree-7 polynomial on |r| <= ln 2 / 2.
QB_INLINE vd exp_neg(vd x) {
    const vd t = x * 1.4426950408889634;
    const vd shifted = t + 0x1.8p52;
    const vd k = shifted - 0x1.8p52;
    const vd r = (k - t) * 0.6931471805599453;
    // Estrin's scheme keeps the dependency chain short.
    const vd r2 = r * r;
    const vd r4 = r2 * r2;
    const vd p01 = r + 1.0;
    const vd p23 = r * (1.0 / 6.0) + 0.5;
    const vd p45 = r * (1.0 / 120.0) + 1.0 / 24.0;
    const vd p67 = r * (1.0 / 5040.0) + 1.0 / 720.0;
    const vd p = (p23 * r2 + p01) + (p67 * r2 + p45) * r4;
    const vu scale = (1023 - (as_bits(shifted) & 0xfff)) << 52;
    return p * as_double(scale);
}

}  // namespace

void QABENCH_KERNEL_NAME(const BatchProblem& pb, const double* betas, int num_betas,
                         BatchState& st) {
    constexpr int L = kBatchLanes;
    const int na = pb.num_active;
    double* s = st.spins;
    double* f = st.field;
    int* order = st.order;

    for (int a = 0; a < na; ++a) {
        for (int l = 0; l < L; ++l) {
            double v = pb.h[a];
            for (int e = pb.row[a]; e < pb.row[a + 1]; ++e) v += pb.weight[e] * s[pb.col[e] * L + l];
            f[a * L + l] = v;
        }
        order[a] = a;
    }

    LaneRng lanes[kChunks];
    for (int c = 0; c < kChunks; ++c)
        for (int w = 0; w < kWidth; ++w) {
            const auto& src = st.lanes[c * kWidth + w];
            lanes[c].s0[w] = src[0];
            lanes[c].s1[w] = src[1];
            lanes[c].s2[w] = src[2];
            lanes[c].s3[w] = src[3];
        }
    std::uint64_t perm[4] = {st.perm[0], st.perm[1], st.perm[2], st.perm[3]};

    const vd zero = {};
    vd energy[kChunks];
    for (int c = 0; c < kChunks; ++c) {
        energy[c] = zero;
        for (int a = 0; a < na; ++a) {
            const double* sa = s + static_cast<std::ptrdiff_t>(a) * L + c * kWidth;
            const double* fa = f + static_cast<std::ptrdiff_t>(a) * L + c * kWidth;
            energy[c] += load(sa) * (load(fa) + pb.h[a]) * 0.5;
        }
    }
    const bool small = na <= 0x10000;
    for (int k = 0; k < num_betas; ++k) {
        const vd minus_two_beta = zero - 2.0 * betas[k];
        // Fisher-Yates with the lanes sharing one permutation per sweep;
        // each element is visited as soon as its slot is fixed.
        for (int i = na - 1; i >= 0; --i) {
            const auto bound = static_cast<std::uint32_t>(i) + 1;
            const auto j = small ? index16(bound, perm) : static_cast<std::uint32_t>(index64(bound, perm));
            const int a = order[j];
            order[j] = order[i];
            order[i] = a;

            double* sa = s + static_cast<std::ptrdiff_t>(a) * L;
            double* fa = f + static_cast<std::ptrdiff_t>(a) * L;
            vd spin[kChunks], field[kChunks], x[kChunks], u[kChunks];
            vi accept[kChunks], unsure[kChunks];
            vi unsure_any = {}, flipped_any = {};
            for (int c = 0; c < kChunks; ++c) {
                spin[c] = load(sa + c * kWidth);
                field[c] = load(fa + c * kWidth);
                x[c] = minus_two_beta * spin[c] * field[c];
                // u in (0, 1] with 52 random bits.
                u[c] = 2.0 - as_double((lanes[c].next() >> 12) | 0x3ff0000000000000ULL);
                vd clamped = x[c] < 0.0 ? zero : x[c];
                clamped = clamped > 40.0 ? zero + 40.0 : clamped;
                const vd p = exp_neg(clamped);
                accept[c] = (x[c] <= 0.0) | (u[c] < p);
                const vd gap = u[c] > p ? u[c] - p : p - u[c];
                unsure[c] = (gap <= kExpTolerance * p) & (x[c] > 0.0);
                unsure_any |= unsure[c];
            }
            if (any(unsure_any)) [[unlikely]] {
                for (int c = 0; c < kChunks; ++c)
                    for (int w = 0; w < kWidth; ++w)
                        if (unsure[c][w]) accept[c][w] = u[c][w] < std::exp(-x[c][w]) ? -1 : 0;
            }
            vd delta[kChunks];
            for (int c = 0; c < kChunks; ++c) {
                delta[c] = accept[c] ? -2.0 * spin[c] : zero;
                store(sa + c * kWidth, spin[c] + delta[c]);
                flipped_any |= accept[c];
            }
            if (!any(flipped_any)) continue;
            for (int c = 0; c < kChunks; ++c) energy[c] += delta[c] * field[c];
            for (int e = pb.row[a]; e < pb.row[a + 1]; ++e) {
                double* fb = f + static_cast<std::ptrdiff_t>(pb.col[e]) * L;
                const double w = pb.weight[e];
                for (int c = 0; c < kChunks; ++c)
                    store(fb + c * kWidth, load(fb + c * kWidth) + delta[c] * w);
            }
        }
    }

    for (int c = 0; c < kChunks; ++c)
        for (int w = 0; w < kWidth; ++w) {
            auto& dst = st.lanes[c * kWidth + w];
            dst[0] = lanes[c].s0[w];
            dst[1] = lanes[c].s1[w];
            dst[2] = lanes[c].s2[w];
            dst[3] = lanes[c].s3[w];
        }
    for (int q = 0; q < 4; ++q) st.perm[q] = perm[q];
    for (int c = 0; c < kChunks; ++c)
        for (int w = 0; w < kWidth; ++w) st.energy[c * kWidth + w] = energy[c][w];
}

}  // namespace qabench::detail
