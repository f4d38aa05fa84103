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

#include "qabench/oracles.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qabench/annealer.hpp"
#include "qabench/error.hpp"

namespace qabench {

namespace {

/// Fixed-width bitset sized at runtime; just enough for clique search.
class Bits {
  public:
    explicit Bits(int n = 0) : words_((static_cast<std::size_t>(n) + 63) / 64, 0) {}

    void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    int first() const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k]) return static_cast<int>(k * 64 + std::countr_zero(words_[k]));
        return -1;
    }
    bool empty() const {
        return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
    }
    int count_and(const Bits& o) const {
        int c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) c += std::popcount(words_[k] & o.words_[k]);
        return c;
    }
    Bits operator&(const Bits& o) const {
        Bits r = *this;
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= o.words_[k];
        return r;
    }
    Bits minus(const Bits& o) const {
        Bits r = *this;
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= ~o.words_[k];
        return r;
    }
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            for (auto w = words_[k]; w; w &= w - 1)
                f(static_cast<int>(k * 64 + std::countr_zero(w)));
    }

  private:
    std::vector<std::uint64_t> words_;
};

class CliqueSearch {
  public:
    explicit CliqueSearch(const Graph& g) : n_(g.num_vertices()), adj_(n_, Bits(n_)) {
        for (auto [u, v] : g.edges()) {
            adj_[u].set(v);
            adj_[v].set(u);
        }
    }

    MaximumCliques run() {
        Bits p(n_), x(n_);
        for (int v = 0; v < n_; ++v) p.set(v);
        expand(p, x);
        for (auto& c : result_.cliques) std::sort(c.begin(), c.end());
        std::sort(result_.cliques.begin(), result_.cliques.end());
        return std::move(result_);
    }

  private:
    // Greedy sequential colouring; the number of classes bounds the largest
    // clique inside `p`.
    int colour_bound(const Bits& p) const {
        Bits uncoloured = p;
        int colours = 0;
        while (!uncoloured.empty()) {
            ++colours;
            Bits candidates = uncoloured;
            while (!candidates.empty()) {
                const int v = candidates.first();
                uncoloured.reset(v);
                candidates.reset(v);
                candidates = candidates.minus(adj_[v]);
            }
        }
        return colours;
    }

    void expand(Bits p, Bits x) {
        const int depth = static_cast<int>(clique_.size());
        if (p.empty()) {
            if (x.empty() && depth >= result_.size) {
                if (depth > result_.size) {
                    result_.size = depth;
                    result_.cliques.clear();
                }
                result_.cliques.push_back(clique_);
            }
            return;
        }
        if (depth + p.count() < result_.size) return;
        if (depth + colour_bound(p) < result_.size) return;

        int pivot = -1, best = -1;
        auto consider = [&](int u) {
            const int c = p.count_and(adj_[u]);
            if (c > best) {
                best = c;
                pivot = u;
            }
        };
        p.for_each(consider);
        x.for_each(consider);

        const Bits branch = p.minus(adj_[pivot]);
        branch.for_each([&](int v) {
            clique_.push_back(v);
            expand(p & adj_[v], x & adj_[v]);
            clique_.pop_back();
            p.reset(v);
            x.set(v);
        });
    }

    int n_;
    std::vector<Bits> adj_;
    std::vector<int> clique_;
    MaximumCliques result_;
};

}  // namespace

MaximumCliques all_maximum_cliques(const Graph& g) {
    if (g.num_vertices() == 0) return {0, {{}}};
    return CliqueSearch(g).run();
}

ExactCut max_cut_exact(const Graph& g, int max_vertices) {
    const int n = g.num_vertices();
    if (n > max_vertices || n > 63)
        throw InstanceTooLarge("instance too large for exact oracle: n=" + std::to_string(n) +
                               " exceeds " + std::to_string(std::min(max_vertices, 63)));
    ExactCut out;
    out.witness.assign(n, 0);
    if (n < 2) return out;

    std::vector<std::uint64_t> adj(n, 0);
    std::vector<int> deg(n, 0);
    for (auto [u, v] : g.edges()) {
        adj[u] |= std::uint64_t{1} << v;
        adj[v] |= std::uint64_t{1} << u;
        ++deg[u];
        ++deg[v];
    }
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

    // Side-1 membership mask; vertex n-1 never moves, which removes the
    // global flip symmetry.
    std::uint64_t side = 0, best_side = 0;
    int cut = 0, best = 0;
    const std::uint64_t steps = std::uint64_t{1} << (n - 1);
    for (std::uint64_t i = 1; i < steps; ++i) {
        const int v = std::countr_zero(i);
        const std::uint64_t bit = std::uint64_t{1} << v;
        const std::uint64_t same = (side & bit) ? side : (all & ~side);
        const int same_count = std::popcount(adj[v] & same);
        cut += 2 * same_count - deg[v];
        side ^= bit;
        if (cut > best) {
            best = cut;
            best_side = side;
        }
    }
    out.cut = best;
    for (int v = 0; v < n; ++v) out.witness[v] = (best_side >> v) & 1;
    return out;
}

ReferenceCut reference_cut(const Graph& g, int sweeps, int restarts, std::uint64_t seed) {
    if (sweeps < 1 || restarts < 1)
        throw std::invalid_argument("reference_cut: sweeps and restarts must be positive");
    const int n = g.num_vertices();
    ReferenceCut best;
    best.spins.assign(n, 1);
    if (g.num_edges() == 0) return best;

    const IsingModel model = max_cut_ising(g);
    const SimulatedAnnealer annealer(model);
    const auto betas = geometric_schedule(0.1, 5.0, sweeps);

    std::vector<Value> spins(n);
    for (int r = 0; r < restarts; ++r) {
        Rng rng(mix_seed({seed, static_cast<std::uint64_t>(r)}));
        for (auto& s : spins) s = (rng() & 1) ? 1 : -1;
        if (sweeps > 1) annealer.anneal(spins, betas, rng);

        // Greedy descent: flip any vertex with more same-side neighbours
        // than cross neighbours until none remains.
        for (bool improved = true; improved;) {
            improved = false;
            for (int v = 0; v < n; ++v) {
                int same = 0;
                for (int u : g.neighbors(v)) same += spins[u] == spins[v];
                if (2 * same > g.degree(v)) {
                    spins[v] = static_cast<Value>(-spins[v]);
                    improved = true;
                }
            }
        }
        const int c = cut_size(spins, g);
        if (c > best.cut) {
            best.cut = c;
            best.spins = spins;
        }
    }
    return best;
}

}  // namespace qabench
