#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "confspace/homology.hpp"
#include "confspace/skeletal.hpp"
#include "confspace/snf.hpp"

namespace confspace {

/**
 * Edge-path presentation of the fundamental group. Generators are indexed
 * from 0; a relator letter g+1 stands for generator g and -(g+1) for its
 * inverse.
 */
struct Presentation {
    std::int64_t generators = 0;
    std::vector<std::vector<std::int32_t>> relators;
};

namespace detail {

inline void free_reduce(std::vector<std::int32_t>& w) {
    std::vector<std::int32_t> out;
    out.reserve(w.size());
    for (std::int32_t letter : w) {
        if (!out.empty() && out.back() == -letter)
            out.pop_back();
        else
            out.push_back(letter);
    }
    w = std::move(out);
}

inline void cyclic_reduce(std::vector<std::int32_t>& w) {
    free_reduce(w);
    std::size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
        ++lo;
        --hi;
    }
    w = std::vector<std::int32_t>(w.begin() + static_cast<std::ptrdiff_t>(lo),
                                  w.begin() + static_cast<std::ptrdiff_t>(hi));
}

inline std::vector<std::int32_t> inverse_word(const std::vector<std::int32_t>& w) {
    std::vector<std::int32_t> out(w.rbegin(), w.rend());
    for (auto& letter : out) letter = -letter;
    return out;
}

}  // namespace detail

/**
 * Fundamental group of a connected complex from its 2-skeleton, relative to
 * a breadth-first spanning tree: one generator per non-tree edge, one
 * relator per triangle. `basepoint` is a vertex id; by default the smallest
 * vertex of the complex.
 */
inline Presentation pi1_presentation(const SkeletalComplex& K, std::int64_t basepoint = -1) {
    if (K.count(0) == 0) throw std::invalid_argument("pi1: empty complex");
    if (K.truncated && K.complete_up_to < 2)
        throw std::invalid_argument("pi1 needs complete cells through dimension 2");

    const std::size_t nv = K.count(0);
    const std::size_t ne = K.count(1);

    auto vertex_pos = [&](std::int32_t id) {
        const std::int64_t p = K.index_of(0, std::span{&id, 1});
        if (p < 0) throw std::invalid_argument("pi1: vertex not in complex");
        return static_cast<std::size_t>(p);
    };

    std::size_t base = 0;
    if (basepoint >= 0) base = vertex_pos(static_cast<std::int32_t>(basepoint));

    std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> adj(nv);
    for (std::size_t e = 0; e < ne; ++e) {
        auto t = K.cell(1, e);
        const auto a = static_cast<std::int32_t>(vertex_pos(t[0]));
        const auto b = static_cast<std::int32_t>(vertex_pos(t[1]));
        adj[static_cast<std::size_t>(a)].emplace_back(b, static_cast<std::int32_t>(e));
        adj[static_cast<std::size_t>(b)].emplace_back(a, static_cast<std::int32_t>(e));
    }

    std::vector<char> seen(nv, 0);
    std::vector<char> in_tree(ne, 0);
    std::deque<std::int32_t> queue;
    seen[base] = 1;
    queue.push_back(static_cast<std::int32_t>(base));
    std::size_t reached = 1;
    while (!queue.empty()) {
        const std::int32_t u = queue.front();
        queue.pop_front();
        for (auto [w, e] : adj[static_cast<std::size_t>(u)]) {
            if (seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = 1;
            in_tree[static_cast<std::size_t>(e)] = 1;
            ++reached;
            queue.push_back(w);
        }
    }
    if (reached != nv) throw std::invalid_argument("pi1: complex is not connected");

    std::vector<std::int32_t> gen_of(ne, -1);
    std::int32_t gens = 0;
    for (std::size_t e = 0; e < ne; ++e)
        if (!in_tree[e]) gen_of[e] = gens++;

    // Letter for walking the edge from vertex u to vertex v (positive when
    // the walk agrees with the increasing orientation of the edge).
    auto letter = [&](std::int32_t e, bool forward) -> std::int32_t {
        if (gen_of[static_cast<std::size_t>(e)] < 0) return 0;
        const std::int32_t g = gen_of[static_cast<std::size_t>(e)] + 1;
        return forward ? g : -g;
    };

    auto edge_index = [&](std::int32_t a, std::int32_t b) {
        std::int32_t key[2] = {std::min(a, b), std::max(a, b)};
        const std::int64_t e = K.index_of(1, std::span{key, 2});
        if (e < 0) throw std::logic_error("pi1: triangle edge missing");
        return static_cast<std::int32_t>(e);
    };

    Presentation P;
    P.generators = gens;
    for (std::size_t f = 0; f < K.count(2); ++f) {
        auto t = K.cell(2, f);
        std::vector<std::int32_t> word;
        const std::int32_t eab = edge_index(t[0], t[1]);
        const std::int32_t ebc = edge_index(t[1], t[2]);
        const std::int32_t eac = edge_index(t[0], t[2]);
        if (std::int32_t l = letter(eab, true)) word.push_back(l);
        if (std::int32_t l = letter(ebc, true)) word.push_back(l);
        if (std::int32_t l = letter(eac, false)) word.push_back(l);
        detail::free_reduce(word);
        if (!word.empty()) P.relators.push_back(std::move(word));
    }
    return P;
}

inline Presentation pi1_presentation(const SimplicialComplex& K, std::int64_t basepoint = -1) {
    return pi1_presentation(SkeletalComplex::from_complex(K), basepoint);
}

/// Abelianized presentation as (free rank, torsion coefficients).
inline HomologyGroup abelianization(const Presentation& P) {
    std::vector<MatrixEntry> entries;
    for (std::size_t r = 0; r < P.relators.size(); ++r)
        for (std::int32_t letter : P.relators[r]) {
            const std::int64_t g = std::abs(letter) - 1;
            entries.push_back({static_cast<std::int64_t>(r), g, letter > 0 ? 1 : -1});
        }
    const SmithResult s = smith_normal_form(static_cast<std::int64_t>(P.relators.size()),
                                            P.generators, entries);
    HomologyGroup out;
    out.betti = P.generators - s.rank;
    out.torsion = s.nontrivial_factors;
    return out;
}

/**
 * Bounded Tietze simplification: repeatedly eliminate a generator that
 * occurs exactly once in some relator. Returns true when the presentation
 * shrinks to the trivial group, false when the heuristic gets stuck or a
 * size bound trips. A true answer certifies triviality; false proves
 * nothing.
 */
inline bool presentation_trivializes(Presentation P, std::size_t letter_budget = 200000) {
    std::vector<char> alive(static_cast<std::size_t>(P.generators), 1);
    auto gens_left = [&]() {
        std::int64_t n = 0;
        for (char a : alive) n += a;
        return n;
    };

    for (;;) {
        for (auto& r : P.relators) detail::cyclic_reduce(r);
        P.relators.erase(std::remove_if(P.relators.begin(), P.relators.end(),
                                        [](const auto& r) { return r.empty(); }),
                         P.relators.end());
        if (gens_left() == 0) return true;

        // Find the shortest relator with a generator appearing exactly once.
        std::size_t best_r = P.relators.size();
        std::int32_t best_g = 0;
        for (std::size_t i = 0; i < P.relators.size(); ++i) {
            if (best_r < P.relators.size() && P.relators[i].size() >= P.relators[best_r].size())
                continue;
            for (std::int32_t letter : P.relators[i]) {
                const std::int32_t g = std::abs(letter);
                std::size_t occurrences = 0;
                for (std::int32_t m : P.relators[i])
                    if (std::abs(m) == g) ++occurrences;
                if (occurrences == 1) {
                    best_r = i;
                    best_g = g;
                    break;
                }
            }
        }
        if (best_r == P.relators.size()) return false;

        // r = u g^e w  =>  g = (u^-1 w^-1) for e = +1, g = (w u) for e = -1.
        std::vector<std::int32_t> rel = std::move(P.relators[best_r]);
        P.relators.erase(P.relators.begin() + static_cast<std::ptrdiff_t>(best_r));
        std::size_t at = 0;
        while (std::abs(rel[at]) != best_g) ++at;
        std::vector<std::int32_t> u(rel.begin(), rel.begin() + static_cast<std::ptrdiff_t>(at));
        std::vector<std::int32_t> w(rel.begin() + static_cast<std::ptrdiff_t>(at) + 1, rel.end());
        std::vector<std::int32_t> sub;
        if (rel[at] > 0) {
            sub = detail::inverse_word(u);
            const auto wi = detail::inverse_word(w);
            sub.insert(sub.end(), wi.begin(), wi.end());
        } else {
            sub = w;
            sub.insert(sub.end(), u.begin(), u.end());
        }
        detail::free_reduce(sub);
        const auto sub_inv = detail::inverse_word(sub);

        std::size_t total = 0;
        for (auto& r : P.relators) {
            std::vector<std::int32_t> out;
            out.reserve(r.size());
            for (std::int32_t letter : r) {
                if (letter == best_g)
                    out.insert(out.end(), sub.begin(), sub.end());
                else if (letter == -best_g)
                    out.insert(out.end(), sub_inv.begin(), sub_inv.end());
                else
                    out.push_back(letter);
            }
            r = std::move(out);
            total += r.size();
        }
        alive[static_cast<std::size_t>(best_g - 1)] = 0;
        if (total > letter_budget) return false;
    }
}

}  // namespace confspace
