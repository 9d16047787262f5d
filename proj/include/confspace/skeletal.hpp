#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "confspace/complex.hpp"

namespace confspace {

/**
 * Flat cell-array form of a complex, the working representation of the
 * homology engine and of the big lazily enumerated models.
 *
 * cells[p] holds all p-cells as consecutive (p+1)-tuples of vertex ids,
 * each tuple strictly increasing, tuples sorted lexicographically. Lookups
 * are binary searches; there are no per-cell allocations, which is what
 * keeps the multi-million-cell models inside a small memory budget.
 */
struct SkeletalComplex {
    std::vector<std::vector<std::int32_t>> cells;
    /// All cells of dimension <= complete_up_to are present. When truncated
    /// is set, the underlying complex has (unknown) cells above that bound.
    int complete_up_to = -1;
    bool truncated = false;

    int top_dim() const { return static_cast<int>(cells.size()) - 1; }

    std::size_t count(int p) const {
        if (p < 0 || p > top_dim()) return 0;
        return cells[static_cast<std::size_t>(p)].size() / static_cast<std::size_t>(p + 1);
    }

    std::size_t total_cells() const {
        std::size_t t = 0;
        for (int p = 0; p <= top_dim(); ++p) t += count(p);
        return t;
    }

    bool empty() const { return total_cells() == 0; }

    std::span<const std::int32_t> cell(int p, std::size_t i) const {
        return {cells[static_cast<std::size_t>(p)].data() + i * static_cast<std::size_t>(p + 1),
                static_cast<std::size_t>(p + 1)};
    }

    /// Index of a tuple among the p-cells, or -1 if absent.
    std::int64_t index_of(int p, std::span<const std::int32_t> key) const {
        if (p < 0 || p > top_dim()) return -1;
        const auto& layer = cells[static_cast<std::size_t>(p)];
        const std::size_t stride = static_cast<std::size_t>(p + 1);
        std::int64_t lo = 0, hi = static_cast<std::int64_t>(layer.size() / stride);
        while (lo < hi) {
            const std::int64_t mid = lo + (hi - lo) / 2;
            const std::int32_t* t = layer.data() + static_cast<std::size_t>(mid) * stride;
            int cmp = 0;
            for (std::size_t j = 0; j < stride; ++j) {
                if (t[j] != key[j]) { cmp = t[j] < key[j] ? -1 : 1; break; }
            }
            if (cmp < 0)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo >= static_cast<std::int64_t>(layer.size() / stride)) return -1;
        const std::int32_t* t = layer.data() + static_cast<std::size_t>(lo) * stride;
        for (std::size_t j = 0; j < stride; ++j)
            if (t[j] != key[j]) return -1;
        return lo;
    }

    /// Sort each layer lexicographically (tuples must already be increasing).
    void sort_layers() {
        for (int p = 0; p <= top_dim(); ++p) {
            auto& layer = cells[static_cast<std::size_t>(p)];
            const std::size_t stride = static_cast<std::size_t>(p + 1);
            const std::size_t n = layer.size() / stride;
            if (n < 2) continue;
            std::vector<std::uint32_t> order(n);
            std::iota(order.begin(), order.end(), 0u);
            std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
                const std::int32_t* x = layer.data() + a * stride;
                const std::int32_t* y = layer.data() + b * stride;
                return std::lexicographical_compare(x, x + stride, y, y + stride);
            });
            std::vector<std::int32_t> out(layer.size());
            for (std::size_t i = 0; i < n; ++i)
                std::copy_n(layer.data() + order[i] * stride, stride, out.data() + i * stride);
            layer = std::move(out);
        }
    }

    static SkeletalComplex from_complex(const SimplicialComplex& K) {
        SkeletalComplex S;
        S.cells.resize(static_cast<std::size_t>(K.dim() + 1));
        for (int p = 0; p <= K.dim(); ++p) {
            auto& layer = S.cells[static_cast<std::size_t>(p)];
            layer.reserve(K.count(p) * static_cast<std::size_t>(p + 1));
            for (const Simplex& s : K.cells(p)) layer.insert(layer.end(), s.begin(), s.end());
        }
        S.complete_up_to = K.dim();
        S.truncated = false;
        return S;
    }

    static SkeletalComplex from_subcomplex(const Subcomplex& A) {
        SkeletalComplex S;
        S.cells.resize(static_cast<std::size_t>(A.dim() + 1));
        for (int p = 0; p <= A.dim(); ++p) {
            auto& layer = S.cells[static_cast<std::size_t>(p)];
            layer.reserve(A.count(p) * static_cast<std::size_t>(p + 1));
            for (const Simplex& s : A.cells(p)) layer.insert(layer.end(), s.begin(), s.end());
        }
        S.complete_up_to = A.dim();
        S.truncated = false;
        return S;
    }

    std::int64_t euler_characteristic() const {
        std::int64_t chi = 0;
        for (int p = 0; p <= top_dim(); ++p)
            chi += (p % 2 == 0) ? static_cast<std::int64_t>(count(p))
                                : -static_cast<std::int64_t>(count(p));
        return chi;
    }
};

/// Number of connected components (union-find over the 1-skeleton).
inline std::int64_t component_count(const SkeletalComplex& K) {
    if (K.count(0) == 0) return 0;
    const std::size_t n = K.count(0);
    std::vector<std::int32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::int32_t x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (std::size_t e = 0; e < K.count(1); ++e) {
        auto t = K.cell(1, e);
        // Vertex ids of an edge are positions in cells[0] after lookup.
        std::int32_t a = static_cast<std::int32_t>(K.index_of(0, std::span{&t[0], 1}));
        std::int32_t b = static_cast<std::int32_t>(K.index_of(0, std::span{&t[1], 1}));
        if (a < 0 || b < 0) throw std::logic_error("edge endpoint missing from 0-cells");
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::int64_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (parent[i] == static_cast<std::int32_t>(i)) ++c;
    return c;
}

/// Split into connected components (each piece keeps the original vertex ids).
inline std::vector<SkeletalComplex> split_components(const SkeletalComplex& K) {
    std::vector<SkeletalComplex> out;
    const std::size_t n = K.count(0);
    if (n == 0) return out;
    std::vector<std::int32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::int32_t x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (std::size_t e = 0; e < K.count(1); ++e) {
        auto t = K.cell(1, e);
        std::int32_t a = static_cast<std::int32_t>(K.index_of(0, std::span{&t[0], 1}));
        std::int32_t b = static_cast<std::int32_t>(K.index_of(0, std::span{&t[1], 1}));
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::vector<std::int32_t> root_index(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::int32_t r = find(static_cast<std::int32_t>(i));
        if (root_index[static_cast<std::size_t>(r)] < 0) {
            root_index[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(out.size());
            out.emplace_back();
            out.back().cells.resize(static_cast<std::size_t>(K.top_dim() + 1));
            out.back().complete_up_to = K.complete_up_to;
            out.back().truncated = K.truncated;
        }
    }
    for (int p = 0; p <= K.top_dim(); ++p) {
        for (std::size_t i = 0; i < K.count(p); ++i) {
            auto t = K.cell(p, i);
            std::int32_t v0 = static_cast<std::int32_t>(K.index_of(0, std::span{&t[0], 1}));
            SkeletalComplex& piece =
                out[static_cast<std::size_t>(root_index[static_cast<std::size_t>(find(v0))])];
            piece.cells[static_cast<std::size_t>(p)].insert(
                piece.cells[static_cast<std::size_t>(p)].end(), t.begin(), t.end());
        }
    }
    for (auto& piece : out) {
        while (!piece.cells.empty() && piece.cells.back().empty()) piece.cells.pop_back();
        piece.complete_up_to = std::min(piece.complete_up_to, K.complete_up_to);
    }
    return out;
}

/**
 * Remove free pairs (an elementary collapse engine).
 *
 * A p-cell with exactly one (p+1)-coface has no higher cofaces at all in a
 * downward-closed complex, so the pair can be removed without changing the
 * homotopy type. Pairs are restricted to coface dimension <= max_pair_dim,
 * and when the complex is truncated additionally to dimensions where the
 * coface count is complete. Removal cascades until no free pair is left.
 * The result keeps the original vertex ids and stays lexicographically
 * sorted within each layer.
 */
inline SkeletalComplex collapse_reduce(const SkeletalComplex& K, int max_pair_dim) {
    const int top = K.top_dim();
    int limit = std::min(max_pair_dim, top);
    if (K.truncated) limit = std::min(limit, K.complete_up_to);
    SkeletalComplex R = K;
    if (limit < 1) return R;

    // face_idx[p] holds, for every p-cell and each dropped position, the index
    // of that face among the (p-1)-cells.
    std::vector<std::vector<std::int32_t>> face_idx(static_cast<std::size_t>(limit + 1));
    for (int p = 1; p <= limit; ++p) {
        const std::size_t cnt = R.count(p);
        auto& fi = face_idx[static_cast<std::size_t>(p)];
        fi.resize(cnt * static_cast<std::size_t>(p + 1));
        std::vector<std::int32_t> key(static_cast<std::size_t>(p));
        for (std::size_t i = 0; i < cnt; ++i) {
            auto t = R.cell(p, i);
            for (int drop = 0; drop <= p; ++drop) {
                std::size_t w = 0;
                for (int j = 0; j <= p; ++j)
                    if (j != drop) key[w++] = t[static_cast<std::size_t>(j)];
                const std::int64_t idx = R.index_of(p - 1, key);
                if (idx < 0) throw std::logic_error("collapse: missing face (complex not closed)");
                fi[i * static_cast<std::size_t>(p + 1) + static_cast<std::size_t>(drop)] =
                    static_cast<std::int32_t>(idx);
            }
        }
    }

    std::vector<std::vector<char>> alive(static_cast<std::size_t>(top + 1));
    for (int p = 0; p <= top; ++p) alive[static_cast<std::size_t>(p)].assign(R.count(p), 1);

    // Coface count plus xor accumulator: when the count drops to one, the xor
    // is exactly (index of the unique surviving coface) + 1.
    std::vector<std::vector<std::int32_t>> cnt(static_cast<std::size_t>(limit));
    std::vector<std::vector<std::uint64_t>> acc(static_cast<std::size_t>(limit));
    for (int p = 0; p < limit; ++p) {
        cnt[static_cast<std::size_t>(p)].assign(R.count(p), 0);
        acc[static_cast<std::size_t>(p)].assign(R.count(p), 0);
    }
    for (int p = 1; p <= limit; ++p) {
        const auto& fi = face_idx[static_cast<std::size_t>(p)];
        const std::size_t cn = R.count(p);
        for (std::size_t i = 0; i < cn; ++i)
            for (int drop = 0; drop <= p; ++drop) {
                const std::int64_t f =
                    fi[i * static_cast<std::size_t>(p + 1) + static_cast<std::size_t>(drop)];
                cnt[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(f)]++;
                acc[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(f)] ^=
                    static_cast<std::uint64_t>(i) + 1;
            }
    }

    std::deque<std::pair<int, std::int64_t>> queue;  // (dim of free face, index)
    for (int p = 0; p < limit; ++p)
        for (std::size_t i = 0; i < R.count(p); ++i)
            if (cnt[static_cast<std::size_t>(p)][i] == 1)
                queue.emplace_back(p, static_cast<std::int64_t>(i));

    auto remove_cell = [&](int p, std::int64_t i) {
        alive[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] = 0;
        if (p == 0 || p > limit) return;
        const auto& fi = face_idx[static_cast<std::size_t>(p)];
        for (int drop = 0; drop <= p; ++drop) {
            const std::int64_t f = fi[static_cast<std::size_t>(i) * static_cast<std::size_t>(p + 1) +
                                      static_cast<std::size_t>(drop)];
            if (!alive[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(f)]) continue;
            auto& c = cnt[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(f)];
            acc[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(f)] ^=
                static_cast<std::uint64_t>(i) + 1;
            if (--c == 1) queue.emplace_back(p - 1, f);
        }
    };

    while (!queue.empty()) {
        auto [p, i] = queue.front();
        queue.pop_front();
        if (!alive[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)]) continue;
        if (cnt[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] != 1) continue;
        const std::int64_t tau = static_cast<std::int64_t>(
                                     acc[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)]) -
                                 1;
        if (tau < 0 || !alive[static_cast<std::size_t>(p + 1)][static_cast<std::size_t>(tau)])
            throw std::logic_error("collapse: coface bookkeeping out of sync");
        alive[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] = 0;
        remove_cell(p + 1, tau);
        // The free face itself still owes decrements to its own faces.
        if (p >= 1) {
            alive[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] = 1;
            remove_cell(p, i);
        }
    }

    SkeletalComplex out;
    out.cells.resize(static_cast<std::size_t>(top + 1));
    out.complete_up_to = R.complete_up_to;
    out.truncated = R.truncated;
    for (int p = 0; p <= top; ++p) {
        const std::size_t stride = static_cast<std::size_t>(p + 1);
        auto& layer = out.cells[static_cast<std::size_t>(p)];
        for (std::size_t i = 0; i < R.count(p); ++i)
            if (alive[static_cast<std::size_t>(p)][i]) {
                auto t = R.cell(p, i);
                layer.insert(layer.end(), t.begin(), t.end());
            }
    }
    while (!out.cells.empty() && out.cells.back().empty()) out.cells.pop_back();
    return out;
}

/// True if repeated collapsing reduces K to a single vertex (a contractibility
/// certificate; failure proves nothing).
inline bool collapses_to_point(const SkeletalComplex& K) {
    if (K.truncated) return false;
    SkeletalComplex R = collapse_reduce(K, K.top_dim());
    return R.top_dim() == 0 && R.count(0) == 1;
}

}  // namespace confspace
