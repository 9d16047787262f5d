#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "confspace/skeletal.hpp"
#include "confspace/snf.hpp"

namespace confspace {

/**
 * Chain-level coreduction state: the surviving ("critical") cells of each
 * dimension together with the boundary maps restricted to them, plus the
 * component count of the original complex for reassembling absolute H_0.
 *
 * The construction repeatedly deletes an incidence pair (a, b), dim b =
 * dim a + 1, of one of two kinds: a is the only still-present face of b
 * (a coreduction pair), or b is the only still-present coface of a (a
 * reduction pair, the classical free face). Either way, eliminating the
 * +-1 pivot that couples them is a single Gaussian elimination step on the
 * chain complex, and the correction term it would add to other boundaries
 * vanishes: in the first case the boundary of b consists of a alone, in the
 * second no other boundary contains a at all. The induced boundary on what
 * remains is therefore the plain restriction of the original one, and
 * homology is preserved exactly at every step, torsion included. The two
 * kinds cascade into one another.
 *
 * A fresh complex has no coreduction pair (every edge has two vertices), so
 * the cascade is additionally seeded by deleting one vertex from each
 * connected component. Deleting a vertex v identifies the remaining chain
 * complex with the augmented complex of its component (w maps to w - v in
 * degree zero), so the survivors compute reduced homology componentwise;
 * H_0 of the input is recovered from the component count alone. The seeds
 * are what give the cascade its bite on flag complexes, whose collapsible
 * structure sits at the bottom where free faces are rare.
 */
struct CoreducedChain {
    std::int64_t components = 0;
    std::vector<std::int64_t> critical;              // survivors per dimension
    std::vector<std::vector<MatrixEntry>> boundary;  // boundary[p]: p -> p-1 cells

    int top_dim() const { return static_cast<int>(critical.size()) - 1; }

    std::int64_t critical_total() const {
        std::int64_t t = 0;
        for (std::int64_t c : critical) t += c;
        return t;
    }
};

/**
 * Run the coreduction cascade over the cells of dimension <= max_dim. Cells
 * above the cut are ignored, which only discards boundary maps out of
 * dimensions beyond max_dim; homology through max_dim - 1 is unaffected. A
 * truncated complex must be complete through the cut.
 */
inline CoreducedChain coreduce_chain(const SkeletalComplex& K, int max_dim) {
    const int top = K.top_dim();
    const int limit = std::min(max_dim, top);
    if (K.truncated && limit > K.complete_up_to)
        throw std::invalid_argument("coreduction needs complete cells through its dimension cut");

    CoreducedChain out;
    if (K.empty() || limit < 0) return out;
    out.critical.assign(static_cast<std::size_t>(limit) + 1, 0);
    out.boundary.resize(static_cast<std::size_t>(limit) + 1);

    // faces[p]: for every p-cell and each dropped position, the index of that
    // face among the (p-1)-cells.
    std::vector<std::vector<std::int32_t>> faces(static_cast<std::size_t>(limit) + 1);
    for (int p = 1; p <= limit; ++p) {
        const std::size_t cnt = K.count(p);
        const std::size_t stride = static_cast<std::size_t>(p + 1);
        auto& fp = faces[static_cast<std::size_t>(p)];
        fp.resize(cnt * stride);
        std::vector<std::int32_t> key(static_cast<std::size_t>(p));
        for (std::size_t i = 0; i < cnt; ++i) {
            auto t = K.cell(p, i);
            for (int drop = 0; drop <= p; ++drop) {
                std::size_t w = 0;
                for (int j = 0; j <= p; ++j)
                    if (j != drop) key[w++] = t[static_cast<std::size_t>(j)];
                const std::int64_t f = K.index_of(p - 1, key);
                if (f < 0) throw std::logic_error("coreduction: missing face (complex not closed)");
                fp[i * stride + static_cast<std::size_t>(drop)] = static_cast<std::int32_t>(f);
            }
        }
    }

    // Coface adjacency in compressed form, derived from the face tables.
    std::vector<std::vector<std::int64_t>> coff(static_cast<std::size_t>(limit) + 1);
    std::vector<std::vector<std::int32_t>> cdat(static_cast<std::size_t>(limit) + 1);
    for (int p = 0; p < limit; ++p) {
        const std::size_t cnt = K.count(p);
        const std::size_t up = K.count(p + 1);
        const std::size_t stride = static_cast<std::size_t>(p + 2);
        const auto& fp = faces[static_cast<std::size_t>(p) + 1];
        auto& off = coff[static_cast<std::size_t>(p)];
        off.assign(cnt + 1, 0);
        for (std::size_t k = 0; k < fp.size(); ++k) off[static_cast<std::size_t>(fp[k]) + 1]++;
        for (std::size_t i = 0; i < cnt; ++i) off[i + 1] += off[i];
        auto& dat = cdat[static_cast<std::size_t>(p)];
        dat.resize(up * stride);
        std::vector<std::int64_t> cursor(off.begin(), off.end() - 1);
        for (std::size_t i = 0; i < up; ++i)
            for (std::size_t j = 0; j < stride; ++j)
                dat[static_cast<std::size_t>(cursor[static_cast<std::size_t>(
                    fp[i * stride + j])]++)] = static_cast<std::int32_t>(i);
    }

    std::vector<std::vector<char>> alive(static_cast<std::size_t>(limit) + 1);
    for (int p = 0; p <= limit; ++p) alive[static_cast<std::size_t>(p)].assign(K.count(p), 1);
    // fcnt[p][i]: still-present faces of the i-th p-cell (coreduction trigger);
    // ccnt[p][i]: still-present cofaces (reduction trigger).
    std::vector<std::vector<std::int32_t>> fcnt(static_cast<std::size_t>(limit) + 1);
    for (int p = 1; p <= limit; ++p)
        fcnt[static_cast<std::size_t>(p)].assign(K.count(p), p + 1);
    std::vector<std::vector<std::int32_t>> ccnt(static_cast<std::size_t>(limit) + 1);
    for (int p = 0; p < limit; ++p) {
        const auto& off = coff[static_cast<std::size_t>(p)];
        auto& cc = ccnt[static_cast<std::size_t>(p)];
        cc.resize(K.count(p));
        for (std::size_t i = 0; i < cc.size(); ++i)
            cc[i] = static_cast<std::int32_t>(off[i + 1] - off[i]);
    }

    std::vector<std::int64_t> stack;  // (dim << 32) | cell index
    const auto push = [&](int p, std::int64_t i) {
        stack.push_back((static_cast<std::int64_t>(p) << 32) | i);
    };
    const auto drop_cell = [&](int p, std::int64_t i) {
        alive[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] = 0;
        if (p < limit) {
            const auto& off = coff[static_cast<std::size_t>(p)];
            const auto& dat = cdat[static_cast<std::size_t>(p)];
            auto& fc = fcnt[static_cast<std::size_t>(p) + 1];
            const auto& al = alive[static_cast<std::size_t>(p) + 1];
            for (std::int64_t k = off[static_cast<std::size_t>(i)];
                 k < off[static_cast<std::size_t>(i) + 1]; ++k) {
                const std::int32_t c = dat[static_cast<std::size_t>(k)];
                if (al[static_cast<std::size_t>(c)] && --fc[static_cast<std::size_t>(c)] == 1)
                    push(p + 1, c);
            }
        }
        if (p >= 1) {
            const std::size_t stride = static_cast<std::size_t>(p + 1);
            const std::int32_t* fp =
                faces[static_cast<std::size_t>(p)].data() + static_cast<std::size_t>(i) * stride;
            auto& cc = ccnt[static_cast<std::size_t>(p) - 1];
            const auto& al = alive[static_cast<std::size_t>(p) - 1];
            for (std::size_t j = 0; j < stride; ++j) {
                const std::int32_t f = fp[j];
                if (al[static_cast<std::size_t>(f)] && --cc[static_cast<std::size_t>(f)] == 1)
                    push(p - 1, f);
            }
        }
    };

    // One seed vertex per component (the union-by-min roots of the 1-skeleton).
    {
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
        if (limit >= 1) {
            const auto& fe = faces[1];
            for (std::size_t e = 0; e < K.count(1); ++e) {
                std::int32_t a = find(fe[e * 2]);
                std::int32_t b = find(fe[e * 2 + 1]);
                if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
            }
        }
        for (std::size_t v = 0; v < n; ++v)
            if (parent[v] == static_cast<std::int32_t>(v)) {
                ++out.components;
                drop_cell(0, static_cast<std::int64_t>(v));
            }
    }
    // Pre-existing free faces enter the cascade as well.
    for (int p = 0; p < limit; ++p)
        for (std::size_t i = 0; i < K.count(p); ++i)
            if (alive[static_cast<std::size_t>(p)][i] &&
                ccnt[static_cast<std::size_t>(p)][i] == 1)
                push(p, static_cast<std::int64_t>(i));

    while (!stack.empty()) {
        const std::int64_t packed = stack.back();
        stack.pop_back();
        const int q = static_cast<int>(packed >> 32);
        const std::int64_t i = packed & 0xffffffff;
        if (!alive[static_cast<std::size_t>(q)][static_cast<std::size_t>(i)]) continue;
        if (q >= 1 && fcnt[static_cast<std::size_t>(q)][static_cast<std::size_t>(i)] == 1) {
            const std::size_t stride = static_cast<std::size_t>(q + 1);
            const std::int32_t* fp =
                faces[static_cast<std::size_t>(q)].data() + static_cast<std::size_t>(i) * stride;
            std::int64_t a = -1;
            for (std::size_t j = 0; j < stride; ++j)
                if (alive[static_cast<std::size_t>(q) - 1][static_cast<std::size_t>(fp[j])]) {
                    a = fp[j];
                    break;
                }
            if (a < 0) throw std::logic_error("coreduction: face bookkeeping out of sync");
            drop_cell(q, i);
            drop_cell(q - 1, a);
            continue;
        }
        if (q < limit && ccnt[static_cast<std::size_t>(q)][static_cast<std::size_t>(i)] == 1) {
            const auto& off = coff[static_cast<std::size_t>(q)];
            const auto& dat = cdat[static_cast<std::size_t>(q)];
            std::int64_t b = -1;
            for (std::int64_t k = off[static_cast<std::size_t>(i)];
                 k < off[static_cast<std::size_t>(i) + 1]; ++k)
                if (alive[static_cast<std::size_t>(q) + 1][static_cast<std::size_t>(
                        dat[static_cast<std::size_t>(k)])]) {
                    b = dat[static_cast<std::size_t>(k)];
                    break;
                }
            if (b < 0) throw std::logic_error("coreduction: coface bookkeeping out of sync");
            drop_cell(q + 1, b);
            drop_cell(q, i);
        }
    }

    // Compact the survivors and restrict the boundary maps to them.
    std::vector<std::vector<std::int32_t>> newidx(static_cast<std::size_t>(limit) + 1);
    for (int p = 0; p <= limit; ++p) {
        const auto& al = alive[static_cast<std::size_t>(p)];
        auto& ni = newidx[static_cast<std::size_t>(p)];
        ni.assign(al.size(), -1);
        std::int32_t next = 0;
        for (std::size_t i = 0; i < al.size(); ++i)
            if (al[i]) ni[i] = next++;
        out.critical[static_cast<std::size_t>(p)] = next;
    }
    for (int p = 1; p <= limit; ++p) {
        const std::size_t stride = static_cast<std::size_t>(p + 1);
        const auto& fp = faces[static_cast<std::size_t>(p)];
        const auto& al = alive[static_cast<std::size_t>(p)];
        const auto& lo = newidx[static_cast<std::size_t>(p) - 1];
        const auto& hi = newidx[static_cast<std::size_t>(p)];
        auto& bd = out.boundary[static_cast<std::size_t>(p)];
        for (std::size_t i = 0; i < al.size(); ++i) {
            if (!al[i]) continue;
            std::int64_t sign = 1;
            for (std::size_t j = 0; j < stride; ++j) {
                const std::int32_t f = fp[i * stride + j];
                if (lo[static_cast<std::size_t>(f)] >= 0)
                    bd.push_back({lo[static_cast<std::size_t>(f)], hi[i], sign});
                sign = -sign;
            }
        }
    }
    while (!out.critical.empty() && out.critical.back() == 0 &&
           static_cast<int>(out.critical.size()) - 1 > 0 && out.boundary.back().empty()) {
        out.critical.pop_back();
        out.boundary.pop_back();
    }
    return out;
}

}  // namespace confspace
