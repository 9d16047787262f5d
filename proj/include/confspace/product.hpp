#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "confspace/complex.hpp"

namespace confspace {

/**
 * The n-fold ordered product of a complex, presented without triangulating
 * by hand: a q-simplex is a strictly increasing sequence of q+1 rows
 * (n-tuples of base vertices) that weakly increases in every column, such
 * that each column's value set spans a simplex of the base. Rows are packed
 * into integer codes in base V, most significant coordinate first, so code
 * order agrees with lexicographic row order.
 */
class ProductComplex {
  public:
    ProductComplex(SimplicialComplex base, int n) : X_(std::move(base)), n_(n) {
        if (n_ < 1) throw std::invalid_argument("product: need at least one factor");
        V_ = static_cast<std::int64_t>(X_.num_vertices());
        if (V_ == 0) throw std::invalid_argument("product: empty base complex");
        if (V_ > 31) throw std::invalid_argument("product: base complex has too many vertices");
        pow_.assign(static_cast<std::size_t>(n_) + 1, 1);
        for (int i = 1; i <= n_; ++i)
            pow_[static_cast<std::size_t>(i)] = pow_[static_cast<std::size_t>(i - 1)] * V_;
        for (const Simplex& s : X_.all_simplices()) {
            std::uint32_t m = 0;
            for (Vertex v : s) m |= (1u << v);
            masks_.insert(m);
        }
    }

    const SimplicialComplex& base() const { return X_; }
    int copies() const { return n_; }
    std::int64_t vertex_count() const { return pow_[static_cast<std::size_t>(n_)]; }

    std::vector<Vertex> decode(std::int64_t code) const {
        std::vector<Vertex> row(static_cast<std::size_t>(n_));
        for (int i = n_ - 1; i >= 0; --i) {
            row[static_cast<std::size_t>(i)] = static_cast<Vertex>(code % V_);
            code /= V_;
        }
        return row;
    }

    std::int64_t encode(std::span<const Vertex> row) const {
        std::int64_t code = 0;
        for (int i = 0; i < n_; ++i) {
            const Vertex v = row[static_cast<std::size_t>(i)];
            if (v < 0 || v >= V_) throw std::invalid_argument("product: vertex out of range");
            code = code * V_ + v;
        }
        return code;
    }

    std::string row_label(std::int64_t code) const {
        const auto row = decode(code);
        std::string out;
        for (int i = 0; i < n_; ++i) {
            if (i) out += '|';
            out += X_.label(row[static_cast<std::size_t>(i)]);
        }
        return out;
    }

    /// Full membership test for an ascending code sequence.
    bool is_simplex(std::span<const std::int64_t> rows) const {
        if (rows.empty()) return false;
        std::vector<std::vector<Vertex>> mat;
        mat.reserve(rows.size());
        for (std::int64_t code : rows) {
            if (code < 0 || code >= vertex_count()) return false;
            mat.push_back(decode(code));
        }
        for (std::size_t t = 1; t < mat.size(); ++t) {
            if (rows[t] <= rows[t - 1]) return false;
            for (int k = 0; k < n_; ++k)
                if (mat[t][static_cast<std::size_t>(k)] < mat[t - 1][static_cast<std::size_t>(k)])
                    return false;
        }
        for (int k = 0; k < n_; ++k) {
            std::uint32_t m = 0;
            for (const auto& row : mat) m |= (1u << row[static_cast<std::size_t>(k)]);
            if (!masks_.count(m)) return false;
        }
        return true;
    }

    /// Size of the largest family of columns that are pairwise identical as
    /// value sequences over the given rows.
    int max_equal_column_group(std::span<const std::int64_t> rows) const {
        std::vector<std::vector<Vertex>> mat;
        mat.reserve(rows.size());
        for (std::int64_t code : rows) mat.push_back(decode(code));
        int best = 0;
        std::vector<char> grouped(static_cast<std::size_t>(n_), 0);
        for (int i = 0; i < n_; ++i) {
            if (grouped[static_cast<std::size_t>(i)]) continue;
            int size = 1;
            for (int j = i + 1; j < n_; ++j) {
                if (grouped[static_cast<std::size_t>(j)]) continue;
                bool same = true;
                for (const auto& row : mat)
                    if (row[static_cast<std::size_t>(i)] != row[static_cast<std::size_t>(j)]) {
                        same = false;
                        break;
                    }
                if (same) {
                    grouped[static_cast<std::size_t>(j)] = 1;
                    ++size;
                }
            }
            if (size > best) best = size;
        }
        return best;
    }

    /// A simplex lies d+1 deep in the diagonal when some d+1 coordinates
    /// agree along all of its rows.
    bool in_fat_diagonal(std::span<const std::int64_t> rows, int d) const {
        return max_equal_column_group(rows) >= d + 1;
    }

    /**
     * Depth-first enumeration of all product simplices in lexicographic
     * order of their ascending row-code sequences; every emitted path of
     * length q+1 is a q-simplex. With max_dim >= 0 the recursion stops at
     * that dimension. Throws std::length_error past `budget` simplices.
     */
    template <class Fn>
    void enumerate(int max_dim, std::size_t budget, Fn&& emit) const {
        std::vector<std::int64_t> rows;
        std::vector<std::uint32_t> colmask(static_cast<std::size_t>(n_), 0);
        std::vector<Vertex> last(static_cast<std::size_t>(n_), 0);
        std::size_t emitted = 0;
        enumerate_from(max_dim, budget, emit, rows, colmask, last, emitted);
    }

  private:
    template <class Fn>
    void enumerate_from(int max_dim, std::size_t budget, Fn& emit, std::vector<std::int64_t>& rows,
                        std::vector<std::uint32_t>& colmask, std::vector<Vertex>& last,
                        std::size_t& emitted) const {
        if (max_dim >= 0 && static_cast<int>(rows.size()) == max_dim + 1) return;

        // Per-column continuations: values not below the current one whose
        // addition keeps the column spanning a simplex of the base.
        std::vector<std::vector<Vertex>> cand(static_cast<std::size_t>(n_));
        const bool first = rows.empty();
        for (int k = 0; k < n_; ++k) {
            const Vertex lo = first ? 0 : last[static_cast<std::size_t>(k)];
            for (Vertex v = lo; v < static_cast<Vertex>(V_); ++v)
                if (masks_.count(colmask[static_cast<std::size_t>(k)] | (1u << v)))
                    cand[static_cast<std::size_t>(k)].push_back(v);
            if (cand[static_cast<std::size_t>(k)].empty()) return;
        }

        std::vector<std::size_t> idx(static_cast<std::size_t>(n_), 0);
        std::vector<Vertex> row(static_cast<std::size_t>(n_));
        for (;;) {
            for (int k = 0; k < n_; ++k)
                row[static_cast<std::size_t>(k)] =
                    cand[static_cast<std::size_t>(k)][idx[static_cast<std::size_t>(k)]];
            const std::int64_t code = encode(row);
            if (first || code != rows.back()) {
                if (++emitted > budget)
                    throw std::length_error("product enumeration budget exceeded");
                rows.push_back(code);
                std::vector<std::uint32_t> saved_mask = colmask;
                std::vector<Vertex> saved_last = last;
                for (int k = 0; k < n_; ++k) {
                    colmask[static_cast<std::size_t>(k)] |= (1u << row[static_cast<std::size_t>(k)]);
                    last[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(k)];
                }
                emit(static_cast<const std::vector<std::int64_t>&>(rows));
                enumerate_from(max_dim, budget, emit, rows, colmask, last, emitted);
                colmask = std::move(saved_mask);
                last = std::move(saved_last);
                rows.pop_back();
            }
            int k = n_ - 1;
            while (k >= 0 && ++idx[static_cast<std::size_t>(k)] ==
                                 cand[static_cast<std::size_t>(k)].size()) {
                idx[static_cast<std::size_t>(k)] = 0;
                --k;
            }
            if (k < 0) break;
        }
    }

    SimplicialComplex X_;
    int n_;
    std::int64_t V_ = 0;
    std::vector<std::int64_t> pow_;
    std::unordered_set<std::uint32_t> masks_;
};

/**
 * Explicit product complex with the full code vertex table; vertex labels
 * join base labels with '|'. Intended for small bases, guarded by `budget`.
 */
inline SimplicialComplex product_complex(const SimplicialComplex& X, int n, int max_dim = -1,
                                         std::size_t budget = 2000000) {
    ProductComplex P(X, n);
    if (static_cast<std::size_t>(P.vertex_count()) > budget)
        throw std::length_error("product enumeration budget exceeded");
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(P.vertex_count()));
    for (std::int64_t c = 0; c < P.vertex_count(); ++c) labels.push_back(P.row_label(c));

    std::vector<Simplex> simplices;
    P.enumerate(max_dim, budget, [&](const std::vector<std::int64_t>& rows) {
        Simplex s;
        s.reserve(rows.size());
        for (std::int64_t c : rows) s.push_back(static_cast<Vertex>(c));
        simplices.push_back(std::move(s));
    });
    return SimplicialComplex::from_simplices_unchecked(std::move(labels), simplices,
                                                       X.name() + "^" + std::to_string(n));
}

/// Subcomplex of simplices lying d+1 deep in the diagonal. `product` must be
/// the explicit complex built by product_complex over the same generator.
inline Subcomplex fat_diagonal(const ProductComplex& P, const SimplicialComplex& product, int d) {
    if (product.num_vertices() != P.vertex_count())
        throw std::invalid_argument("fat_diagonal: complex does not match the product generator");
    std::vector<Simplex> keep;
    for (const Simplex& s : product.all_simplices()) {
        std::vector<std::int64_t> rows(s.begin(), s.end());
        if (P.in_fat_diagonal(rows, d)) keep.push_back(s);
    }
    return Subcomplex::make(product, keep);
}

/// Code permutations induced by the adjacent coordinate transpositions;
/// together they generate the full coordinate symmetry of the product.
inline std::vector<std::vector<Vertex>> coordinate_transpositions(const ProductComplex& P) {
    const int n = P.copies();
    std::vector<std::vector<Vertex>> gens;
    if (static_cast<std::size_t>(P.vertex_count()) >
        static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
        throw std::length_error("coordinate action: vertex table too large");
    for (int t = 0; t + 1 < n; ++t) {
        std::vector<Vertex> perm(static_cast<std::size_t>(P.vertex_count()));
        for (std::int64_t c = 0; c < P.vertex_count(); ++c) {
            auto row = P.decode(c);
            std::swap(row[static_cast<std::size_t>(t)], row[static_cast<std::size_t>(t + 1)]);
            perm[static_cast<std::size_t>(c)] = static_cast<Vertex>(P.encode(row));
        }
        gens.push_back(std::move(perm));
    }
    return gens;
}

}  // namespace confspace
