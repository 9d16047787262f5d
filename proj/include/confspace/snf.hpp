#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace confspace {

using BigInt = boost::multiprecision::cpp_int;

struct MatrixEntry {
    std::int64_t row = 0;
    std::int64_t col = 0;
    std::int64_t value = 0;
};

/**
 * Invariant factors of an integer matrix. `rank` counts the nonzero
 * diagonal entries of the Smith form; `nontrivial_factors` lists those
 * greater than 1, in divisibility order. used_bigint reports that 64-bit
 * arithmetic overflowed and the computation was redone exactly.
 */
struct SmithResult {
    std::int64_t rank = 0;
    std::vector<std::int64_t> nontrivial_factors;
    bool used_bigint = false;
};

namespace detail {

struct ArithmeticOverflow {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow{};
    return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow{};
    return r;
}

template <class T>
T value_mul(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, std::int64_t>)
        return checked_mul(a, b);
    else
        return a * b;
}
template <class T>
T value_add(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, std::int64_t>)
        return checked_add(a, b);
    else
        return a + b;
}
template <class T>
T value_neg(const T& a) {
    if constexpr (std::is_same_v<T, std::int64_t>) {
        std::int64_t r = 0;
        if (__builtin_sub_overflow(std::int64_t{0}, a, &r)) throw ArithmeticOverflow{};
        return r;
    } else {
        return -a;
    }
}
template <class T>
bool is_unit(const T& v) {
    return v == 1 || v == -1;
}

}  // namespace detail

/// Dense matrix over arbitrary-precision integers, used by the dense Smith
/// routine, the Bareiss rank cross-check, and the transform-tracking API.
struct DenseMatrix {
    std::int64_t n_rows = 0;
    std::int64_t n_cols = 0;
    std::vector<BigInt> data;

    DenseMatrix() = default;
    DenseMatrix(std::int64_t r, std::int64_t c)
        : n_rows(r), n_cols(c), data(static_cast<std::size_t>(r * c)) {}

    BigInt& at(std::int64_t i, std::int64_t j) {
        return data[static_cast<std::size_t>(i * n_cols + j)];
    }
    const BigInt& at(std::int64_t i, std::int64_t j) const {
        return data[static_cast<std::size_t>(i * n_cols + j)];
    }

    static DenseMatrix identity(std::int64_t n) {
        DenseMatrix m(n, n);
        for (std::int64_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static DenseMatrix from_entries(std::int64_t r, std::int64_t c,
                                    const std::vector<MatrixEntry>& entries) {
        DenseMatrix m(r, c);
        for (const auto& e : entries) {
            if (e.row < 0 || e.row >= r || e.col < 0 || e.col >= c)
                throw std::invalid_argument("matrix entry out of range");
            m.at(e.row, e.col) += e.value;
        }
        return m;
    }

    DenseMatrix multiply(const DenseMatrix& other) const {
        if (n_cols != other.n_rows) throw std::invalid_argument("dimension mismatch");
        DenseMatrix out(n_rows, other.n_cols);
        for (std::int64_t i = 0; i < n_rows; ++i)
            for (std::int64_t k = 0; k < n_cols; ++k) {
                const BigInt& v = at(i, k);
                if (v == 0) continue;
                for (std::int64_t j = 0; j < other.n_cols; ++j)
                    out.at(i, j) += v * other.at(k, j);
            }
        return out;
    }

    bool operator==(const DenseMatrix& o) const {
        return n_rows == o.n_rows && n_cols == o.n_cols && data == o.data;
    }
};

struct DenseSmithResult {
    std::vector<BigInt> diagonal;  // length min(rows, cols), zeros included
    std::int64_t rank = 0;
    bool with_transforms = false;
    DenseMatrix U;  // U * A * V has the diagonal above
    DenseMatrix V;
};

/// Full Smith normal form of a dense matrix, optionally tracking the
/// unimodular transforms.
inline DenseSmithResult dense_smith(DenseMatrix A, bool with_transforms = false) {
    const std::int64_t R = A.n_rows, C = A.n_cols;
    DenseSmithResult res;
    res.with_transforms = with_transforms;
    if (with_transforms) {
        res.U = DenseMatrix::identity(R);
        res.V = DenseMatrix::identity(C);
    }
    DenseMatrix& U = res.U;
    DenseMatrix& V = res.V;

    auto swap_rows = [&](std::int64_t a, std::int64_t b) {
        if (a == b) return;
        for (std::int64_t j = 0; j < C; ++j) std::swap(A.at(a, j), A.at(b, j));
        if (with_transforms)
            for (std::int64_t j = 0; j < R; ++j) std::swap(U.at(a, j), U.at(b, j));
    };
    auto swap_cols = [&](std::int64_t a, std::int64_t b) {
        if (a == b) return;
        for (std::int64_t i = 0; i < R; ++i) std::swap(A.at(i, a), A.at(i, b));
        if (with_transforms)
            for (std::int64_t i = 0; i < C; ++i) std::swap(V.at(i, a), V.at(i, b));
    };
    auto row_sub = [&](std::int64_t a, std::int64_t b, const BigInt& q) {
        if (q == 0) return;
        for (std::int64_t j = 0; j < C; ++j) A.at(a, j) -= q * A.at(b, j);
        if (with_transforms)
            for (std::int64_t j = 0; j < R; ++j) U.at(a, j) -= q * U.at(b, j);
    };
    auto col_sub = [&](std::int64_t a, std::int64_t b, const BigInt& q) {
        if (q == 0) return;
        for (std::int64_t i = 0; i < R; ++i) A.at(i, a) -= q * A.at(i, b);
        if (with_transforms)
            for (std::int64_t i = 0; i < C; ++i) V.at(i, a) -= q * V.at(i, b);
    };
    auto negate_row = [&](std::int64_t a) {
        for (std::int64_t j = 0; j < C; ++j) A.at(a, j) = -A.at(a, j);
        if (with_transforms)
            for (std::int64_t j = 0; j < R; ++j) U.at(a, j) = -U.at(a, j);
    };

    const std::int64_t bound = std::min(R, C);
    std::int64_t t = 0;
    while (t < bound) {
        std::int64_t bi = -1, bj = -1;
        BigInt best;
        for (std::int64_t i = t; i < R; ++i)
            for (std::int64_t j = t; j < C; ++j) {
                const BigInt& v = A.at(i, j);
                if (v == 0) continue;
                BigInt a = v < 0 ? BigInt(-v) : v;
                if (bi < 0 || a < best) {
                    best = a;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break;
        swap_rows(t, bi);
        swap_cols(t, bj);

        for (;;) {
            bool again = false;
            for (std::int64_t i = t + 1; i < R; ++i) {
                if (A.at(i, t) == 0) continue;
                BigInt q = A.at(i, t) / A.at(t, t);
                row_sub(i, t, q);
                if (A.at(i, t) != 0) {
                    swap_rows(t, i);
                    again = true;
                    break;
                }
            }
            if (again) continue;
            for (std::int64_t j = t + 1; j < C; ++j) {
                if (A.at(t, j) == 0) continue;
                BigInt q = A.at(t, j) / A.at(t, t);
                col_sub(j, t, q);
                if (A.at(t, j) != 0) {
                    swap_cols(t, j);
                    again = true;
                    break;
                }
            }
            if (again) continue;
            bool fixed = false;
            for (std::int64_t i = t + 1; i < R && !fixed; ++i)
                for (std::int64_t j = t + 1; j < C && !fixed; ++j)
                    if (A.at(i, j) % A.at(t, t) != 0) {
                        row_sub(t, i, BigInt(-1));
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (A.at(t, t) < 0) negate_row(t);
        ++t;
    }
    res.rank = t;
    res.diagonal.resize(static_cast<std::size_t>(bound));
    for (std::int64_t k = 0; k < bound; ++k) res.diagonal[static_cast<std::size_t>(k)] = A.at(k, k);
    return res;
}

/// Rank by fraction-free elimination; an independent cross-check for the
/// Smith pipeline on small matrices.
inline std::int64_t bareiss_rank(DenseMatrix A) {
    const std::int64_t R = A.n_rows, C = A.n_cols;
    BigInt prev = 1;
    std::int64_t rank = 0;
    for (std::int64_t k = 0; k < std::min(R, C); ++k) {
        std::int64_t bi = -1, bj = -1;
        BigInt best;
        for (std::int64_t i = k; i < R; ++i)
            for (std::int64_t j = k; j < C; ++j) {
                const BigInt& v = A.at(i, j);
                if (v == 0) continue;
                BigInt a = v < 0 ? BigInt(-v) : v;
                if (bi < 0 || a < best) {
                    best = a;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break;
        if (bi != k)
            for (std::int64_t j = 0; j < C; ++j) std::swap(A.at(k, j), A.at(bi, j));
        if (bj != k)
            for (std::int64_t i = 0; i < R; ++i) std::swap(A.at(i, k), A.at(i, bj));
        for (std::int64_t i = k + 1; i < R; ++i)
            for (std::int64_t j = k + 1; j < C; ++j)
                A.at(i, j) = (A.at(k, k) * A.at(i, j) - A.at(i, k) * A.at(k, j)) / prev;
        prev = A.at(k, k);
        ++rank;
    }
    return rank;
}

/// Determinant of a square matrix by the same fraction-free scheme.
inline BigInt bareiss_determinant(DenseMatrix A) {
    if (A.n_rows != A.n_cols) throw std::invalid_argument("determinant of non-square matrix");
    const std::int64_t N = A.n_rows;
    if (N == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::int64_t k = 0; k < N; ++k) {
        std::int64_t bi = -1;
        for (std::int64_t i = k; i < N && bi < 0; ++i)
            if (A.at(i, k) != 0) bi = i;
        if (bi < 0) return 0;
        if (bi != k) {
            for (std::int64_t j = 0; j < N; ++j) std::swap(A.at(k, j), A.at(bi, j));
            sign = -sign;
        }
        for (std::int64_t i = k + 1; i < N; ++i)
            for (std::int64_t j = k + 1; j < N; ++j)
                A.at(i, j) = (A.at(k, k) * A.at(i, j) - A.at(i, k) * A.at(k, j)) / prev;
        prev = A.at(k, k);
    }
    return sign > 0 ? A.at(N - 1, N - 1) : BigInt(-A.at(N - 1, N - 1));
}

namespace detail {

/**
 * Sparse elimination on unit pivots. Pivots of value +-1 are chosen by
 * Markowitz cost through a lazily revalidated heap; each pivot clears its
 * column with row operations, after which its row can simply be dropped
 * (the implied column operations touch nothing else). Unit pivots are
 * unimodular moves, so they contribute invariant factor 1 and the Smith
 * form of the remainder is computed densely.
 */
template <class T>
SmithResult smith_core(std::int64_t n_rows, std::int64_t n_cols,
                       const std::vector<MatrixEntry>& entries) {
    if (n_rows < 0 || n_cols < 0) throw std::invalid_argument("negative matrix dimension");
    using Entry = std::pair<std::int32_t, T>;

    std::vector<std::tuple<std::int32_t, std::int32_t, std::int64_t>> trip;
    trip.reserve(entries.size());
    for (const auto& e : entries) {
        if (e.row < 0 || e.row >= n_rows || e.col < 0 || e.col >= n_cols)
            throw std::invalid_argument("matrix entry out of range");
        if (e.value != 0)
            trip.emplace_back(static_cast<std::int32_t>(e.row), static_cast<std::int32_t>(e.col),
                              e.value);
    }
    std::sort(trip.begin(), trip.end(),
              [](const auto& a, const auto& b) {
                  return std::tie(std::get<0>(a), std::get<1>(a)) <
                         std::tie(std::get<0>(b), std::get<1>(b));
              });

    std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(n_rows));
    std::vector<std::vector<std::int32_t>> col_rows(static_cast<std::size_t>(n_cols));
    std::vector<std::int64_t> col_nnz(static_cast<std::size_t>(n_cols), 0);
    std::vector<char> row_alive(static_cast<std::size_t>(n_rows), 1);
    std::vector<char> col_alive(static_cast<std::size_t>(n_cols), 1);

    for (std::size_t k = 0; k < trip.size();) {
        std::size_t m = k;
        T acc = 0;
        const std::int32_t r = std::get<0>(trip[k]);
        const std::int32_t c = std::get<1>(trip[k]);
        while (m < trip.size() && std::get<0>(trip[m]) == r && std::get<1>(trip[m]) == c) {
            acc = value_add(acc, T(std::get<2>(trip[m])));
            ++m;
        }
        if (acc != 0) {
            rows[static_cast<std::size_t>(r)].emplace_back(c, acc);
            col_rows[static_cast<std::size_t>(c)].push_back(r);
            col_nnz[static_cast<std::size_t>(c)]++;
        }
        k = m;
    }

    // Min-heap of (markowitz cost, row, col); entries are revalidated on pop.
    using HeapItem = std::tuple<std::int64_t, std::int32_t, std::int32_t>;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap;
    auto cost_of = [&](std::int32_t r, std::int32_t c) {
        return (static_cast<std::int64_t>(rows[static_cast<std::size_t>(r)].size()) - 1) *
               (col_nnz[static_cast<std::size_t>(c)] - 1);
    };
    for (std::int32_t r = 0; r < static_cast<std::int32_t>(n_rows); ++r)
        for (const auto& [c, v] : rows[static_cast<std::size_t>(r)])
            if (is_unit(v)) heap.emplace(cost_of(r, c), r, c);

    auto find_entry = [&](std::int32_t r, std::int32_t c) -> const T* {
        const auto& row = rows[static_cast<std::size_t>(r)];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::int32_t key) { return e.first < key; });
        if (it == row.end() || it->first != c) return nullptr;
        return &it->second;
    };

    std::int64_t unit_pivots = 0;
    std::vector<Entry> scratch;
    std::vector<std::pair<std::int32_t, std::int32_t>> new_units;

    // target <- target + g * pivot_row
    auto axpy = [&](std::int32_t target, const T& g, const std::vector<Entry>& pivot_row) {
        auto& row = rows[static_cast<std::size_t>(target)];
        scratch.clear();
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < pivot_row.size()) {
            if (j == pivot_row.size() ||
                (i < row.size() && row[i].first < pivot_row[j].first)) {
                scratch.push_back(row[i]);
                ++i;
            } else if (i == row.size() || row[i].first > pivot_row[j].first) {
                const std::int32_t c = pivot_row[j].first;
                T nv = value_mul(g, pivot_row[j].second);
                scratch.emplace_back(c, nv);
                col_nnz[static_cast<std::size_t>(c)]++;
                col_rows[static_cast<std::size_t>(c)].push_back(target);
                if (is_unit(nv)) new_units.emplace_back(target, c);
                ++j;
            } else {
                const std::int32_t c = row[i].first;
                T nv = value_add(row[i].second, value_mul(g, pivot_row[j].second));
                if (nv != 0) {
                    scratch.emplace_back(c, nv);
                    if (is_unit(nv) && !is_unit(row[i].second)) new_units.emplace_back(target, c);
                } else {
                    col_nnz[static_cast<std::size_t>(c)]--;
                }
                ++i;
                ++j;
            }
        }
        row.swap(scratch);
    };

    for (;;) {
        while (!heap.empty()) {
            auto [cost, r, c] = heap.top();
            heap.pop();
            if (!row_alive[static_cast<std::size_t>(r)] || !col_alive[static_cast<std::size_t>(c)])
                continue;
            const T* pv = find_entry(r, c);
            if (pv == nullptr || !is_unit(*pv)) continue;
            const std::int64_t fresh = cost_of(r, c);
            if (fresh > cost) {
                heap.emplace(fresh, r, c);
                continue;
            }
            const T v = *pv;

            // Clear column c with row operations.
            std::vector<std::int32_t> targets;
            targets.reserve(static_cast<std::size_t>(col_nnz[static_cast<std::size_t>(c)]));
            auto& clist = col_rows[static_cast<std::size_t>(c)];
            for (std::int32_t rr : clist) {
                if (rr == r || !row_alive[static_cast<std::size_t>(rr)]) continue;
                if (find_entry(rr, c) != nullptr) targets.push_back(rr);
            }
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

            const std::vector<Entry> pivot_row = rows[static_cast<std::size_t>(r)];
            new_units.clear();
            for (std::int32_t rr : targets) {
                const T* a = find_entry(rr, c);
                if (a == nullptr) continue;
                // Subtract (a / v) times the pivot row; v is a unit so the
                // quotient is a * v.
                axpy(rr, value_neg(value_mul(*a, v)), pivot_row);
            }

            // Drop the pivot row; clearing it would be column operations that
            // change nothing outside the dead row.
            for (const auto& [cc, vv] : rows[static_cast<std::size_t>(r)])
                col_nnz[static_cast<std::size_t>(cc)]--;
            rows[static_cast<std::size_t>(r)].clear();
            rows[static_cast<std::size_t>(r)].shrink_to_fit();
            row_alive[static_cast<std::size_t>(r)] = 0;
            col_alive[static_cast<std::size_t>(c)] = 0;
            clist.clear();
            clist.shrink_to_fit();
            ++unit_pivots;

            for (auto [rr, cc] : new_units)
                if (row_alive[static_cast<std::size_t>(rr)] &&
                    col_alive[static_cast<std::size_t>(cc)])
                    heap.emplace(cost_of(rr, cc), rr, cc);
        }

        // Safety net: any live unit entry missing from the heap re-arms it.
        bool rearmed = false;
        for (std::int32_t r = 0; r < static_cast<std::int32_t>(n_rows) && !rearmed; ++r) {
            if (!row_alive[static_cast<std::size_t>(r)]) continue;
            for (const auto& [c, v] : rows[static_cast<std::size_t>(r)])
                if (col_alive[static_cast<std::size_t>(c)] && is_unit(v)) {
                    heap.emplace(cost_of(r, c), r, c);
                    rearmed = true;
                    break;
                }
        }
        if (!rearmed) break;
    }

    // Residual: whatever survived carries the interesting invariant factors.
    std::vector<std::int32_t> live_rows;
    for (std::int32_t r = 0; r < static_cast<std::int32_t>(n_rows); ++r)
        if (row_alive[static_cast<std::size_t>(r)] && !rows[static_cast<std::size_t>(r)].empty())
            live_rows.push_back(r);
    std::vector<std::int32_t> live_cols;
    {
        std::vector<char> seen(static_cast<std::size_t>(n_cols), 0);
        for (std::int32_t r : live_rows)
            for (const auto& [c, v] : rows[static_cast<std::size_t>(r)]) {
                if (!col_alive[static_cast<std::size_t>(c)])
                    throw std::logic_error("smith: live entry in dead column");
                seen[static_cast<std::size_t>(c)] = 1;
            }
        for (std::int32_t c = 0; c < static_cast<std::int32_t>(n_cols); ++c)
            if (seen[static_cast<std::size_t>(c)]) live_cols.push_back(c);
    }

    SmithResult result;
    result.rank = unit_pivots;
    if (!live_rows.empty()) {
        if (live_rows.size() > 3000 || live_cols.size() > 3000)
            throw std::runtime_error("smith: residual after unit pivots is too large");
        DenseMatrix M(static_cast<std::int64_t>(live_rows.size()),
                      static_cast<std::int64_t>(live_cols.size()));
        for (std::size_t i = 0; i < live_rows.size(); ++i)
            for (const auto& [c, v] : rows[static_cast<std::size_t>(live_rows[i])]) {
                const auto jt = std::lower_bound(live_cols.begin(), live_cols.end(), c);
                M.at(static_cast<std::int64_t>(i),
                     static_cast<std::int64_t>(jt - live_cols.begin())) = BigInt(v);
            }
        DenseSmithResult ds = dense_smith(std::move(M), false);
        result.rank += ds.rank;
        for (std::int64_t k = 0; k < ds.rank; ++k) {
            const BigInt& d = ds.diagonal[static_cast<std::size_t>(k)];
            if (d > 1) {
                if (d > BigInt(std::numeric_limits<std::int64_t>::max()))
                    throw std::runtime_error("smith: invariant factor exceeds 64 bits");
                result.nontrivial_factors.push_back(static_cast<std::int64_t>(d));
            }
        }
    }
    return result;
}

}  // namespace detail

/// Smith normal form summary of a sparse integer matrix given by triplets
/// (duplicates are summed). Falls back to exact big-integer arithmetic if
/// 64-bit intermediate values overflow.
inline SmithResult smith_normal_form(std::int64_t n_rows, std::int64_t n_cols,
                                     const std::vector<MatrixEntry>& entries) {
    try {
        return detail::smith_core<std::int64_t>(n_rows, n_cols, entries);
    } catch (const detail::ArithmeticOverflow&) {
        SmithResult r = detail::smith_core<BigInt>(n_rows, n_cols, entries);
        r.used_bigint = true;
        return r;
    }
}

}  // namespace confspace
