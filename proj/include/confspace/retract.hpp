#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "confspace/complex.hpp"
#include "confspace/product.hpp"
#include "confspace/skeletal.hpp"

namespace confspace {

/**
 * Dense id space over the product simplices that stay clear of the deep
 * diagonal: everything except the simplices with d+1 coordinates agreeing
 * along all rows. Ids are dimension-major and lexicographic within each
 * dimension, so the ids of a nested family are ordered by dimension.
 */
class ProductSkeleton {
  public:
    ProductSkeleton(SimplicialComplex X, int n, int d, std::size_t budget = 50000000)
        : P_(std::move(X), n), d_(d) {
        if (d_ < 1) throw std::invalid_argument("diagonal depth must be at least 1");
        P_.enumerate(-1, budget, [&](const std::vector<std::int64_t>& rows) {
            if (P_.in_fat_diagonal(rows, d_)) return;
            const std::size_t q = rows.size() - 1;
            if (simp_.size() <= q) simp_.resize(q + 1);
            simp_[q].insert(simp_[q].end(), rows.begin(), rows.end());
        });
        offset_.assign(simp_.size() + 1, 0);
        for (std::size_t p = 0; p < simp_.size(); ++p)
            offset_[p + 1] = offset_[p] + static_cast<std::int64_t>(count(static_cast<int>(p)));
        if (total() > std::numeric_limits<std::int32_t>::max())
            throw std::length_error("skeleton too large for 32-bit ids");
    }

    const ProductComplex& product() const { return P_; }
    int copies() const { return P_.copies(); }
    int depth() const { return d_; }
    int top_dim() const { return static_cast<int>(simp_.size()) - 1; }

    std::size_t count(int p) const {
        if (p < 0 || p > top_dim()) return 0;
        return simp_[static_cast<std::size_t>(p)].size() / static_cast<std::size_t>(p + 1);
    }
    std::int64_t total() const { return offset_.empty() ? 0 : offset_.back(); }

    int dim_of(std::int64_t id) const {
        for (int p = 0; p <= top_dim(); ++p)
            if (id < offset_[static_cast<std::size_t>(p) + 1]) return p;
        throw std::out_of_range("simplex id out of range");
    }

    std::span<const std::int64_t> rows_of(std::int64_t id) const {
        const int p = dim_of(id);
        const std::size_t i = static_cast<std::size_t>(id - offset_[static_cast<std::size_t>(p)]);
        return {simp_[static_cast<std::size_t>(p)].data() + i * static_cast<std::size_t>(p + 1),
                static_cast<std::size_t>(p + 1)};
    }

    /// Id of an ascending code tuple, or -1 when absent (not a product
    /// simplex, or too deep in the diagonal).
    std::int64_t id_of(std::span<const std::int64_t> rows) const {
        const int p = static_cast<int>(rows.size()) - 1;
        if (p < 0 || p > top_dim()) return -1;
        const auto& layer = simp_[static_cast<std::size_t>(p)];
        const std::size_t stride = static_cast<std::size_t>(p + 1);
        std::int64_t lo = 0, hi = static_cast<std::int64_t>(layer.size() / stride);
        while (lo < hi) {
            const std::int64_t mid = lo + (hi - lo) / 2;
            const std::int64_t* t = layer.data() + static_cast<std::size_t>(mid) * stride;
            int cmp = 0;
            for (std::size_t j = 0; j < stride; ++j)
                if (t[j] != rows[j]) { cmp = t[j] < rows[j] ? -1 : 1; break; }
            if (cmp < 0)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo >= static_cast<std::int64_t>(layer.size() / stride)) return -1;
        const std::int64_t* t = layer.data() + static_cast<std::size_t>(lo) * stride;
        for (std::size_t j = 0; j < stride; ++j)
            if (t[j] != rows[j]) return -1;
        return offset_[static_cast<std::size_t>(p)] + lo;
    }

    std::string label_of(std::int64_t id) const {
        auto rows = rows_of(id);
        std::string out = "{";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) out += ',';
            out += P_.row_label(rows[i]);
        }
        out += '}';
        return out;
    }

    /// Proper faces of `id` that live in the skeleton, ascending.
    std::vector<std::int32_t> allowed_faces(std::int64_t id) const {
        auto rows = rows_of(id);
        const int q = static_cast<int>(rows.size()) - 1;
        std::vector<std::int32_t> out;
        if (q == 0 || q > 30) {
            if (q > 30) throw std::length_error("face enumeration limit");
            return out;
        }
        std::vector<std::int64_t> sub;
        const std::uint32_t full = (1u << (q + 1)) - 1;
        for (std::uint32_t m = 1; m < full; ++m) {
            sub.clear();
            for (int j = 0; j <= q; ++j)
                if (m & (1u << j)) sub.push_back(rows[static_cast<std::size_t>(j)]);
            if (P_.in_fat_diagonal(sub, d_)) continue;
            const std::int64_t f = id_of(sub);
            if (f < 0) throw std::logic_error("face of an allowed simplex is missing");
            out.push_back(static_cast<std::int32_t>(f));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    ProductComplex P_;
    int d_;
    std::vector<std::vector<std::int64_t>> simp_;
    std::vector<std::int64_t> offset_;
};

/**
 * Flag complex of the skeleton: vertices are allowed simplices, q-cells are
 * inclusion chains of q+1 of them. Enumerated through dimension max_dim
 * (everything when max_dim < 0), each chain emitted from its top element by
 * descending over allowed faces. Chains skip dimensions freely, so nothing
 * is lost by never passing through a forbidden face. A keep mask restricts
 * the chains to a subset of the elements (the order complex of the induced
 * subposet); an empty mask keeps everything.
 */
inline SkeletalComplex flag_complex(const ProductSkeleton& S, int max_dim = -1,
                                    std::size_t budget = 600000000,
                                    const std::vector<char>& keep = {}) {
    if (!keep.empty() && keep.size() != static_cast<std::size_t>(S.total()))
        throw std::invalid_argument("flag keep mask must cover every element");
    const auto kept = [&](std::int64_t id) {
        return keep.empty() || keep[static_cast<std::size_t>(id)];
    };
    const int L = max_dim < 0 ? S.top_dim() : std::min(max_dim, S.top_dim());
    SkeletalComplex W;
    W.cells.resize(static_cast<std::size_t>(L) + 1);
    W.complete_up_to = L;
    W.truncated = L < S.top_dim();

    // Face lists are reused across all chains through the same element.
    std::vector<std::vector<std::int32_t>> faces(static_cast<std::size_t>(S.total()));
    for (std::int64_t id = 0; id < S.total(); ++id) {
        if (!kept(id)) continue;
        auto fl = S.allowed_faces(id);
        if (!keep.empty())
            fl.erase(std::remove_if(fl.begin(), fl.end(),
                                    [&](std::int32_t f) { return !kept(f); }),
                     fl.end());
        faces[static_cast<std::size_t>(id)] = std::move(fl);
    }

    std::size_t emitted = 0;
    std::vector<std::int32_t> path;  // descending ids, path[0] is the top
    auto emit = [&](std::size_t len) {
        if (++emitted > budget) throw std::length_error("flag enumeration budget exceeded");
        auto& layer = W.cells[len - 1];
        for (std::size_t i = 0; i < len; ++i) layer.push_back(path[len - 1 - i]);
    };
    struct Frame {
        std::int32_t element;
        std::size_t next = 0;
    };
    std::vector<Frame> stack;
    for (std::int64_t top = 0; top < S.total(); ++top) {
        if (!kept(top)) continue;
        path.assign(1, static_cast<std::int32_t>(top));
        emit(1);
        if (L == 0) continue;
        stack.assign(1, Frame{static_cast<std::int32_t>(top), 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& fl = faces[static_cast<std::size_t>(f.element)];
            if (f.next >= fl.size() || static_cast<int>(path.size()) > L) {
                stack.pop_back();
                path.pop_back();
                continue;
            }
            const std::int32_t child = fl[f.next++];
            path.push_back(child);
            emit(path.size());
            stack.push_back(Frame{child, 0});
        }
        path.clear();
    }
    W.sort_layers();
    while (!W.cells.empty() && W.cells.back().empty()) W.cells.pop_back();
    return W;
}

/**
 * Simplicial model of the ordered configuration-like space: points of X^n
 * with no d+1 coordinates equal, carried by the flag complex of the allowed
 * product simplices.
 */
struct RetractModel {
    std::shared_ptr<const ProductSkeleton> base;
    SkeletalComplex W;
    int flag_dim = -1;  // cells enumerated through this dimension

    /// Explicit labeled complex; vertex i is the allowed simplex with id i.
    SimplicialComplex to_complex(const std::string& name = "delta-model") const {
        std::vector<std::string> labels;
        labels.reserve(static_cast<std::size_t>(base->total()));
        for (std::int64_t id = 0; id < base->total(); ++id) labels.push_back(base->label_of(id));
        std::vector<Simplex> simplices;
        simplices.reserve(W.total_cells());
        for (int p = 0; p <= W.top_dim(); ++p)
            for (std::size_t i = 0; i < W.count(p); ++i) {
                auto t = W.cell(p, i);
                simplices.emplace_back(t.begin(), t.end());
            }
        return SimplicialComplex::from_simplices_unchecked(std::move(labels), simplices, name);
    }
};

inline RetractModel delta_model(const SimplicialComplex& X, int n, int d, int max_dim = -1,
                                std::size_t budget = 600000000) {
    auto base = std::make_shared<const ProductSkeleton>(X, n, d);
    RetractModel M;
    M.W = flag_complex(*base, max_dim, budget);
    M.base = std::move(base);
    M.flag_dim = M.W.complete_up_to;
    return M;
}

/**
 * Core of the allowed-simplex poset under iterated beat-point removal.
 *
 * An element is a beat point when its strict up-set has a minimum or its
 * strict down-set has a maximum; removing one is a strong deformation
 * retraction of the order complex, so the flag complex over the returned
 * mask has the homotopy type of the full model while being dramatically
 * smaller on thick instances. Inclusion order on the row sets is decided
 * with one bitset per element, which caps the usable poset size.
 */
inline std::vector<char> poset_core_mask(const ProductSkeleton& S,
                                         std::int64_t max_elements = 50000) {
    const std::int64_t n = S.total();
    if (n > max_elements) throw std::length_error("poset too large for core reduction");
    std::vector<char> keep(static_cast<std::size_t>(n), 1);
    if (n <= 1) return keep;
    const std::size_t words = static_cast<std::size_t>((n + 63) / 64);

    // up[x] has bit y set iff x < y; down is the transpose. Ids are
    // dimension-major, so the lowest set bit of an up-set is a minimal
    // element and the highest of a down-set a maximal one.
    std::vector<std::uint64_t> up(static_cast<std::size_t>(n) * words, 0);
    std::vector<std::uint64_t> down(static_cast<std::size_t>(n) * words, 0);
    const auto subset = [](std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
        std::size_t j = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            while (j < b.size() && b[j] < a[i]) ++j;
            if (j >= b.size() || b[j] != a[i]) return false;
            ++j;
        }
        return true;
    };
    for (std::int64_t x = 0; x < n; ++x) {
        const auto rx = S.rows_of(x);
        for (std::int64_t y = 0; y < n; ++y) {
            const auto ry = S.rows_of(y);
            if (rx.size() >= ry.size()) continue;
            if (!subset(rx, ry)) continue;
            up[static_cast<std::size_t>(x) * words + static_cast<std::size_t>(y >> 6)] |=
                1ull << (y & 63);
            down[static_cast<std::size_t>(y) * words + static_cast<std::size_t>(x >> 6)] |=
                1ull << (x & 63);
        }
    }

    std::vector<std::uint64_t> alive(words, ~0ull);
    if (n & 63) alive[words - 1] = (1ull << (n & 63)) - 1;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::int64_t x = 0; x < n; ++x) {
            if (!(alive[static_cast<std::size_t>(x >> 6)] >> (x & 63) & 1)) continue;
            bool beat = false;
            for (int dir = 0; dir < 2 && !beat; ++dir) {
                const std::uint64_t* rel =
                    (dir ? down.data() : up.data()) + static_cast<std::size_t>(x) * words;
                // Candidate extremum: the only position a minimum (resp.
                // maximum) of the surviving relation set could occupy.
                std::int64_t cand = -1;
                if (dir == 0) {
                    for (std::size_t w = 0; w < words && cand < 0; ++w)
                        if (const std::uint64_t m = rel[w] & alive[w])
                            cand = static_cast<std::int64_t>(
                                w * 64 + static_cast<std::size_t>(__builtin_ctzll(m)));
                } else {
                    for (std::size_t w = words; w-- > 0 && cand < 0;)
                        if (const std::uint64_t m = rel[w] & alive[w])
                            cand = static_cast<std::int64_t>(
                                w * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(m)));
                }
                if (cand < 0) continue;
                const std::uint64_t* crel =
                    (dir ? down.data() : up.data()) + static_cast<std::size_t>(cand) * words;
                beat = true;
                for (std::size_t w = 0; w < words; ++w) {
                    std::uint64_t covered = crel[w];
                    if (static_cast<std::size_t>(cand >> 6) == w) covered |= 1ull << (cand & 63);
                    if ((rel[w] & alive[w]) & ~covered) {
                        beat = false;
                        break;
                    }
                }
            }
            if (beat) {
                alive[static_cast<std::size_t>(x >> 6)] &= ~(1ull << (x & 63));
                keep[static_cast<std::size_t>(x)] = 0;
                changed = true;
            }
        }
    }
    return keep;
}

/**
 * Homotopy-faithful compression of the ordered model: the flag complex over
 * the beat-point core of the allowed-simplex poset. Same homotopy type as
 * delta_model(X, n, d).W, but small enough to enumerate in full on
 * instances whose raw chain count is out of reach.
 */
struct CoreModel {
    std::shared_ptr<const ProductSkeleton> base;
    std::vector<char> kept;  // elements surviving beat-point removal
    SkeletalComplex W;

    std::int64_t kept_count() const {
        std::int64_t c = 0;
        for (char k : kept) c += k;
        return c;
    }
};

inline CoreModel delta_core_model(const SimplicialComplex& X, int n, int d, int max_dim = -1,
                                  std::size_t budget = 600000000) {
    auto base = std::make_shared<const ProductSkeleton>(X, n, d);
    CoreModel M;
    M.kept = poset_core_mask(*base);
    M.W = flag_complex(*base, max_dim, budget, M.kept);
    M.base = std::move(base);
    return M;
}

/**
 * Restriction compatibility: for a full subcomplex A of X, the model built
 * from A must coincide with the part of the model of X whose chains use
 * only rows with coordinates in A. Verified cell by cell through max_dim.
 */
struct RestrictionReport {
    bool ok = true;
    std::string detail;
    std::int64_t checked = 0;
};

inline RestrictionReport restriction_check(const SimplicialComplex& X,
                                           const std::vector<Vertex>& span_vertices, int n, int d,
                                           int max_dim = 2) {
    RestrictionReport rep;
    const Subcomplex A = full_subcomplex(X, span_vertices);
    const SimplicialComplex Axc = A.as_complex(true);  // same vertex indexing as X

    ProductSkeleton SX(X, n, d);
    ProductSkeleton SA(Axc, n, d);
    const SkeletalComplex WX = flag_complex(SX, max_dim);
    const SkeletalComplex WA = flag_complex(SA, max_dim);

    std::vector<char> in_span(X.num_vertices(), 0);
    for (Vertex v : span_vertices) in_span[static_cast<std::size_t>(v)] = 1;
    const ProductComplex& PX = SX.product();
    auto id_uses_span = [&](std::int32_t id) {
        for (std::int64_t code : SX.rows_of(id))
            for (Vertex v : PX.decode(code))
                if (!in_span[static_cast<std::size_t>(v)]) return false;
        return true;
    };

    const int L = std::max(WX.top_dim(), WA.top_dim());
    for (int p = 0; p <= L && rep.ok; ++p) {
        // Chains of the big model supported on A, in X ids.
        std::vector<std::vector<std::int32_t>> from_X;
        for (std::size_t i = 0; i < WX.count(p); ++i) {
            auto t = WX.cell(p, i);
            bool inside = true;
            for (std::int32_t id : t)
                if (!id_uses_span(id)) { inside = false; break; }
            if (inside) from_X.emplace_back(t.begin(), t.end());
        }
        // Chains of the small model translated into X ids.
        std::vector<std::vector<std::int32_t>> from_A;
        for (std::size_t i = 0; i < WA.count(p); ++i) {
            auto t = WA.cell(p, i);
            std::vector<std::int32_t> xt;
            for (std::int32_t id : t) {
                auto rows = SA.rows_of(id);
                std::vector<std::int64_t> xrows;
                for (std::int64_t code : rows) {
                    auto row = SA.product().decode(code);
                    xrows.push_back(PX.encode(row));
                }
                std::sort(xrows.begin(), xrows.end());
                const std::int64_t xid = SX.id_of(xrows);
                if (xid < 0) {
                    rep.ok = false;
                    rep.detail = "restricted simplex missing from the big model";
                    return rep;
                }
                xt.push_back(static_cast<std::int32_t>(xid));
            }
            std::sort(xt.begin(), xt.end());
            from_A.push_back(std::move(xt));
        }
        std::sort(from_X.begin(), from_X.end());
        std::sort(from_A.begin(), from_A.end());
        if (from_X != from_A) {
            rep.ok = false;
            rep.detail = "models disagree in dimension " + std::to_string(p) + " (" +
                         std::to_string(from_X.size()) + " vs " + std::to_string(from_A.size()) +
                         " cells)";
            return rep;
        }
        rep.checked += static_cast<std::int64_t>(from_X.size());
    }
    return rep;
}

/**
 * Interval-fiber model over the (n-1)-simplex: the barycentric subdivision
 * with the open star of every barycenter removed whose face misses at least
 * d cyclically consecutive coordinates. What remains is the full subcomplex
 * on the other barycenters.
 */
struct IntervalFiberModel {
    SimplicialComplex subdivision;
    std::vector<Vertex> forbidden;  // barycenter vertices of the subdivision
    SimplicialComplex model;
};

inline IntervalFiberModel simplex_interval_model(int n, int d) {
    if (n < 2 || n > 7) throw std::invalid_argument("interval fiber model: n out of range");
    if (d < 1) throw std::invalid_argument("interval fiber model: d must be positive");
    const SimplicialComplex simplex = [&] {
        std::vector<std::string> labels;
        for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
        std::vector<Simplex> facets(1);
        for (int i = 0; i < n; ++i) facets[0].push_back(i);
        return SimplicialComplex::from_facets(std::move(labels), facets, "simplex");
    }();
    IntervalFiberModel out;
    out.subdivision = barycentric_subdivision(simplex);

    // Subdivision vertex i is the i-th simplex in (dimension, lex) order.
    const auto faces = simplex.all_simplices();
    auto max_cyclic_run = [&](const Simplex& support) {
        std::vector<char> zero(static_cast<std::size_t>(n), 1);
        for (Vertex v : support) zero[static_cast<std::size_t>(v)] = 0;
        int best = 0;
        for (int start = 0; start < n; ++start) {
            if (!zero[static_cast<std::size_t>(start)]) continue;
            int len = 0;
            while (len < n && zero[static_cast<std::size_t>((start + len) % n)]) ++len;
            best = std::max(best, len);
        }
        return std::min(best, n);
    };
    std::vector<Vertex> keep;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        if (max_cyclic_run(faces[i]) >= d)
            out.forbidden.push_back(static_cast<Vertex>(i));
        else
            keep.push_back(static_cast<Vertex>(i));
    }
    out.model = full_subcomplex(out.subdivision, keep).as_complex(false);
    out.model.set_name("interval-fiber(" + std::to_string(n) + "," + std::to_string(d) + ")");
    return out;
}

}  // namespace confspace
