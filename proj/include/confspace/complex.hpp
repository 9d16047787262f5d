#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "confspace/simplex.hpp"

namespace confspace {

/**
 * A finite abstract simplicial complex with an explicit vertex order.
 *
 * Vertices are the indices 0..num_vertices()-1 into an ordered label table;
 * the table order is the simplicial order used by every construction that
 * depends on it (products, subdivisions). Simplices are stored grouped by
 * dimension and sorted lexicographically within each dimension, so rebuilding
 * a complex from the same input always yields the same ordering.
 */
class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    /**
     * Build a complex as the downward closure of a facet list.
     *
     * @param labels ordered vertex labels; the order is part of the data.
     * @param facets maximal (or just generating) simplices, as index lists.
     *               Closure under taking faces is computed here.
     */
    static SimplicialComplex from_facets(std::vector<std::string> labels,
                                         const std::vector<Simplex>& facets,
                                         std::string name = "") {
        SimplicialComplex K;
        K.name_ = std::move(name);
        K.labels_ = std::move(labels);
        std::unordered_set<Simplex, SimplexHash> seen;
        for (const Simplex& raw : facets) {
            Simplex f = canonicalize(raw);
            K.require_known_vertices(f);
            if (f.empty()) continue;
            if (seen.insert(f).second) {
                for (Simplex& face : proper_faces(f)) seen.insert(std::move(face));
            }
        }
        K.adopt(seen);
        return K;
    }

    /**
     * Build a complex from an explicit simplex family without computing the
     * closure. Intended for validate() and for tests that need deliberately
     * broken inputs; every other entry point should use from_facets().
     */
    static SimplicialComplex from_simplices_unchecked(std::vector<std::string> labels,
                                                      const std::vector<Simplex>& simplices,
                                                      std::string name = "") {
        SimplicialComplex K;
        K.name_ = std::move(name);
        K.labels_ = std::move(labels);
        std::unordered_set<Simplex, SimplexHash> seen;
        for (const Simplex& s : simplices) {
            Simplex c = s;
            std::sort(c.begin(), c.end());
            seen.insert(std::move(c));
        }
        K.adopt(seen);
        return K;
    }

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    std::int64_t num_vertices() const { return static_cast<std::int64_t>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(Vertex v) const { return labels_.at(static_cast<std::size_t>(v)); }

    /// Dimension of the complex; -1 when there are no simplices at all.
    int dim() const { return static_cast<int>(cells_.size()) - 1; }

    bool empty() const { return cells_.empty(); }

    /// Simplices of dimension p, lexicographically sorted.
    const std::vector<Simplex>& cells(int p) const {
        static const std::vector<Simplex> none;
        if (p < 0 || p > dim()) return none;
        return cells_[static_cast<std::size_t>(p)];
    }

    std::size_t count(int p) const { return cells(p).size(); }

    std::size_t total_cells() const {
        std::size_t t = 0;
        for (const auto& layer : cells_) t += layer.size();
        return t;
    }

    bool contains(const Simplex& s) const { return members_.count(s) > 0; }

    /// All simplices in (dimension, lex) order; this is the vertex order of
    /// the barycentric subdivision.
    std::vector<Simplex> all_simplices() const {
        std::vector<Simplex> out;
        out.reserve(total_cells());
        for (const auto& layer : cells_)
            for (const Simplex& s : layer) out.push_back(s);
        return out;
    }

    std::string simplex_label(const Simplex& s) const {
        std::ostringstream os;
        os << '{';
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) os << ',';
            os << label(s[i]);
        }
        os << '}';
        return os.str();
    }

    /// Maximal simplices (facets), in (dimension, lex) order.
    std::vector<Simplex> facets() const {
        std::vector<Simplex> out;
        for (int p = 0; p <= dim(); ++p) {
            for (const Simplex& s : cells(p)) {
                bool maximal = true;
                // A p-simplex is maximal iff no (p+1)-simplex contains it;
                // checking one extra vertex at a time covers all cofaces.
                for (Vertex v = 0; v < num_vertices() && maximal; ++v) {
                    if (std::binary_search(s.begin(), s.end(), v)) continue;
                    Simplex up = s;
                    up.insert(std::upper_bound(up.begin(), up.end(), v), v);
                    if (contains(up)) maximal = false;
                }
                if (maximal) out.push_back(s);
            }
        }
        return out;
    }

    bool operator==(const SimplicialComplex& o) const {
        return labels_ == o.labels_ && cells_ == o.cells_;
    }

  private:
    void require_known_vertices(const Simplex& s) const {
        for (Vertex v : s)
            if (v < 0 || v >= num_vertices())
                throw std::invalid_argument("simplex vertex index " + std::to_string(v) +
                                            " out of range");
    }

    void adopt(const std::unordered_set<Simplex, SimplexHash>& seen) {
        int d = -1;
        for (const Simplex& s : seen) d = std::max(d, dim_of(s));
        cells_.assign(static_cast<std::size_t>(d + 1), {});
        for (const Simplex& s : seen)
            if (!s.empty()) cells_[static_cast<std::size_t>(dim_of(s))].push_back(s);
        for (auto& layer : cells_) std::sort(layer.begin(), layer.end());
        members_ = seen;
        members_.erase(Simplex{});
    }

    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Simplex>> cells_;
    std::unordered_set<Simplex, SimplexHash> members_;
};

/**
 * A subcomplex, held as an explicit downward-closed family of simplices of a
 * parent complex. It shares the parent's vertex table and answers the same
 * membership queries against its own family.
 */
class Subcomplex {
  public:
    Subcomplex() = default;

    static Subcomplex make(const SimplicialComplex& parent, const std::vector<Simplex>& sims) {
        Subcomplex A;
        A.parent_ = &parent;
        std::unordered_set<Simplex, SimplexHash> seen;
        for (const Simplex& raw : sims) {
            Simplex s = canonicalize(raw);
            if (s.empty()) continue;
            if (!parent.contains(s))
                throw std::invalid_argument("subcomplex simplex not in parent: first offender has " +
                                            std::to_string(s.size()) + " vertices");
            if (seen.insert(s).second)
                for (Simplex& f : proper_faces(s)) seen.insert(std::move(f));
        }
        int d = -1;
        for (const Simplex& s : seen) d = std::max(d, dim_of(s));
        A.cells_.assign(static_cast<std::size_t>(d + 1), {});
        for (const Simplex& s : seen) A.cells_[static_cast<std::size_t>(dim_of(s))].push_back(s);
        for (auto& layer : A.cells_) std::sort(layer.begin(), layer.end());
        A.members_ = std::move(seen);
        return A;
    }

    const SimplicialComplex& parent() const { return *parent_; }
    int dim() const { return static_cast<int>(cells_.size()) - 1; }
    bool empty() const { return cells_.empty(); }

    const std::vector<Simplex>& cells(int p) const {
        static const std::vector<Simplex> none;
        if (p < 0 || p > dim()) return none;
        return cells_[static_cast<std::size_t>(p)];
    }

    std::size_t count(int p) const { return cells(p).size(); }

    std::size_t total_cells() const {
        std::size_t t = 0;
        for (const auto& layer : cells_) t += layer.size();
        return t;
    }

    bool contains(const Simplex& s) const { return members_.count(s) > 0; }

    /// Vertices used by the subcomplex, ascending.
    std::vector<Vertex> vertex_set() const {
        std::vector<Vertex> out;
        for (const Simplex& v : cells(0)) out.push_back(v[0]);
        return out;
    }

    std::vector<Simplex> all_simplices() const {
        std::vector<Simplex> out;
        out.reserve(total_cells());
        for (const auto& layer : cells_)
            for (const Simplex& s : layer) out.push_back(s);
        return out;
    }

    /**
     * Re-package the subcomplex as a standalone complex.
     *
     * @param keep_vertex_table when true, the result keeps the parent's whole
     *        vertex table (indices unchanged); when false, the table is
     *        restricted to the vertices actually used, preserving their
     *        relative order, and simplices are reindexed.
     */
    SimplicialComplex as_complex(bool keep_vertex_table = false, std::string name = "") const {
        if (keep_vertex_table)
            return SimplicialComplex::from_facets(parent_->labels(), all_simplices(),
                                                  std::move(name));
        std::vector<Vertex> used = vertex_set();
        std::vector<std::string> labels;
        labels.reserve(used.size());
        std::map<Vertex, Vertex> re;
        for (std::size_t i = 0; i < used.size(); ++i) {
            re[used[i]] = static_cast<Vertex>(i);
            labels.push_back(parent_->label(used[i]));
        }
        std::vector<Simplex> sims;
        sims.reserve(total_cells());
        for (const Simplex& s : all_simplices()) {
            Simplex t;
            t.reserve(s.size());
            for (Vertex v : s) t.push_back(re.at(v));
            sims.push_back(std::move(t));
        }
        return SimplicialComplex::from_facets(std::move(labels), sims, std::move(name));
    }

  private:
    const SimplicialComplex* parent_ = nullptr;
    std::vector<std::vector<Simplex>> cells_;
    std::unordered_set<Simplex, SimplexHash> members_;
};

/// Full subcomplex of `K` spanned by a vertex set: every simplex of K all of
/// whose vertices lie in the set.
inline Subcomplex full_subcomplex(const SimplicialComplex& K, const std::vector<Vertex>& verts) {
    std::vector<bool> in(static_cast<std::size_t>(K.num_vertices()), false);
    for (Vertex v : verts) {
        if (v < 0 || v >= K.num_vertices()) throw std::invalid_argument("vertex out of range");
        in[static_cast<std::size_t>(v)] = true;
    }
    std::vector<Simplex> keep;
    for (int p = 0; p <= K.dim(); ++p)
        for (const Simplex& s : K.cells(p)) {
            bool all = true;
            for (Vertex v : s)
                if (!in[static_cast<std::size_t>(v)]) { all = false; break; }
            if (all) keep.push_back(s);
        }
    return Subcomplex::make(K, keep);
}

/**
 * Fullness test: A is full in its parent K iff every simplex of K whose
 * vertices all lie in A is itself a simplex of A.
 */
inline bool is_full(const Subcomplex& A) {
    const SimplicialComplex& K = A.parent();
    std::vector<bool> in(static_cast<std::size_t>(K.num_vertices()), false);
    for (Vertex v : A.vertex_set()) in[static_cast<std::size_t>(v)] = true;
    for (int p = 0; p <= K.dim(); ++p)
        for (const Simplex& s : K.cells(p)) {
            bool all = true;
            for (Vertex v : s)
                if (!in[static_cast<std::size_t>(v)]) { all = false; break; }
            if (all && !A.contains(s)) return false;
        }
    return true;
}

/// First K-simplex witnessing non-fullness of A, if any (empty simplex if full).
inline Simplex fullness_witness(const Subcomplex& A) {
    const SimplicialComplex& K = A.parent();
    std::vector<bool> in(static_cast<std::size_t>(K.num_vertices()), false);
    for (Vertex v : A.vertex_set()) in[static_cast<std::size_t>(v)] = true;
    for (int p = 0; p <= K.dim(); ++p)
        for (const Simplex& s : K.cells(p)) {
            bool all = true;
            for (Vertex v : s)
                if (!in[static_cast<std::size_t>(v)]) { all = false; break; }
            if (all && !A.contains(s)) return s;
        }
    return {};
}

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> issues;  // human-readable; first entry names the first offender
};

/**
 * Check the structural invariants of a complex: canonical vertex lists,
 * in-range vertex indices, no duplicate simplices across the stored layers,
 * and downward closure. The first offending simplex is named in the report.
 */
inline ValidationReport validate(const SimplicialComplex& K) {
    ValidationReport rep;
    auto offend = [&](const Simplex& s, const std::string& what) {
        std::ostringstream os;
        os << what << ": [";
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
        os << "]";
        rep.issues.push_back(os.str());
        rep.ok = false;
    };
    std::unordered_set<Simplex, SimplexHash> seen;
    for (int p = 0; p <= K.dim(); ++p) {
        for (const Simplex& s : K.cells(p)) {
            if (dim_of(s) != p) { offend(s, "simplex stored under wrong dimension"); continue; }
            if (!is_canonical(s)) { offend(s, "vertex list not strictly increasing"); continue; }
            bool range_ok = true;
            for (Vertex v : s)
                if (v < 0 || v >= K.num_vertices()) range_ok = false;
            if (!range_ok) { offend(s, "unknown vertex index"); continue; }
            if (!seen.insert(s).second) { offend(s, "duplicate simplex"); continue; }
            for (const Simplex& f : boundary_faces(s))
                if (!K.contains(f)) { offend(s, "closure gap below simplex"); break; }
        }
    }
    return rep;
}

/// skeleton(K, k): all simplices of dimension <= k. k must be >= 0.
inline SimplicialComplex skeleton(const SimplicialComplex& K, int k) {
    if (k < 0) throw std::invalid_argument("skeleton dimension must be >= 0");
    std::vector<Simplex> sims;
    for (int p = 0; p <= std::min(k, K.dim()); ++p)
        for (const Simplex& s : K.cells(p)) sims.push_back(s);
    return SimplicialComplex::from_facets(K.labels(), sims, K.name());
}

/// link(K, s) = { t in K : t disjoint from s, t union s in K }.
inline Subcomplex link(const SimplicialComplex& K, const Simplex& sigma) {
    Simplex s = canonicalize(sigma);
    if (!K.contains(s)) throw std::invalid_argument("link of a simplex not in the complex");
    std::vector<Simplex> got;
    for (int p = 0; p <= K.dim(); ++p)
        for (const Simplex& t : K.cells(p)) {
            bool disjoint = true;
            for (Vertex v : t)
                if (std::binary_search(s.begin(), s.end(), v)) { disjoint = false; break; }
            if (!disjoint) continue;
            Simplex u;
            std::merge(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(u));
            if (K.contains(u)) got.push_back(t);
        }
    return Subcomplex::make(K, got);
}

/// Boundary of a simplex as a subcomplex (all proper faces).
inline Subcomplex boundary_subcomplex(const SimplicialComplex& K, const Simplex& sigma) {
    Simplex s = canonicalize(sigma);
    if (!K.contains(s)) throw std::invalid_argument("boundary of a simplex not in the complex");
    return Subcomplex::make(K, proper_faces(s));
}

/**
 * Simplicial join A * B. Requires disjoint vertex label sets; the result's
 * vertex table is A's labels followed by B's.
 */
inline SimplicialComplex join(const SimplicialComplex& A, const SimplicialComplex& B,
                              std::string name = "") {
    std::unordered_set<std::string> names(A.labels().begin(), A.labels().end());
    for (const std::string& l : B.labels())
        if (names.count(l))
            throw std::invalid_argument("join requires disjoint vertex labels; shared label: " + l);
    std::vector<std::string> labels = A.labels();
    labels.insert(labels.end(), B.labels().begin(), B.labels().end());
    const Vertex shift = static_cast<Vertex>(A.num_vertices());
    std::vector<Simplex> sims;
    std::vector<Simplex> a_sims = A.all_simplices();
    std::vector<Simplex> b_sims = B.all_simplices();
    for (const Simplex& a : a_sims) sims.push_back(a);
    for (const Simplex& b : b_sims) {
        Simplex t;
        for (Vertex v : b) t.push_back(v + shift);
        sims.push_back(t);
    }
    for (const Simplex& a : a_sims)
        for (const Simplex& b : b_sims) {
            Simplex t = a;
            for (Vertex v : b) t.push_back(v + shift);
            sims.push_back(std::move(t));
        }
    return SimplicialComplex::from_facets(std::move(labels), sims, std::move(name));
}

/// Connected components as subcomplexes, ordered by their smallest vertex.
inline std::vector<Subcomplex> connected_components(const SimplicialComplex& K) {
    const std::size_t n = static_cast<std::size_t>(K.num_vertices());
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<Vertex(Vertex)> find = [&](Vertex x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const Simplex& e : K.cells(1)) {
        Vertex a = find(e[0]), b = find(e[1]);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    // Only vertices that are simplices of K count; the table may hold unused labels.
    std::map<Vertex, std::vector<Simplex>> buckets;
    for (const Simplex& v : K.cells(0)) buckets[find(v[0])];
    for (int p = 0; p <= K.dim(); ++p)
        for (const Simplex& s : K.cells(p)) buckets[find(s[0])].push_back(s);
    std::vector<Subcomplex> out;
    out.reserve(buckets.size());
    for (auto& [root, sims] : buckets) out.push_back(Subcomplex::make(K, sims));
    return out;
}

/// Euler characteristic, the alternating sum over all stored simplices.
inline std::int64_t euler_characteristic(const SimplicialComplex& K) {
    std::int64_t chi = 0;
    for (int p = 0; p <= K.dim(); ++p)
        chi += (p % 2 == 0) ? static_cast<std::int64_t>(K.count(p))
                            : -static_cast<std::int64_t>(K.count(p));
    return chi;
}

inline std::int64_t euler_characteristic(const Subcomplex& A) {
    std::int64_t chi = 0;
    for (int p = 0; p <= A.dim(); ++p)
        chi += (p % 2 == 0) ? static_cast<std::int64_t>(A.count(p))
                            : -static_cast<std::int64_t>(A.count(p));
    return chi;
}

/**
 * Barycentric subdivision, fully materialized.
 *
 * Vertices of the result are the simplices of K in (dimension, lex) order,
 * labeled by simplex_label(); q-simplices are the flags s_0 < s_1 < ... < s_q
 * of proper inclusions. Guarded by a cell budget since flag counts grow
 * factorially with dimension; large instances should use the lazy machinery
 * in retract.hpp instead.
 */
inline SimplicialComplex barycentric_subdivision(const SimplicialComplex& K,
                                                 std::size_t max_cells = 5000000) {
    std::vector<Simplex> verts = K.all_simplices();
    std::vector<std::string> labels;
    labels.reserve(verts.size());
    for (const Simplex& s : verts) labels.push_back(K.simplex_label(s));

    std::unordered_map<Simplex, Vertex, SimplexHash> index;
    index.reserve(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = static_cast<Vertex>(i);
    auto id_of = [&](const Simplex& s) { return index.at(s); };

    std::vector<Simplex> flags;
    std::size_t budget = max_cells;
    // Depth-first over descending chains from each top simplex; every flag is
    // emitted exactly once, keyed by its maximal element.
    std::function<void(const Simplex&, Simplex&)> descend = [&](const Simplex& cur,
                                                                Simplex& path) {
        path.push_back(id_of(cur));
        if (budget-- == 0) throw std::length_error("barycentric subdivision exceeds cell budget");
        Simplex flag(path.rbegin(), path.rend());
        flags.push_back(std::move(flag));
        for (const Simplex& f : proper_faces(cur)) descend(f, path);
        path.pop_back();
    };
    Simplex path;
    for (const Simplex& top : verts) descend(top, path);

    std::string nm = K.name().empty() ? "" : ("sd(" + K.name() + ")");
    return SimplicialComplex::from_facets(std::move(labels), flags, std::move(nm));
}

/**
 * Complement complex of a full subcomplex: all simplices of K that share no
 * vertex with A. For full A this is a deformation retract of |K| minus |A|.
 */
inline Subcomplex disjoint_complement(const SimplicialComplex& K, const Subcomplex& A) {
    if (&A.parent() != &K)
        throw std::invalid_argument("disjoint_complement: subcomplex has a different parent");
    if (!is_full(A))
        throw std::invalid_argument(
            "disjoint_complement requires a full subcomplex; subdivide first");
    std::vector<bool> in(static_cast<std::size_t>(K.num_vertices()), false);
    for (Vertex v : A.vertex_set()) in[static_cast<std::size_t>(v)] = true;
    std::vector<Simplex> keep;
    for (int p = 0; p <= K.dim(); ++p)
        for (const Simplex& s : K.cells(p)) {
            bool touches = false;
            for (Vertex v : s)
                if (in[static_cast<std::size_t>(v)]) { touches = true; break; }
            if (!touches) keep.push_back(s);
        }
    return Subcomplex::make(K, keep);
}

}  // namespace confspace
