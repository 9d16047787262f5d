#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "confspace/complex.hpp"
#include "confspace/retract.hpp"
#include "confspace/skeletal.hpp"

namespace confspace {

/// A finite group of vertex permutations, described by generator tables.
struct VertexPermutationAction {
    std::vector<std::vector<Vertex>> generators;

    std::size_t degree() const { return generators.empty() ? 0 : generators[0].size(); }

    /// Close the generators under composition (identity included).
    std::vector<std::vector<Vertex>> elements(std::size_t cap = 40320) const {
        const std::size_t n = degree();
        std::vector<Vertex> id(n);
        std::iota(id.begin(), id.end(), 0);
        std::vector<std::vector<Vertex>> out{id};
        std::map<std::vector<Vertex>, bool> seen{{id, true}};
        std::deque<std::vector<Vertex>> queue{id};
        while (!queue.empty()) {
            const std::vector<Vertex> g = std::move(queue.front());
            queue.pop_front();
            for (const auto& h : generators) {
                if (h.size() != n) throw std::invalid_argument("action: generator size mismatch");
                std::vector<Vertex> gh(n);
                for (std::size_t v = 0; v < n; ++v)
                    gh[v] = h[static_cast<std::size_t>(g[v])];
                if (seen.emplace(gh, true).second) {
                    if (out.size() >= cap) throw std::length_error("action: group too large");
                    out.push_back(gh);
                    queue.push_back(std::move(gh));
                }
            }
        }
        return out;
    }
};

inline Simplex apply_permutation(const std::vector<Vertex>& g, const Simplex& s) {
    Simplex out;
    out.reserve(s.size());
    for (Vertex v : s) out.push_back(g[static_cast<std::size_t>(v)]);
    std::sort(out.begin(), out.end());
    return out;
}

/// Orbit of a vertex under the generated group, sorted.
inline std::vector<Vertex> orbit_of(const VertexPermutationAction& A, Vertex v) {
    std::vector<char> seen(A.degree(), 0);
    std::deque<Vertex> queue{v};
    seen[static_cast<std::size_t>(v)] = 1;
    std::vector<Vertex> out{v};
    while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop_front();
        for (const auto& g : A.generators) {
            const Vertex w = g[static_cast<std::size_t>(u)];
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                out.push_back(w);
                queue.push_back(w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct RegularityReport {
    bool ok = true;
    std::string detail = "ok";
};

/**
 * Quotient-safety certificate for a simplicial action. Verified conditions:
 * the action maps simplices to simplices; no simplex has two distinct
 * vertices in one orbit; a simplex fixed setwise is fixed pointwise; and
 * any two simplices with the same vertex-orbit classes are translates of
 * each other. Together these guarantee that identifying vertices along
 * orbits produces a complex that triangulates the orbit space.
 */
inline RegularityReport check_regularity(const SimplicialComplex& K,
                                         const VertexPermutationAction& A,
                                         std::size_t element_cap = 40320) {
    RegularityReport rep;
    if (A.degree() != static_cast<std::size_t>(K.num_vertices())) {
        rep.ok = false;
        rep.detail = "action degree does not match vertex count";
        return rep;
    }
    const auto elements = A.elements(element_cap);

    std::vector<Vertex> class_of(A.degree());
    for (std::size_t v = 0; v < A.degree(); ++v)
        class_of[v] = orbit_of(A, static_cast<Vertex>(v)).front();

    const auto simplices = K.all_simplices();
    std::map<std::vector<Vertex>, std::vector<const Simplex*>> by_classes;
    for (const Simplex& s : simplices) {
        for (const auto& g : elements) {
            const Simplex t = apply_permutation(g, s);
            if (!K.contains(t)) {
                rep.ok = false;
                rep.detail = "action does not preserve the complex: image of " +
                             K.simplex_label(s) + " is missing";
                return rep;
            }
            if (t == s) {
                for (Vertex v : s)
                    if (g[static_cast<std::size_t>(v)] != v) {
                        rep.ok = false;
                        rep.detail = "simplex " + K.simplex_label(s) +
                                     " is fixed setwise but not pointwise";
                        return rep;
                    }
            }
        }
        std::vector<Vertex> classes;
        classes.reserve(s.size());
        for (Vertex v : s) classes.push_back(class_of[static_cast<std::size_t>(v)]);
        std::sort(classes.begin(), classes.end());
        if (std::adjacent_find(classes.begin(), classes.end()) != classes.end()) {
            rep.ok = false;
            rep.detail = "simplex " + K.simplex_label(s) + " has two vertices in one orbit";
            return rep;
        }
        by_classes[classes].push_back(&s);
    }

    for (const auto& [classes, members] : by_classes) {
        if (members.size() < 2) continue;
        const Simplex& first = *members[0];
        std::vector<Simplex> orbit;
        for (const auto& g : elements) orbit.push_back(apply_permutation(g, first));
        std::sort(orbit.begin(), orbit.end());
        for (const Simplex* m : members)
            if (!std::binary_search(orbit.begin(), orbit.end(), *m)) {
                rep.ok = false;
                rep.detail = "simplices " + K.simplex_label(first) + " and " +
                             K.simplex_label(*m) +
                             " share vertex classes but are not translates";
                return rep;
            }
    }
    return rep;
}

/// Vertex-orbit quotient of an explicit complex. Callers should run
/// check_regularity first; degenerating simplices still throw.
struct QuotientComplex {
    SimplicialComplex complex;
    std::vector<Vertex> class_of;  // parent vertex -> quotient vertex
    std::vector<Vertex> rep_of;    // quotient vertex -> smallest parent vertex
};

inline QuotientComplex quotient_complex(const SimplicialComplex& K,
                                        const VertexPermutationAction& A) {
    if (A.degree() != static_cast<std::size_t>(K.num_vertices()))
        throw std::invalid_argument("quotient: action degree does not match vertex count");
    QuotientComplex out;
    const std::size_t n = A.degree();
    std::vector<Vertex> rep(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        if (rep[v] >= 0) continue;
        for (Vertex w : orbit_of(A, static_cast<Vertex>(v))) rep[static_cast<std::size_t>(w)] =
            static_cast<Vertex>(v);
    }
    out.class_of.resize(n);
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < n; ++v)
        if (rep[v] == static_cast<Vertex>(v)) {
            out.class_of[v] = static_cast<Vertex>(out.rep_of.size());
            out.rep_of.push_back(static_cast<Vertex>(v));
            labels.push_back(K.label(static_cast<Vertex>(v)));
        }
    for (std::size_t v = 0; v < n; ++v)
        out.class_of[v] = out.class_of[static_cast<std::size_t>(rep[v])];

    std::vector<Simplex> simplices;
    for (const Simplex& s : K.all_simplices()) {
        Simplex t;
        t.reserve(s.size());
        for (Vertex v : s) t.push_back(out.class_of[static_cast<std::size_t>(v)]);
        std::sort(t.begin(), t.end());
        if (std::adjacent_find(t.begin(), t.end()) != t.end())
            throw std::invalid_argument("quotient: simplex degenerates (action not regular)");
        simplices.push_back(std::move(t));
    }
    out.complex = SimplicialComplex::from_simplices_unchecked(std::move(labels), simplices,
                                                              K.name() + "/G");
    return out;
}

/**
 * Simplicial model of the unordered configuration-like space: the quotient
 * of the ordered model by the coordinate symmetries. Cells of Q are chains
 * of allowed-simplex orbit classes. A chain and a translate of it are never
 * properly nested (two comparable allowed simplices of equal dimension
 * coincide, and a permutation moving a row of a simplex to a different row
 * of the same simplex would violate the column order), which is what makes
 * the class tuples of two chains agree exactly when the chains share an
 * orbit; the certificate checks that row condition element by element.
 */
struct BraidModel {
    std::shared_ptr<const ProductSkeleton> base;
    SkeletalComplex Q;
    std::vector<std::int32_t> class_of;  // base id -> Q vertex
    std::vector<std::int32_t> rep_of;    // Q vertex -> smallest base id in the orbit
    int flag_dim = -1;
    RegularityReport certificate;

    SimplicialComplex to_complex(const std::string& name = "braid-model") const {
        std::vector<std::string> labels;
        labels.reserve(rep_of.size());
        for (std::int32_t id : rep_of) labels.push_back(base->label_of(id));
        std::vector<Simplex> simplices;
        simplices.reserve(Q.total_cells());
        for (int p = 0; p <= Q.top_dim(); ++p)
            for (std::size_t i = 0; i < Q.count(p); ++i) {
                auto t = Q.cell(p, i);
                simplices.emplace_back(t.begin(), t.end());
            }
        return SimplicialComplex::from_simplices_unchecked(std::move(labels), simplices, name);
    }
};

struct BraidOptions {
    int max_dim = -1;
    std::size_t budget = 600000000;
    bool certify = true;
};

inline BraidModel braid_model(const SimplicialComplex& X, int n, int d,
                              const BraidOptions& opts = {}) {
    BraidModel M;
    auto base = std::make_shared<const ProductSkeleton>(X, n, d);
    const ProductSkeleton& S = *base;
    const ProductComplex& P = S.product();
    const std::int64_t total = S.total();

    // Coordinate transpositions as permutations of simplex ids.
    std::vector<std::vector<std::int32_t>> id_gens;
    {
        const auto code_gens = coordinate_transpositions(P);
        std::vector<std::int64_t> image;
        for (const auto& cg : code_gens) {
            std::vector<std::int32_t> perm(static_cast<std::size_t>(total));
            for (std::int64_t id = 0; id < total; ++id) {
                auto rows = S.rows_of(id);
                image.assign(rows.begin(), rows.end());
                for (auto& code : image) code = cg[static_cast<std::size_t>(code)];
                std::sort(image.begin(), image.end());
                const std::int64_t img = S.id_of(image);
                if (img < 0)
                    throw std::logic_error("coordinate action does not preserve the skeleton");
                perm[static_cast<std::size_t>(id)] = static_cast<std::int32_t>(img);
            }
            id_gens.push_back(std::move(perm));
        }
    }

    // Orbit classes; scanning ids upward makes every representative the
    // orbit minimum.
    M.class_of.assign(static_cast<std::size_t>(total), -1);
    std::deque<std::int32_t> queue;
    for (std::int64_t id = 0; id < total; ++id) {
        if (M.class_of[static_cast<std::size_t>(id)] >= 0) continue;
        const auto cls = static_cast<std::int32_t>(M.rep_of.size());
        M.rep_of.push_back(static_cast<std::int32_t>(id));
        M.class_of[static_cast<std::size_t>(id)] = cls;
        queue.assign(1, static_cast<std::int32_t>(id));
        while (!queue.empty()) {
            const std::int32_t u = queue.front();
            queue.pop_front();
            for (const auto& g : id_gens) {
                const std::int32_t w = g[static_cast<std::size_t>(u)];
                if (M.class_of[static_cast<std::size_t>(w)] < 0) {
                    M.class_of[static_cast<std::size_t>(w)] = cls;
                    queue.push_back(w);
                }
            }
        }
    }

    // Chains map to ascending class tuples (classes inherit the dimension
    // order); duplicates collapse to one cell per orbit.
    const SkeletalComplex W = flag_complex(S, opts.max_dim, opts.budget);
    M.Q.cells.resize(static_cast<std::size_t>(W.top_dim() + 1));
    M.Q.complete_up_to = W.complete_up_to;
    M.Q.truncated = W.truncated;
    for (int p = 0; p <= W.top_dim(); ++p) {
        auto& layer = M.Q.cells[static_cast<std::size_t>(p)];
        layer.reserve(W.cells[static_cast<std::size_t>(p)].size());
        for (std::size_t i = 0; i < W.count(p); ++i) {
            auto t = W.cell(p, i);
            for (std::int32_t id : t) layer.push_back(M.class_of[static_cast<std::size_t>(id)]);
        }
    }
    M.Q.sort_layers();
    for (int p = 0; p <= M.Q.top_dim(); ++p) {
        auto& layer = M.Q.cells[static_cast<std::size_t>(p)];
        const std::size_t stride = static_cast<std::size_t>(p + 1);
        std::size_t w = 0;
        for (std::size_t i = 0; i < layer.size(); i += stride) {
            if (w > 0 && std::equal(layer.begin() + static_cast<std::ptrdiff_t>(i),
                                    layer.begin() + static_cast<std::ptrdiff_t>(i + stride),
                                    layer.begin() + static_cast<std::ptrdiff_t>(w - stride)))
                continue;
            std::copy(layer.begin() + static_cast<std::ptrdiff_t>(i),
                      layer.begin() + static_cast<std::ptrdiff_t>(i + stride),
                      layer.begin() + static_cast<std::ptrdiff_t>(w));
            w += stride;
        }
        layer.resize(w);
    }

    if (opts.certify && P.copies() == 1) {
        M.certificate.detail = "trivial symmetry group";
    } else if (opts.certify) {
        // Row condition: no group element moves a row of an allowed simplex
        // onto a different row of the same simplex.
        VertexPermutationAction codes{coordinate_transpositions(P)};
        const auto elements = codes.elements();
        M.certificate.ok = true;
        M.certificate.detail = "row condition verified for " + std::to_string(elements.size()) +
                               " group elements over " + std::to_string(total) + " simplices";
        for (std::int64_t id = 0; id < total && M.certificate.ok; ++id) {
            auto rows = S.rows_of(id);
            for (const auto& g : elements) {
                for (std::int64_t code : rows) {
                    const std::int64_t img = g[static_cast<std::size_t>(code)];
                    if (img == code) continue;
                    if (std::binary_search(rows.begin(), rows.end(), img)) {
                        M.certificate.ok = false;
                        M.certificate.detail =
                            "element moves a row of " + S.label_of(id) + " within the simplex";
                        break;
                    }
                }
                if (!M.certificate.ok) break;
            }
        }
    } else {
        M.certificate.detail = "certificate skipped";
    }

    M.base = std::move(base);
    M.flag_dim = M.Q.complete_up_to;
    return M;
}

}  // namespace confspace
