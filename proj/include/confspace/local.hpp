#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "confspace/complex.hpp"
#include "confspace/homology.hpp"
#include "confspace/pi1.hpp"
#include "confspace/skeletal.hpp"

namespace confspace {

/// Maximal simplices.
inline std::vector<Simplex> chambers(const SimplicialComplex& K) { return K.facets(); }

/**
 * Model of a punctured neighborhood: the join of the boundary of a simplex
 * with its link, realized as the subcomplex of all unions of a proper face
 * and a link simplex. Its connectivity controls the local dimension at
 * points inside that simplex.
 */
inline Subcomplex deleted_neighborhood_model(const SimplicialComplex& K, const Simplex& s) {
    if (!K.contains(s)) throw std::invalid_argument("deleted neighborhood: simplex not in complex");
    std::vector<Simplex> alpha = proper_faces(s);
    const Subcomplex lk = link(K, s);
    std::vector<Simplex> parts;
    for (const Simplex& a : alpha) parts.push_back(a);
    for (const Simplex& b : lk.all_simplices()) {
        parts.push_back(b);
        for (const Simplex& a : alpha) {
            Simplex u = a;
            u.insert(u.end(), b.begin(), b.end());
            std::sort(u.begin(), u.end());
            parts.push_back(std::move(u));
        }
    }
    return Subcomplex::make(K, parts);
}

/// Conservative sphere recognition through dimension 2; a false answer
/// proves nothing.
inline bool looks_like_sphere(const SimplicialComplex& K, int dim) {
    if (K.dim() != dim) return false;
    if (dim == 0) return K.count(0) == 2;
    if (dim < 0 || dim > 2) return false;
    if (connected_components(K).size() != 1) return false;
    if (dim == 1) {
        if (K.count(0) != K.count(1)) return false;
        std::vector<int> deg(static_cast<std::size_t>(K.num_vertices()), 0);
        for (const Simplex& e : K.cells(1))
            for (Vertex v : e) deg[static_cast<std::size_t>(v)]++;
        for (const Simplex& v : K.cells(0))
            if (deg[static_cast<std::size_t>(v[0])] != 2) return false;
        return true;
    }
    // dim == 2: closed surface check plus Euler characteristic.
    for (const Simplex& e : K.cells(1)) {
        int cofaces = 0;
        for (const Simplex& t : K.cells(2))
            if (is_subset(e, t)) ++cofaces;
        if (cofaces != 2) return false;
    }
    for (const Simplex& v : K.cells(0)) {
        const SimplicialComplex lk = link(K, v).as_complex(false);
        if (lk.dim() != 1 || lk.count(0) != lk.count(1)) return false;
        if (connected_components(lk).size() != 1) return false;
    }
    return euler_characteristic(K) == 2;
}

/**
 * Local homotopical dimension: the largest r such that every punctured
 * neighborhood model is (r-1)-connected, computed as the minimum of the
 * model connectivities over all simplices. Connectivity is measured
 * homologically; models whose claimed connectivity is at least 1 get a
 * fundamental-group certificate (collapse to a point, presentation
 * trivialization, or sphere recognition), and the ones where every
 * certificate fails are reported as proxies.
 */
struct LocalSummary {
    int value = 0;
    Simplex witness;                // simplex attaining the minimum
    std::vector<Simplex> proxies;   // connectivity >= 1 backed by homology alone
};

inline LocalSummary local_homotopical_dimension(const SimplicialComplex& K) {
    if (K.empty()) throw std::invalid_argument("local dimension of the empty complex");
    LocalSummary out;
    out.value = kInfiniteConnectivity;
    for (const Simplex& s : K.all_simplices()) {
        const Subcomplex model = deleted_neighborhood_model(K, s);
        const SkeletalComplex killed = SkeletalComplex::from_subcomplex(model);
        const ConnectivityResult conn = homological_connectivity(killed);
        if (conn.value >= 1 && !killed.empty()) {
            bool certified = collapses_to_point(killed);
            if (!certified) {
                const SimplicialComplex mc = model.as_complex(false);
                certified = looks_like_sphere(mc, mc.dim()) && mc.dim() >= 2;
                if (!certified) certified = presentation_trivializes(pi1_presentation(mc));
            }
            if (!certified) out.proxies.push_back(s);
        }
        if (conn.value < out.value) {
            out.value = conn.value;
            out.witness = s;
        }
    }
    return out;
}

/// Range bound of the comparison theorems as a function of the local
/// dimension r of the base and the diagonal depth d.
inline int theorem_range_bound(int r, int d) { return r * d + 2 * d - 2; }

/**
 * Combinatorial cross-check of the local dimension: every chamber of
 * dimension q forces r <= q - 2 at its interior, and every face shared by
 * two or more chambers that cannot be certified inessential forces
 * r <= dim - 1. A shared face is certified inessential when the union of
 * its chambers collapses to a point and the link of the face inside that
 * union is either collapsible (a boundary face) or a recognized sphere of
 * the complementary dimension.
 */
struct CombinatorialLocalDim {
    int value = 0;
    Simplex witness;
    bool all_faces_decided = true;  // false when an undecided face was treated as essential
};

inline CombinatorialLocalDim local_dim_combinatorial(const SimplicialComplex& K) {
    if (K.empty()) throw std::invalid_argument("local dimension of the empty complex");
    CombinatorialLocalDim out;
    out.value = kInfiniteConnectivity;
    const std::vector<Simplex> tops = chambers(K);
    for (const Simplex& c : tops) {
        const int bound = dim_of(c) - 2;
        if (bound < out.value) {
            out.value = bound;
            out.witness = c;
        }
    }
    for (const Simplex& s : K.all_simplices()) {
        std::vector<Simplex> around;
        for (const Simplex& c : tops)
            if (s != c && is_subset(s, c)) around.push_back(c);
        if (around.size() < 2) continue;
        const int bound = dim_of(s) - 1;
        if (bound >= out.value) continue;

        const SimplicialComplex U =
            Subcomplex::make(K, around).as_complex(true, K.name() + " chamber union");
        bool inessential = false;
        if (collapses_to_point(SkeletalComplex::from_complex(U))) {
            const Subcomplex lkU = link(U, s);
            const SkeletalComplex lks = SkeletalComplex::from_subcomplex(lkU);
            if (collapses_to_point(lks)) {
                inessential = true;
            } else {
                const SimplicialComplex lkc = lkU.as_complex(false);
                inessential = looks_like_sphere(lkc, U.dim() - dim_of(s) - 1);
            }
        }
        if (!inessential) {
            // Without a positive certificate either way the face counts as
            // essential, which can only push the value down.
            out.all_faces_decided = false;
            out.value = bound;
            out.witness = s;
        }
    }
    return out;
}

}  // namespace confspace
