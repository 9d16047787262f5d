#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "confspace/coreduce.hpp"
#include "confspace/skeletal.hpp"
#include "confspace/snf.hpp"

namespace confspace {

struct HomologyGroup {
    std::int64_t betti = 0;
    std::vector<std::int64_t> torsion;  // cyclic orders > 1, divisibility order

    bool trivial() const { return betti == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup& o) const {
        return betti == o.betti && torsion == o.torsion;
    }
};

inline std::string to_string(const HomologyGroup& g) {
    if (g.trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (g.betti == 1) {
        os << "Z";
        first = false;
    } else if (g.betti > 1) {
        os << "Z^" << g.betti;
        first = false;
    }
    for (std::int64_t t : g.torsion) {
        if (!first) os << " + ";
        os << "Z/" << t;
        first = false;
    }
    return os.str();
}

struct HomologyOptions {
    /// Run the chain-level coreduction cascade and hand only the surviving
    /// cells to Smith. This is what keeps multi-million-cell models inside
    /// the memory budget; turning it off exercises the direct pipeline.
    bool coreduce = true;
    /// Without coreduction, run the free-pair collapser before Smith.
    bool collapse = true;
};

struct HomologyResult {
    std::vector<HomologyGroup> groups;  // groups[i] = H_i for 0 <= i <= up_to
    bool reduced = false;

    const HomologyGroup& operator[](std::size_t i) const { return groups[i]; }
    int up_to() const { return static_cast<int>(groups.size()) - 1; }
};

/// Triplets of the boundary map from p-cells to (p-1)-cells, with the usual
/// alternating signs over the increasing vertex tuple.
inline std::vector<MatrixEntry> boundary_entries(const SkeletalComplex& K, int p) {
    std::vector<MatrixEntry> out;
    if (p <= 0 || p > K.top_dim()) return out;
    const std::size_t cnt = K.count(p);
    out.reserve(cnt * static_cast<std::size_t>(p + 1));
    std::vector<std::int32_t> key(static_cast<std::size_t>(p));
    for (std::size_t i = 0; i < cnt; ++i) {
        auto t = K.cell(p, i);
        std::int64_t sign = 1;
        for (int drop = 0; drop <= p; ++drop) {
            std::size_t w = 0;
            for (int j = 0; j <= p; ++j)
                if (j != drop) key[w++] = t[static_cast<std::size_t>(j)];
            const std::int64_t f = K.index_of(p - 1, key);
            if (f < 0) throw std::logic_error("boundary: face missing (complex not closed)");
            out.push_back({f, static_cast<std::int64_t>(i), sign});
            sign = -sign;
        }
    }
    return out;
}

namespace detail {

inline SmithResult boundary_smith(const SkeletalComplex& K, int p) {
    if (p <= 0 || p > K.top_dim()) return {};
    return smith_normal_form(static_cast<std::int64_t>(K.count(p - 1)),
                             static_cast<std::int64_t>(K.count(p)), boundary_entries(K, p));
}

inline SmithResult critical_smith(const CoreducedChain& C, int p) {
    if (p <= 0 || p > C.top_dim()) return {};
    return smith_normal_form(C.critical[static_cast<std::size_t>(p) - 1],
                             C.critical[static_cast<std::size_t>(p)],
                             C.boundary[static_cast<std::size_t>(p)]);
}

inline void require_skeleton(const SkeletalComplex& K, int up_to) {
    if (up_to < 0) throw std::invalid_argument("homology: negative dimension bound");
    if (K.truncated && K.complete_up_to < up_to + 1)
        throw std::invalid_argument(
            "homology through dimension " + std::to_string(up_to) +
            " needs all cells through dimension " + std::to_string(up_to + 1));
}

}  // namespace detail

/**
 * Integral homology H_0 .. H_up_to. A truncated complex must carry complete
 * cells through dimension up_to + 1. With `reduced`, H_0 loses one free
 * summand (of the empty complex all reduced groups vanish).
 */
inline HomologyResult homology(const SkeletalComplex& K, int up_to, bool reduced = false,
                               const HomologyOptions& opts = {}) {
    detail::require_skeleton(K, up_to);
    HomologyResult res;
    res.reduced = reduced;
    res.groups.resize(static_cast<std::size_t>(up_to) + 1);

    if (opts.coreduce) {
        const CoreducedChain C = coreduce_chain(K, up_to + 1);
        SmithResult below;  // Smith data of the boundary map out of dimension i
        for (int i = 0; i <= up_to; ++i) {
            const SmithResult above = detail::critical_smith(C, i + 1);
            HomologyGroup& g = res.groups[static_cast<std::size_t>(i)];
            if (i == 0) {
                // The survivors carry reduced homology componentwise, so H_0
                // comes from the component count; degree zero is always free.
                if (!above.nontrivial_factors.empty())
                    throw std::logic_error("coreduction: torsion in degree zero");
                g.betti = C.components;
            } else {
                g.betti = (i <= C.top_dim() ? C.critical[static_cast<std::size_t>(i)] : 0) -
                          below.rank - above.rank;
                g.torsion = above.nontrivial_factors;
            }
            below = above;
        }
        if (reduced && K.count(0) > 0) res.groups[0].betti -= 1;
        return res;
    }

    const SkeletalComplex R = opts.collapse ? collapse_reduce(K, up_to + 1) : K;
    SmithResult below;
    for (int i = 0; i <= up_to; ++i) {
        const SmithResult above = detail::boundary_smith(R, i + 1);
        HomologyGroup& g = res.groups[static_cast<std::size_t>(i)];
        g.betti = static_cast<std::int64_t>(R.count(i)) - below.rank - above.rank;
        g.torsion = above.nontrivial_factors;
        below = above;
    }
    if (reduced && R.count(0) > 0) res.groups[0].betti -= 1;
    return res;
}

inline HomologyResult homology(const SimplicialComplex& K, int up_to, bool reduced = false,
                               const HomologyOptions& opts = {}) {
    return homology(SkeletalComplex::from_complex(K), up_to, reduced, opts);
}

/// Connectivity sentinel for "all reduced homology vanishes".
inline constexpr int kInfiniteConnectivity = 1 << 29;

struct ConnectivityResult {
    int value = -2;
    /// False when a truncation bound capped the scan, making `value` only a
    /// lower bound on the true connectivity.
    bool exact = true;
};

/**
 * Homological connectivity: -2 for the empty complex, -1 when disconnected,
 * otherwise the largest c with reduced H_i trivial for all i <= c
 * (kInfiniteConnectivity when every available dimension vanishes and the
 * complex is complete).
 */
inline ConnectivityResult homological_connectivity(const SkeletalComplex& K,
                                                   const HomologyOptions& opts = {}) {
    ConnectivityResult out;
    if (K.empty()) {
        out.value = -2;
        return out;
    }
    if (component_count(K) > 1) {
        out.value = -1;
        return out;
    }
    const int cap = K.truncated ? K.complete_up_to - 1 : K.top_dim();
    if (opts.coreduce) {
        const CoreducedChain C = coreduce_chain(K, cap + 1);
        SmithResult below = detail::critical_smith(C, 1);
        for (int i = 1; i <= cap; ++i) {
            const SmithResult above = detail::critical_smith(C, i + 1);
            const std::int64_t betti =
                (i <= C.top_dim() ? C.critical[static_cast<std::size_t>(i)] : 0) - below.rank -
                above.rank;
            if (betti != 0 || !above.nontrivial_factors.empty()) {
                out.value = i - 1;
                return out;
            }
            below = above;
        }
        if (!K.truncated) {
            out.value = kInfiniteConnectivity;
        } else {
            out.value = cap;
            out.exact = false;
        }
        return out;
    }
    const SkeletalComplex R = opts.collapse ? collapse_reduce(K, cap + 1) : K;
    SmithResult below = detail::boundary_smith(R, 1);
    for (int i = 1; i <= cap; ++i) {
        const SmithResult above = detail::boundary_smith(R, i + 1);
        const std::int64_t betti =
            static_cast<std::int64_t>(R.count(i)) - below.rank - above.rank;
        if (betti != 0 || !above.nontrivial_factors.empty()) {
            out.value = i - 1;
            return out;
        }
        below = above;
    }
    if (!K.truncated) {
        out.value = kInfiniteConnectivity;
    } else {
        out.value = cap;
        out.exact = false;
    }
    return out;
}

inline ConnectivityResult homological_connectivity(const SimplicialComplex& K,
                                                   const HomologyOptions& opts = {}) {
    return homological_connectivity(SkeletalComplex::from_complex(K), opts);
}

/// True when reduced H_i vanishes for every i <= up_to.
inline bool reduced_homology_trivial(const SkeletalComplex& K, int up_to) {
    const HomologyResult h = homology(K, up_to, true);
    for (const auto& g : h.groups)
        if (!g.trivial()) return false;
    return true;
}

}  // namespace confspace
