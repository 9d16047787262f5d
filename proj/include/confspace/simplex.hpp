#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace confspace {

/// Index of a vertex in a complex's ordered vertex table.
using Vertex = std::int32_t;

/// A simplex, stored as a strictly increasing list of vertex indices.
/// The empty simplex is not a member of any complex here; operations that
/// would produce it return an empty container instead.
using Simplex = std::vector<Vertex>;

/// Dimension of a simplex (= number of vertices - 1). The empty simplex
/// gets -1 so that dimension arithmetic stays total.
inline int dim_of(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

/// True if the vertex list is strictly increasing (the canonical form).
inline bool is_canonical(const Simplex& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i - 1] >= s[i]) return false;
    return true;
}

/// Sort a vertex list into canonical form. Throws on repeated vertices.
inline Simplex canonicalize(Simplex s) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("simplex has a repeated vertex");
    return s;
}

/// All proper nonempty faces of `s`, in lexicographic order of the faces.
inline std::vector<Simplex> proper_faces(const Simplex& s) {
    const std::size_t k = s.size();
    std::vector<Simplex> out;
    if (k <= 1) return out;
    // Subsets enumerated by bitmask; k is small everywhere in this library.
    if (k > 30) throw std::invalid_argument("simplex too large for face enumeration");
    const std::uint32_t full = (1u << k) - 1;
    out.reserve(full - 1);
    for (std::uint32_t m = 1; m < full; ++m) {
        Simplex f;
        f.reserve(static_cast<std::size_t>(__builtin_popcount(m)));
        for (std::size_t i = 0; i < k; ++i)
            if (m & (1u << i)) f.push_back(s[i]);
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Codimension-1 faces of `s` in the order "drop vertex i", i = 0..dim.
inline std::vector<Simplex> boundary_faces(const Simplex& s) {
    std::vector<Simplex> out;
    if (s.size() <= 1) return out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f;
        f.reserve(s.size() - 1);
        for (std::size_t j = 0; j < s.size(); ++j)
            if (j != i) f.push_back(s[j]);
        out.push_back(std::move(f));
    }
    return out;
}

inline bool is_subset(const Simplex& a, const Simplex& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// FNV-1a over the vertex words; used by the membership hash sets.
struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (Vertex v : s) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace confspace
