#pragma once

#include <string>
#include <vector>

#include "confspace/complex.hpp"

namespace confspace::corpus {

/// The unit interval as one edge. Vertex order: 0, 1.
inline SimplicialComplex interval() {
    return SimplicialComplex::from_facets({"0", "1"}, {{0, 1}}, "interval");
}

/// Circle as a triangle boundary. Vertex order: 0, 1, 2.
inline SimplicialComplex circle() {
    return SimplicialComplex::from_facets({"0", "1", "2"}, {{0, 1}, {1, 2}, {0, 2}}, "circle");
}

/**
 * Wedge of k circles, each made of three edges. Vertex order: the wedge
 * point w first, then a1, b1, a2, b2, ...; circle i is w-ai-bi-w.
 */
inline SimplicialComplex wedge_of_circles(int k) {
    if (k < 1 || k > 4) throw std::invalid_argument("wedge_of_circles supports 1 <= k <= 4");
    std::vector<std::string> labels{"w"};
    std::vector<Simplex> facets;
    for (int i = 0; i < k; ++i) {
        const Vertex a = static_cast<Vertex>(1 + 2 * i);
        const Vertex b = static_cast<Vertex>(2 + 2 * i);
        labels.push_back("a" + std::to_string(i + 1));
        labels.push_back("b" + std::to_string(i + 1));
        facets.push_back({0, a});
        facets.push_back({a, b});
        facets.push_back({0, b});
    }
    return SimplicialComplex::from_facets(std::move(labels), facets,
                                          "wedge" + std::to_string(k));
}

/// Square made of two triangles sharing the diagonal 0-2. Vertex order: 0..3.
inline SimplicialComplex square() {
    return SimplicialComplex::from_facets({"0", "1", "2", "3"}, {{0, 1, 2}, {0, 2, 3}}, "square");
}

/// Solid tetrahedron (the full 3-simplex). Vertex order: 0..3.
inline SimplicialComplex solid_tetrahedron() {
    return SimplicialComplex::from_facets({"0", "1", "2", "3"}, {{0, 1, 2, 3}}, "tetrahedron");
}

/// Boundary of the tetrahedron, a 2-sphere. Vertex order: 0..3.
inline SimplicialComplex boundary_tetrahedron() {
    return SimplicialComplex::from_facets(
        {"0", "1", "2", "3"}, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, "sphere");
}

/**
 * Three triangles glued along one common edge 0-1 (a book with three pages).
 * Vertex order: 0, 1 (the spine), then the three page tips 2, 3, 4.
 */
inline SimplicialComplex three_triangles() {
    return SimplicialComplex::from_facets({"0", "1", "2", "3", "4"},
                                          {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}, "three-triangles");
}

/**
 * The 6-vertex triangulation of the real projective plane (antipodal quotient
 * of the icosahedron). Every one of the 15 edges lies in exactly two of the
 * 10 triangles. Vertex order: 0..5.
 */
inline SimplicialComplex projective_plane() {
    return SimplicialComplex::from_facets({"0", "1", "2", "3", "4", "5"},
                                          {{0, 1, 2},
                                           {0, 2, 3},
                                           {0, 3, 4},
                                           {0, 4, 5},
                                           {0, 1, 5},
                                           {1, 2, 4},
                                           {2, 3, 5},
                                           {1, 3, 4},
                                           {2, 4, 5},
                                           {1, 3, 5}},
                                          "rp2");
}

/// Full simplex on n vertices labeled s1..sn (used by the interval fiber model).
inline SimplicialComplex full_simplex(int n, const std::string& prefix = "s") {
    if (n < 1) throw std::invalid_argument("full_simplex needs n >= 1");
    std::vector<std::string> labels;
    Simplex top;
    for (int i = 0; i < n; ++i) {
        labels.push_back(prefix + std::to_string(i + 1));
        top.push_back(static_cast<Vertex>(i));
    }
    return SimplicialComplex::from_facets(std::move(labels), {top},
                                          "simplex" + std::to_string(n - 1));
}

/// Lookup by the names used by the CLI and the verification suites.
inline SimplicialComplex by_name(const std::string& name) {
    if (name == "interval") return interval();
    if (name == "circle") return circle();
    if (name == "wedge2") return wedge_of_circles(2);
    if (name == "wedge3") return wedge_of_circles(3);
    if (name == "wedge4") return wedge_of_circles(4);
    if (name == "square") return square();
    if (name == "tetrahedron") return solid_tetrahedron();
    if (name == "sphere") return boundary_tetrahedron();
    if (name == "three-triangles") return three_triangles();
    if (name == "rp2") return projective_plane();
    throw std::invalid_argument("unknown builtin complex: " + name);
}

inline std::vector<std::string> names() {
    return {"interval", "circle", "wedge2",      "wedge3",          "wedge4",
            "square",   "tetrahedron", "sphere", "three-triangles", "rp2"};
}

}  // namespace confspace::corpus
