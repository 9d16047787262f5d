#include <catch2/catch_amalgamated.hpp>

#include "confspace/corpus.hpp"
#include "confspace/homology.hpp"
#include "confspace/product.hpp"
#include "support/naive_homology.hpp"

using namespace confspace;

namespace {

oracle::Group as_oracle(const HomologyGroup& g) {
    oracle::Group o;
    o.rank = g.betti;
    for (auto t : g.torsion) o.torsion.push_back(t);
    std::sort(o.torsion.begin(), o.torsion.end());
    return o;
}

}  // namespace

TEST_CASE("triple product of an interval is the staircase cube") {
    const SimplicialComplex P = product_complex(corpus::interval(), 3);
    REQUIRE(P.dim() == 3);
    CHECK(P.count(0) == 8);
    CHECK(P.count(1) == 19);
    CHECK(P.count(2) == 18);
    CHECK(P.count(3) == 6);
    CHECK(euler_characteristic(P) == 1);
    CHECK(validate(P).ok);
}

TEST_CASE("product Euler characteristic is multiplicative") {
    CHECK(euler_characteristic(product_complex(corpus::circle(), 2)) == 0);
    CHECK(euler_characteristic(product_complex(corpus::circle(), 3)) == 0);
    CHECK(euler_characteristic(product_complex(corpus::square(), 2)) == 1);
    CHECK(euler_characteristic(product_complex(corpus::wedge_of_circles(2), 2)) == 1);
    CHECK(euler_characteristic(product_complex(corpus::three_triangles(), 2)) == 1);
}

TEST_CASE("squared circle is a torus") {
    const SimplicialComplex T = product_complex(corpus::circle(), 2);
    std::vector<oracle::Cell> facets;
    for (const Simplex& f : T.facets()) facets.emplace_back(f.begin(), f.end());
    const auto want = oracle::homology_of_facets(facets, 2);
    CHECK(want[0] == oracle::Group{1, {}});
    CHECK(want[1] == oracle::Group{2, {}});
    CHECK(want[2] == oracle::Group{1, {}});
    const HomologyResult got = homology(T, 2);
    for (int i = 0; i <= 2; ++i)
        CHECK(as_oracle(got[static_cast<std::size_t>(i)]) == want[static_cast<std::size_t>(i)]);
}

TEST_CASE("row order and column spans decide membership") {
    const ProductComplex P(corpus::circle(), 2);
    const auto code = [&](Vertex a, Vertex b) {
        const Vertex row[] = {a, b};
        return P.encode(row);
    };
    // comparable rows whose columns span edges
    {
        const std::int64_t rows[] = {code(0, 0), code(1, 1)};
        CHECK(P.is_simplex(rows));
    }
    // rows out of ascending order
    {
        const std::int64_t rows[] = {code(1, 1), code(0, 0)};
        CHECK_FALSE(P.is_simplex(rows));
    }
    // incomparable rows
    {
        const std::int64_t rows[] = {code(0, 1), code(1, 0)};
        CHECK_FALSE(P.is_simplex(rows));
    }
    // a column span that is not a simplex of the circle
    {
        const std::int64_t rows[] = {code(0, 0), code(1, 1), code(2, 2)};
        CHECK_FALSE(P.is_simplex(rows));
    }
}

TEST_CASE("the product is not determined by its one-skeleton") {
    // all three edges of the triple (0|0, 1|1, 2|2) are present but the
    // triangle itself is not: its columns would have to span a triangle in
    // the hollow circle
    const SimplicialComplex T = product_complex(corpus::circle(), 2);
    const ProductComplex P(corpus::circle(), 2);
    const auto diag = [&](Vertex v) {
        const Vertex row[] = {v, v};
        return static_cast<Vertex>(P.encode(row));
    };
    for (Vertex a = 0; a < 3; ++a)
        for (Vertex b = a + 1; b < 3; ++b) CHECK(T.contains({diag(a), diag(b)}));
    CHECK_FALSE(T.contains({diag(0), diag(1), diag(2)}));
}

TEST_CASE("the thin diagonal is a copy of the base") {
    for (const auto& X : {corpus::circle(), corpus::square(), corpus::three_triangles()}) {
        for (int n = 2; n <= 3; ++n) {
            INFO(X.name() << " with n=" << n);
            const SimplicialComplex prod = product_complex(X, n);
            const ProductComplex P(X, n);
            std::vector<Vertex> constant;
            for (Vertex v = 0; v < static_cast<Vertex>(X.num_vertices()); ++v) {
                std::vector<Vertex> row(static_cast<std::size_t>(n), v);
                constant.push_back(static_cast<Vertex>(P.encode(row)));
            }
            const Subcomplex thin = full_subcomplex(prod, constant);
            for (int p = 0; p <= X.dim(); ++p) CHECK(thin.count(p) == X.count(p));
            CHECK(thin.total_cells() == X.total_cells());
        }
    }
}

TEST_CASE("fat diagonal membership by column multiplicity") {
    const ProductComplex P(corpus::interval(), 3);
    const auto code = [&](Vertex a, Vertex b, Vertex c) {
        const Vertex row[] = {a, b, c};
        return P.encode(row);
    };
    {
        const std::int64_t rows[] = {code(0, 0, 1)};
        CHECK(P.max_equal_column_group(rows) == 2);
        CHECK(P.in_fat_diagonal(rows, 1));
        CHECK_FALSE(P.in_fat_diagonal(rows, 2));
    }
    {
        const std::int64_t rows[] = {code(0, 0, 0)};
        CHECK(P.max_equal_column_group(rows) == 3);
        CHECK(P.in_fat_diagonal(rows, 2));
    }
    {
        // columns (0,0), (0,1), (1,1) are pairwise distinct sequences
        const std::int64_t rows[] = {code(0, 0, 1), code(0, 1, 1)};
        CHECK(P.max_equal_column_group(rows) == 1);
        CHECK_FALSE(P.in_fat_diagonal(rows, 1));
    }
}

TEST_CASE("fat diagonal shrinks as the allowed depth grows") {
    const SimplicialComplex prod = product_complex(corpus::interval(), 3);
    const ProductComplex P(corpus::interval(), 3);
    const Subcomplex fat1 = fat_diagonal(P, prod, 1);
    const Subcomplex fat2 = fat_diagonal(P, prod, 2);
    CHECK(fat2.total_cells() < fat1.total_cells());
    for (const Simplex& s : fat2.all_simplices()) CHECK(fat1.contains(s));
    // depth 1 catches every vertex with a repeated coordinate: all 8 of them
    CHECK(fat1.count(0) == 8);
    // depth 2 catches exactly the two constant rows
    CHECK(fat2.count(0) == 2);
}

TEST_CASE("coordinate transpositions act simplicially on the product") {
    const SimplicialComplex prod = product_complex(corpus::circle(), 2);
    const ProductComplex P(corpus::circle(), 2);
    const auto gens = coordinate_transpositions(P);
    REQUIRE(gens.size() == 1);
    const auto& g = gens[0];
    REQUIRE(static_cast<std::int64_t>(g.size()) == P.vertex_count());
    for (const Simplex& s : prod.all_simplices()) {
        Simplex image;
        for (Vertex v : s) image.push_back(g[static_cast<std::size_t>(v)]);
        std::sort(image.begin(), image.end());
        CHECK(prod.contains(image));
    }
    // swapping twice is the identity
    for (std::size_t v = 0; v < g.size(); ++v)
        CHECK(g[static_cast<std::size_t>(g[v])] == static_cast<Vertex>(v));
}

TEST_CASE("truncated products agree with the full one") {
    const SimplicialComplex full = product_complex(corpus::interval(), 3);
    const SimplicialComplex low = product_complex(corpus::interval(), 3, 1);
    CHECK(low.dim() == 1);
    for (int p = 0; p <= 1; ++p) CHECK(low.count(p) == full.count(p));
}

TEST_CASE("enumeration respects the cell budget") {
    CHECK_THROWS_AS(product_complex(corpus::square(), 3, -1, 50), std::length_error);
}

TEST_CASE("degenerate parameters are rejected") {
    CHECK_THROWS_AS(product_complex(corpus::circle(), 0), std::invalid_argument);
    const SimplicialComplex one = product_complex(corpus::circle(), 1);
    CHECK(one.count(0) == 3);
    CHECK(one.count(1) == 3);
}
