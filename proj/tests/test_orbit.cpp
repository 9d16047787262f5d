#include <catch2/catch_amalgamated.hpp>

#include "confspace/corpus.hpp"
#include "confspace/homology.hpp"
#include "confspace/orbit.hpp"
#include "confspace/pi1.hpp"
#include "confspace/retract.hpp"

using namespace confspace;

namespace {

SimplicialComplex cycle_complex(int len) {
    std::vector<std::string> labels;
    std::vector<Simplex> facets;
    for (int i = 0; i < len; ++i) {
        labels.push_back(std::to_string(i));
        facets.push_back({static_cast<Vertex>(std::min(i, (i + 1) % len)),
                          static_cast<Vertex>(std::max(i, (i + 1) % len))});
    }
    return SimplicialComplex::from_facets(std::move(labels), facets,
                                          "cycle" + std::to_string(len));
}

}  // namespace

TEST_CASE("permutation groups close under composition") {
    VertexPermutationAction A;
    A.generators = {{1, 0, 2}, {0, 2, 1}};  // two adjacent transpositions
    const auto elems = A.elements();
    CHECK(elems.size() == 6);
    CHECK(A.degree() == 3);
    CHECK(orbit_of(A, 0) == std::vector<Vertex>{0, 1, 2});

    VertexPermutationAction big;
    big.generators = {{1, 0, 2}, {0, 2, 1}};
    CHECK_THROWS_AS(big.elements(3), std::length_error);
}

TEST_CASE("applying permutations keeps simplices canonical") {
    CHECK(apply_permutation({2, 0, 1}, {0, 1}) == Simplex{0, 2});
    CHECK(apply_permutation({1, 2, 0}, {0, 2}) == Simplex{0, 1});
}

TEST_CASE("antipodal hexagon action is regular and quotients to a triangle") {
    const SimplicialComplex C6 = cycle_complex(6);
    VertexPermutationAction A;
    A.generators = {{3, 4, 5, 0, 1, 2}};
    const RegularityReport rep = check_regularity(C6, A);
    REQUIRE(rep.ok);
    const QuotientComplex Q = quotient_complex(C6, A);
    CHECK(Q.complex.count(0) == 3);
    CHECK(Q.complex.count(1) == 3);
    // double cover of the circle: the quotient is again a circle
    CHECK(homology(Q.complex, 1)[1] == HomologyGroup{1, {}});
}

TEST_CASE("rotating a triangle is caught by the orbit condition") {
    const SimplicialComplex C3 = cycle_complex(3);
    VertexPermutationAction rot;
    rot.generators = {{1, 2, 0}};
    const RegularityReport rep = check_regularity(C3, rot);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.detail.find("orbit") != std::string::npos);
    CHECK_THROWS_AS(quotient_complex(C3, rot), std::invalid_argument);
}

TEST_CASE("antipodal square needs the translate condition") {
    // vertex classes alone look fine here: no edge has two vertices in one
    // orbit, yet {0,1} and {1,2} share the class pair and are not translates
    // of each other, so the vertex quotient would glue a 4-cycle to a 2-cycle
    const SimplicialComplex C4 = cycle_complex(4);
    VertexPermutationAction A;
    A.generators = {{2, 3, 0, 1}};
    for (const Simplex& e : C4.cells(1)) {
        const auto o0 = orbit_of(A, e[0]);
        CHECK_FALSE(std::binary_search(o0.begin(), o0.end(), e[1]));
    }
    const RegularityReport rep = check_regularity(C4, A);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.detail.find("translate") != std::string::npos);
}

TEST_CASE("a transposition on one edge degenerates") {
    const SimplicialComplex I = corpus::interval();
    VertexPermutationAction swap_ends;
    swap_ends.generators = {{1, 0}};
    const RegularityReport rep = check_regularity(I, swap_ends);
    REQUIRE_FALSE(rep.ok);
    CHECK_THROWS_AS(quotient_complex(I, swap_ends), std::invalid_argument);
}

TEST_CASE("reflecting the square across its diagonal folds it to a triangle") {
    const SimplicialComplex sq = corpus::square();
    VertexPermutationAction refl;
    refl.generators = {{0, 3, 2, 1}};
    const RegularityReport rep = check_regularity(sq, refl);
    REQUIRE(rep.ok);
    const QuotientComplex Q = quotient_complex(sq, refl);
    CHECK(Q.complex.count(0) == 3);
    CHECK(Q.complex.count(1) == 3);
    CHECK(Q.complex.count(2) == 1);
    CHECK(collapses_to_point(SkeletalComplex::from_complex(Q.complex)));
}

TEST_CASE("actions that do not preserve the complex are rejected") {
    const SimplicialComplex path = SimplicialComplex::from_facets(
        {"0", "1", "2"}, {{0, 1}, {1, 2}}, "path");
    VertexPermutationAction A;
    A.generators = {{1, 0, 2}};  // sends edge {1,2} to {0,2}, which is absent
    const RegularityReport rep = check_regularity(path, A);
    REQUIRE_FALSE(rep.ok);
}

TEST_CASE("braid model agrees with the generic quotient machinery") {
    const RetractModel M = delta_model(corpus::circle(), 2, 1);
    const SimplicialComplex W = M.to_complex("w");

    // the coordinate swap as a permutation of model vertices
    const ProductSkeleton& S = *M.base;
    std::vector<Vertex> perm(static_cast<std::size_t>(S.total()));
    for (std::int64_t id = 0; id < S.total(); ++id) {
        std::vector<std::int64_t> image;
        for (const std::int64_t code : S.rows_of(id)) {
            const auto row = S.product().decode(code);
            std::vector<Vertex> swapped(row.rbegin(), row.rend());
            image.push_back(S.product().encode(swapped));
        }
        std::sort(image.begin(), image.end());
        perm[static_cast<std::size_t>(id)] = static_cast<Vertex>(S.id_of(image));
    }
    VertexPermutationAction A;
    A.generators = {perm};
    REQUIRE(check_regularity(W, A).ok);
    const QuotientComplex Q = quotient_complex(W, A);

    const BraidModel B = braid_model(corpus::circle(), 2, 1);
    REQUIRE(B.certificate.ok);
    CHECK(B.Q.count(0) == Q.complex.count(0));
    for (int p = 0; p <= B.Q.top_dim(); ++p) CHECK(B.Q.count(p) == Q.complex.count(p));

    const HomologyResult hq = homology(Q.complex, 1);
    const HomologyResult hb = homology(B.Q, 1);
    CHECK(hq[0] == hb[0]);
    CHECK(hq[1] == hb[1]);
}

TEST_CASE("unordered pairs on a circle form a Moebius band") {
    const BraidModel B = braid_model(corpus::circle(), 2, 1);
    REQUIRE(B.certificate.ok);
    const HomologyResult h = homology(B.Q, 1);
    CHECK(h[0] == HomologyGroup{1, {}});
    CHECK(h[1] == HomologyGroup{1, {}});
    CHECK(abelianization(pi1_presentation(B.Q)) == HomologyGroup{1, {}});
}

TEST_CASE("unordered pairs on an interval are contractible") {
    const BraidModel B = braid_model(corpus::interval(), 2, 1);
    REQUIRE(B.certificate.ok);
    CHECK(component_count(B.Q) == 1);
    CHECK(collapses_to_point(B.Q));
}

TEST_CASE("braid model of a single point factor is the ordered model") {
    const BraidModel B = braid_model(corpus::circle(), 1, 1);
    CHECK(B.certificate.ok);
    const RetractModel M = delta_model(corpus::circle(), 1, 1);
    for (int p = 0; p <= M.W.top_dim(); ++p) CHECK(B.Q.count(p) == M.W.count(p));
}

TEST_CASE("braid model export carries representative labels") {
    const BraidModel B = braid_model(corpus::interval(), 2, 1);
    const SimplicialComplex Q = B.to_complex("bq");
    CHECK(validate(Q).ok);
    CHECK(Q.num_vertices() == static_cast<std::int64_t>(B.rep_of.size()));
}
