#include <catch2/catch_amalgamated.hpp>

#include "confspace/corpus.hpp"
#include "confspace/homology.hpp"
#include "confspace/pi1.hpp"
#include "confspace/retract.hpp"

using namespace confspace;

TEST_CASE("skeleton of the interval with three points and depth one") {
    const ProductSkeleton S(corpus::interval(), 3, 1);
    // every single row of {0,1}^3 repeats a coordinate, so no vertices survive
    CHECK(S.count(0) == 0);
    CHECK(S.count(1) == 6);
    CHECK(S.count(2) == 12);
    CHECK(S.count(3) == 6);
    CHECK(S.top_dim() == 3);
    CHECK(S.total() == 24);
}

TEST_CASE("ids, rows and labels round trip") {
    const ProductSkeleton S(corpus::circle(), 2, 1);
    REQUIRE(S.total() > 0);
    for (std::int64_t id = 0; id < S.total(); ++id) {
        const auto rows = S.rows_of(id);
        CHECK(static_cast<int>(rows.size()) == S.dim_of(id) + 1);
        CHECK(S.id_of(rows) == id);
        CHECK(S.product().is_simplex(rows));
        CHECK_FALSE(S.product().in_fat_diagonal(rows, S.depth()));
    }
    const std::int64_t absent[] = {0, 1, 2, 3};
    CHECK(S.id_of(absent) == -1);
    CHECK(S.label_of(0).front() == '{');
}

TEST_CASE("allowed faces match a direct enumeration") {
    const ProductSkeleton S(corpus::circle(), 2, 1);
    const ProductComplex& P = S.product();
    for (std::int64_t id = 0; id < S.total(); ++id) {
        const auto rows = S.rows_of(id);
        const int q = static_cast<int>(rows.size()) - 1;
        std::vector<std::int32_t> want;
        for (std::uint32_t m = 1; m + 1 < (1u << (q + 1)); ++m) {
            std::vector<std::int64_t> sub;
            for (int j = 0; j <= q; ++j)
                if (m & (1u << j)) sub.push_back(rows[static_cast<std::size_t>(j)]);
            if (P.in_fat_diagonal(sub, S.depth())) continue;
            const std::int64_t f = S.id_of(sub);
            REQUIRE(f >= 0);
            want.push_back(static_cast<std::int32_t>(f));
        }
        std::sort(want.begin(), want.end());
        CHECK(S.allowed_faces(id) == want);
    }
}

TEST_CASE("deeper diagonals only add simplices") {
    const ProductSkeleton shallow(corpus::circle(), 2, 1);
    const ProductSkeleton deep(corpus::circle(), 2, 2);
    CHECK(shallow.total() < deep.total());
    for (std::int64_t id = 0; id < shallow.total(); ++id)
        CHECK(deep.id_of(shallow.rows_of(id)) >= 0);
}

TEST_CASE("transposing coordinates permutes the allowed simplices") {
    const ProductSkeleton S(corpus::circle(), 2, 1);
    const auto gens = coordinate_transpositions(S.product());
    REQUIRE(gens.size() == 1);
    for (std::int64_t id = 0; id < S.total(); ++id) {
        const auto rows = S.rows_of(id);
        std::vector<std::int64_t> image;
        for (const std::int64_t code : rows) {
            const auto row = S.product().decode(code);
            std::vector<Vertex> swapped(row.rbegin(), row.rend());
            image.push_back(S.product().encode(swapped));
        }
        std::sort(image.begin(), image.end());
        CHECK(S.id_of(image) >= 0);
    }
}

TEST_CASE("two points on an interval give two contractible chambers") {
    const RetractModel M = delta_model(corpus::interval(), 2, 1);
    CHECK(M.W.count(0) == 8);  // 2 + 4 + 2 allowed simplices become vertices
    const auto pieces = split_components(M.W);
    REQUIRE(pieces.size() == 2);
    for (const auto& piece : pieces) CHECK(collapses_to_point(piece));
}

TEST_CASE("three points on an interval give six contractible chambers") {
    const RetractModel M = delta_model(corpus::interval(), 3, 1);
    CHECK(M.W.count(0) == 24);
    const auto pieces = split_components(M.W);
    REQUIRE(pieces.size() == 6);
    for (const auto& piece : pieces) {
        CHECK(collapses_to_point(piece));
        CHECK(reduced_homology_trivial(piece, piece.top_dim()));
    }
}

TEST_CASE("with no diagonal condition the model subdivides the product") {
    // depth 2 with two factors forbids nothing, so the flag complex is the
    // order complex of the whole product: same homotopy type as the torus
    const RetractModel M = delta_model(corpus::circle(), 2, 2);
    const SimplicialComplex T = product_complex(corpus::circle(), 2);
    CHECK(M.W.count(0) == static_cast<std::size_t>(T.total_cells()));
    CHECK(M.W.euler_characteristic() == euler_characteristic(T));
    const HomologyResult hw = homology(M.W, 2);
    const HomologyResult ht = homology(T, 2);
    for (int i = 0; i <= 2; ++i)
        CHECK(hw[static_cast<std::size_t>(i)] == ht[static_cast<std::size_t>(i)]);
}

TEST_CASE("truncating the flag complex keeps the low layers intact") {
    const ProductSkeleton S(corpus::interval(), 3, 2);
    const SkeletalComplex full = flag_complex(S);
    const SkeletalComplex low = flag_complex(S, 2);
    CHECK_FALSE(full.truncated);
    CHECK(low.truncated);
    CHECK(low.complete_up_to == 2);
    REQUIRE(low.top_dim() <= 2);
    for (int p = 0; p <= low.top_dim(); ++p) {
        REQUIRE(low.count(p) == full.count(p));
        CHECK(low.cells[static_cast<std::size_t>(p)] == full.cells[static_cast<std::size_t>(p)]);
    }
}

TEST_CASE("flag enumeration respects the budget") {
    const ProductSkeleton S(corpus::square(), 2, 1);
    CHECK_THROWS_AS(flag_complex(S, -1, 10), std::length_error);
}

TEST_CASE("models restrict to full subcomplexes of the base") {
    const RestrictionReport a = restriction_check(corpus::circle(), {0, 1}, 2, 1);
    CHECK(a.ok);
    CHECK(a.checked > 0);
    const RestrictionReport b = restriction_check(corpus::square(), {0, 1, 2}, 2, 1);
    CHECK(b.ok);
    const RestrictionReport c = restriction_check(corpus::three_triangles(), {0, 1, 2, 3}, 2, 2);
    CHECK(c.ok);
}

TEST_CASE("explicit model export is a valid complex") {
    const RetractModel M = delta_model(corpus::interval(), 2, 1);
    const SimplicialComplex W = M.to_complex("w");
    CHECK(validate(W).ok);
    CHECK(W.total_cells() == M.W.total_cells());
    CHECK(W.name() == "w");
}

TEST_CASE("interval fiber models are contractible in the verified range") {
    {
        const IntervalFiberModel F = simplex_interval_model(3, 2);
        CHECK(F.model.count(0) == 4);  // the barycenter and three edge midpoints
        CHECK(F.model.count(1) == 3);
        CHECK(collapses_to_point(SkeletalComplex::from_complex(F.model)));
    }
    {
        const IntervalFiberModel F = simplex_interval_model(4, 2);
        CHECK(F.model.count(0) == 7);  // two diagonals, four triangles, one center
        CHECK(homological_connectivity(F.model).value == kInfiniteConnectivity);
        CHECK(presentation_trivializes(pi1_presentation(F.model)));
    }
    {
        const IntervalFiberModel F = simplex_interval_model(4, 3);
        CHECK(F.model.count(0) == 11);  // everything but the four corners
        CHECK(homological_connectivity(F.model).value == kInfiniteConnectivity);
        CHECK(presentation_trivializes(pi1_presentation(F.model)));
    }
    CHECK_THROWS_AS(simplex_interval_model(1, 2), std::invalid_argument);
}

TEST_CASE("beat-point core keeps the homotopy type of the ordered model") {
    // Across bases, depths, and copy counts: homology of the flag complex
    // over the poset core must agree with the full model, torsion included.
    const struct {
        const char* base;
        int n, d, up_to;
    } cases[] = {
        {"interval", 2, 1, 1}, {"interval", 3, 1, 2}, {"interval", 3, 2, 2},
        {"circle", 2, 1, 1},   {"circle", 2, 2, 2},   {"square", 2, 1, 2},
        {"wedge2", 2, 1, 1},
    };
    for (const auto& c : cases) {
        INFO(c.base << " n=" << c.n << " d=" << c.d);
        const SimplicialComplex X = corpus::by_name(c.base);
        const CoreModel C = delta_core_model(X, c.n, c.d);
        const RetractModel M = delta_model(X, c.n, c.d);
        REQUIRE(C.kept_count() <= M.base->total());
        REQUIRE(component_count(C.W) == component_count(M.W));
        const HomologyResult hc = homology(C.W, c.up_to);
        const HomologyResult hm = homology(M.W, c.up_to);
        for (int i = 0; i <= c.up_to; ++i)
            CHECK(hc[static_cast<std::size_t>(i)] == hm[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("the cored flag complex is a full subcomplex of the model") {
    const SimplicialComplex X = corpus::circle();
    const CoreModel C = delta_core_model(X, 2, 2);
    const RetractModel M = delta_model(X, 2, 2);
    // Every chain of the cored model is a chain of the full model, and every
    // full-model chain inside the kept set shows up in the cored model.
    for (int p = 0; p <= C.W.top_dim(); ++p)
        for (std::size_t i = 0; i < C.W.count(p); ++i)
            REQUIRE(M.W.index_of(p, C.W.cell(p, i)) >= 0);
    for (int p = 0; p <= M.W.top_dim(); ++p)
        for (std::size_t i = 0; i < M.W.count(p); ++i) {
            auto t = M.W.cell(p, i);
            bool inside = true;
            for (std::int32_t v : t)
                inside = inside && C.kept[static_cast<std::size_t>(v)];
            if (inside) REQUIRE(C.W.index_of(p, t) >= 0);
        }
}

TEST_CASE("core reduction refuses oversized posets") {
    const ProductSkeleton S(corpus::square(), 2, 1);
    CHECK_THROWS_AS(poset_core_mask(S, 4), std::length_error);
    const std::vector<char> keep = poset_core_mask(S);
    CHECK(static_cast<std::int64_t>(keep.size()) == S.total());
}

TEST_CASE("flag keep mask must match the poset size") {
    const ProductSkeleton S(corpus::interval(), 2, 1);
    CHECK_THROWS_AS(flag_complex(S, -1, 600000000, std::vector<char>(3, 1)),
                    std::invalid_argument);
}
