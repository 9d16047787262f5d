#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "confspace/coreduce.hpp"
#include "confspace/corpus.hpp"
#include "confspace/homology.hpp"
#include "confspace/pi1.hpp"
#include "confspace/retract.hpp"
#include "confspace/skeletal.hpp"
#include "confspace/snf.hpp"
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

void check_against_oracle(const SimplicialComplex& K, int up_to) {
    INFO("complex " << K.name());
    std::vector<oracle::Cell> facets;
    for (const Simplex& f : K.facets()) facets.emplace_back(f.begin(), f.end());
    const auto want = oracle::homology_of_facets(facets, up_to);
    const HomologyResult got = homology(K, up_to);
    REQUIRE(got.groups.size() == want.size());
    for (int i = 0; i <= up_to; ++i) {
        INFO("dimension " << i);
        CHECK(as_oracle(got[static_cast<std::size_t>(i)]) == want[static_cast<std::size_t>(i)]);
    }
}

SimplicialComplex random_complex(std::mt19937& rng, int verts, int n_facets) {
    std::uniform_int_distribution<int> size_d(1, 4);
    std::uniform_int_distribution<Vertex> vert_d(0, static_cast<Vertex>(verts - 1));
    std::vector<Simplex> facets;
    for (int i = 0; i < n_facets; ++i) {
        Simplex s;
        const int size = size_d(rng);
        while (static_cast<int>(s.size()) < size) {
            const Vertex v = vert_d(rng);
            if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
        }
        std::sort(s.begin(), s.end());
        facets.push_back(std::move(s));
    }
    for (Vertex v = 0; v < verts; ++v) facets.push_back({v});  // no isolated-label gaps
    std::vector<std::string> labels;
    for (int v = 0; v < verts; ++v) labels.push_back(std::to_string(v));
    return SimplicialComplex::from_facets(std::move(labels), facets, "random");
}

DenseMatrix random_matrix(std::mt19937& rng, std::int64_t rows, std::int64_t cols) {
    std::uniform_int_distribution<int> val(-4, 4);
    DenseMatrix a(rows, cols);
    for (std::int64_t i = 0; i < rows; ++i)
        for (std::int64_t j = 0; j < cols; ++j) a.at(i, j) = val(rng);
    return a;
}

std::vector<MatrixEntry> entries_of(const DenseMatrix& a) {
    std::vector<MatrixEntry> out;
    for (std::int64_t i = 0; i < a.n_rows; ++i)
        for (std::int64_t j = 0; j < a.n_cols; ++j)
            if (a.at(i, j) != 0)
                out.push_back({i, j, a.at(i, j).convert_to<std::int64_t>()});
    return out;
}

}  // namespace

TEST_CASE("smith normal form of a fixed diagonal matrix") {
    const SmithResult r = smith_normal_form(2, 2, {{0, 0, 2}, {1, 1, 3}});
    CHECK(r.rank == 2);
    CHECK(r.nontrivial_factors == std::vector<std::int64_t>{6});

    const SmithResult zero = smith_normal_form(3, 4, {});
    CHECK(zero.rank == 0);
    CHECK(zero.nontrivial_factors.empty());
}

TEST_CASE("smith normal form matches the dense oracle on random matrices") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 40; ++trial) {
        const auto rows = static_cast<std::int64_t>(2 + trial % 7);
        const auto cols = static_cast<std::int64_t>(2 + (trial * 3) % 8);
        const DenseMatrix a = random_matrix(rng, rows, cols);

        oracle::Mat m(static_cast<std::size_t>(rows),
                      std::vector<oracle::Int>(static_cast<std::size_t>(cols)));
        for (std::int64_t i = 0; i < rows; ++i)
            for (std::int64_t j = 0; j < cols; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    a.at(i, j).convert_to<long long>();
        const auto diag = oracle::smith_diagonal(m);

        const SmithResult got = smith_normal_form(rows, cols, entries_of(a));
        INFO("trial " << trial);
        CHECK(got.rank == static_cast<std::int64_t>(diag.size()));
        std::vector<std::int64_t> want;
        for (const auto& v : diag)
            if (v > 1) want.push_back(v.convert_to<std::int64_t>());
        CHECK(got.nontrivial_factors == want);

        // invariant factors form a divisibility chain
        for (std::size_t i = 1; i < got.nontrivial_factors.size(); ++i)
            CHECK(got.nontrivial_factors[i] % got.nontrivial_factors[i - 1] == 0);

        CHECK(bareiss_rank(a) == got.rank);
    }
}

TEST_CASE("exact arithmetic path gives the same answers") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const DenseMatrix a = random_matrix(rng, 6, 6);
        const auto entries = entries_of(a);
        const SmithResult fast = smith_normal_form(6, 6, entries);
        const SmithResult exact = detail::smith_core<BigInt>(6, 6, entries);
        CHECK(fast.rank == exact.rank);
        CHECK(fast.nontrivial_factors == exact.nontrivial_factors);
    }
}

TEST_CASE("dense smith transforms are unimodular and diagonalize") {
    std::mt19937 rng(4321);
    for (int trial = 0; trial < 15; ++trial) {
        const DenseMatrix a = random_matrix(rng, 4 + trial % 3, 4 + (trial * 2) % 4);
        const DenseSmithResult s = dense_smith(a, true);
        const DenseMatrix prod = s.U.multiply(a).multiply(s.V);
        for (std::int64_t i = 0; i < prod.n_rows; ++i)
            for (std::int64_t j = 0; j < prod.n_cols; ++j) {
                const BigInt want = (i == j && i < static_cast<std::int64_t>(s.diagonal.size()))
                                        ? s.diagonal[static_cast<std::size_t>(i)]
                                        : BigInt(0);
                CHECK(prod.at(i, j) == want);
            }
        const BigInt du = bareiss_determinant(s.U);
        const BigInt dv = bareiss_determinant(s.V);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        for (std::size_t i = 1; i < s.diagonal.size(); ++i) {
            if (s.diagonal[i - 1] == 0) {
                CHECK(s.diagonal[i] == 0);
            } else {
                CHECK(s.diagonal[i] % s.diagonal[i - 1] == 0);
            }
        }
    }
}

TEST_CASE("large entries fall through to the exact residual") {
    // second row is 1500000000 times the first; every entry is even, so the
    // rank is 1 with invariant factor 2, and no 64-bit product of these
    // entries is representable
    const std::int64_t b = 3000000000;
    const std::int64_t c = 4500000000000000000;
    const SmithResult r = smith_normal_form(2, 2, {{0, 0, 2}, {0, 1, b}, {1, 0, b}, {1, 1, c}});
    CHECK(r.rank == 1);
    CHECK(r.nontrivial_factors == std::vector<std::int64_t>{2});
}

TEST_CASE("boundary composed with boundary vanishes") {
    for (const auto& K : {corpus::projective_plane(), corpus::boundary_tetrahedron(),
                          corpus::solid_tetrahedron()}) {
        const SkeletalComplex S = SkeletalComplex::from_complex(K);
        for (int p = 2; p <= S.top_dim(); ++p) {
            const DenseMatrix lo = DenseMatrix::from_entries(
                static_cast<std::int64_t>(S.count(p - 2)),
                static_cast<std::int64_t>(S.count(p - 1)), boundary_entries(S, p - 1));
            const DenseMatrix hi = DenseMatrix::from_entries(
                static_cast<std::int64_t>(S.count(p - 1)), static_cast<std::int64_t>(S.count(p)),
                boundary_entries(S, p));
            const DenseMatrix z = lo.multiply(hi);
            for (const auto& v : z.data) CHECK(v == 0);
        }
    }
}

TEST_CASE("homology agrees with the oracle on the corpus") {
    check_against_oracle(corpus::interval(), 1);
    check_against_oracle(corpus::circle(), 1);
    check_against_oracle(corpus::square(), 2);
    check_against_oracle(corpus::boundary_tetrahedron(), 2);
    check_against_oracle(corpus::solid_tetrahedron(), 3);
    check_against_oracle(corpus::three_triangles(), 2);
    check_against_oracle(corpus::wedge_of_circles(3), 1);
    check_against_oracle(corpus::projective_plane(), 2);
}

TEST_CASE("projective plane has two-torsion") {
    const HomologyResult h = homology(corpus::projective_plane(), 2);
    CHECK(h[0] == HomologyGroup{1, {}});
    CHECK(h[1] == HomologyGroup{0, {2}});
    CHECK(h[2] == HomologyGroup{0, {}});
}

TEST_CASE("homology agrees with the oracle on random complexes") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 12; ++trial)
        check_against_oracle(random_complex(rng, 6 + trial % 3, 5 + trial), 2);
}

TEST_CASE("reduction passes are invisible to homology") {
    // Three routes to the same groups: the default coreduction cascade, the
    // free-pair collapser, and Smith on the raw boundary matrices.
    std::mt19937 rng(777);
    HomologyOptions collapse_only, plain;
    collapse_only.coreduce = false;
    plain.coreduce = false;
    plain.collapse = false;
    for (int trial = 0; trial < 6; ++trial) {
        const SimplicialComplex K = random_complex(rng, 7, 8 + trial);
        const SkeletalComplex S = SkeletalComplex::from_complex(K);
        for (bool reduced : {false, true}) {
            const HomologyResult a = homology(S, 2, reduced);
            const HomologyResult b = homology(S, 2, reduced, collapse_only);
            const HomologyResult c = homology(S, 2, reduced, plain);
            for (int i = 0; i <= 2; ++i) {
                CHECK(a[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(i)]);
                CHECK(a[static_cast<std::size_t>(i)] == c[static_cast<std::size_t>(i)]);
            }
        }
    }
    const SkeletalComplex rp2 = SkeletalComplex::from_complex(corpus::projective_plane());
    CHECK(homology(rp2, 2)[1] == homology(rp2, 2, false, plain)[1]);
    CHECK(homology(rp2, 2)[1] == homology(rp2, 2, false, collapse_only)[1]);
}

TEST_CASE("coreduction shrinks a flag model that has no free face at all") {
    // Truncated order complexes are the motivating case: the collapser finds
    // nothing, while the seeded cascade still clears out the bottom.
    const RetractModel M = delta_model(corpus::circle(), 2, 2, 3);
    const SkeletalComplex collapsed = collapse_reduce(M.W, 3);
    CHECK(collapsed.total_cells() == M.W.total_cells());
    const CoreducedChain C = coreduce_chain(M.W, 3);
    CHECK(C.components == 1);
    CHECK(C.critical_total() < static_cast<std::int64_t>(M.W.total_cells()) / 2);
    // Survivors still know the torus: H_1 rank two over the critical complex.
    const HomologyResult h = homology(M.W, 2);
    CHECK(h[0] == HomologyGroup{1, {}});
    CHECK(h[1] == HomologyGroup{2, {}});
    CHECK(h[2] == HomologyGroup{1, {}});
}

TEST_CASE("collapse keeps complexes and reaches points on cones") {
    const SkeletalComplex tet = SkeletalComplex::from_complex(corpus::solid_tetrahedron());
    CHECK(collapses_to_point(tet));
    const SkeletalComplex sphere = SkeletalComplex::from_complex(corpus::boundary_tetrahedron());
    CHECK_FALSE(collapses_to_point(sphere));
    const SkeletalComplex reduced = collapse_reduce(sphere, sphere.top_dim());
    CHECK(reduced.euler_characteristic() == 2);
}

TEST_CASE("component bookkeeping") {
    const SimplicialComplex two = SimplicialComplex::from_facets(
        {"a", "b", "c", "d"}, {{0, 1}, {2, 3}}, "two-edges");
    const SkeletalComplex S = SkeletalComplex::from_complex(two);
    CHECK(component_count(S) == 2);
    const auto pieces = split_components(S);
    REQUIRE(pieces.size() == 2);
    for (const auto& piece : pieces) {
        CHECK(piece.count(0) == 2);
        CHECK(piece.count(1) == 1);
        CHECK(collapses_to_point(piece));
    }
}

TEST_CASE("homological connectivity follows the usual conventions") {
    CHECK(homological_connectivity(corpus::boundary_tetrahedron()).value == 1);
    CHECK(homological_connectivity(corpus::circle()).value == 0);
    CHECK(homological_connectivity(corpus::projective_plane()).value == 0);
    CHECK(homological_connectivity(corpus::solid_tetrahedron()).value == kInfiniteConnectivity);

    const SimplicialComplex two = SimplicialComplex::from_facets(
        {"a", "b", "c", "d"}, {{0, 1}, {2, 3}}, "two-edges");
    CHECK(homological_connectivity(two).value == -1);

    SkeletalComplex empty;
    CHECK(homological_connectivity(empty).value == -2);
}

TEST_CASE("truncated skeletons refuse out-of-range homology") {
    SkeletalComplex S = SkeletalComplex::from_complex(corpus::boundary_tetrahedron());
    S.truncated = true;
    S.complete_up_to = 1;
    CHECK_THROWS_AS(homology(S, 1), std::invalid_argument);
    CHECK_NOTHROW(homology(S, 0));
}

TEST_CASE("fundamental group presentations abelianize to first homology") {
    for (const auto& K : {corpus::circle(), corpus::wedge_of_circles(2),
                          corpus::wedge_of_circles(3), corpus::projective_plane(),
                          corpus::boundary_tetrahedron(), corpus::square()}) {
        INFO("complex " << K.name());
        const Presentation P = pi1_presentation(K);
        CHECK(abelianization(P) == homology(K, 1)[1]);
    }
}

TEST_CASE("trivial groups certify and nontrivial ones do not") {
    CHECK(presentation_trivializes(pi1_presentation(corpus::boundary_tetrahedron())));
    CHECK(presentation_trivializes(pi1_presentation(corpus::solid_tetrahedron())));
    CHECK(presentation_trivializes(pi1_presentation(corpus::square())));
    CHECK_FALSE(presentation_trivializes(pi1_presentation(corpus::circle())));
    CHECK_FALSE(presentation_trivializes(pi1_presentation(corpus::projective_plane())));
}

TEST_CASE("pi1 requires a connected complex") {
    const SimplicialComplex two = SimplicialComplex::from_facets(
        {"a", "b", "c", "d"}, {{0, 1}, {2, 3}}, "two-edges");
    CHECK_THROWS_AS(pi1_presentation(two), std::invalid_argument);
}

TEST_CASE("word utilities") {
    std::vector<std::int32_t> w{1, 2, -2, -1, 3};
    detail::free_reduce(w);
    CHECK(w == std::vector<std::int32_t>{3});
    std::vector<std::int32_t> c{1, 3, -1};
    detail::cyclic_reduce(c);
    CHECK(c == std::vector<std::int32_t>{3});
    CHECK(detail::inverse_word({1, -2, 3}) == std::vector<std::int32_t>{-3, 2, -1});
}
