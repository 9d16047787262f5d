#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "confspace/corpus.hpp"
#include "confspace/homology.hpp"
#include "confspace/io.hpp"
#include "confspace/local.hpp"
#include "confspace/orbit.hpp"
#include "confspace/pi1.hpp"
#include "confspace/product.hpp"
#include "confspace/retract.hpp"

namespace confspace {

struct CheckOutcome {
    bool ok = true;
    std::string detail;
};

/**
 * Main comparison statement at the level this library can decide
 * integrally: the first homology of the unordered model agrees with the
 * first homology of the base once the diagonal is at least two deep. When
 * the base has trivial first homology and its fundamental group certifies
 * trivial, the same certificate is required of the model.
 */
inline CheckOutcome theorem_first_homology_check(const SimplicialComplex& X, int n, int d) {
    if (d < 2) throw std::invalid_argument("comparison check needs d >= 2");
    CheckOutcome out;
    const HomologyGroup hx = homology(X, 1)[1];
    BraidOptions opts;
    opts.max_dim = 2;
    const BraidModel B = braid_model(X, n, d, opts);
    if (!B.certificate.ok) {
        out.ok = false;
        out.detail = "quotient certificate failed: " + B.certificate.detail;
        return out;
    }
    const HomologyGroup hb = homology(B.Q, 1)[1];
    if (!(hx == hb)) {
        out.ok = false;
        out.detail = "H1 mismatch: base " + to_string(hx) + ", model " + to_string(hb);
        return out;
    }
    out.detail = "H1 = " + to_string(hx);
    if (hx.trivial()) {
        const bool base_simply = presentation_trivializes(pi1_presentation(X));
        if (base_simply) {
            const bool model_simply = presentation_trivializes(pi1_presentation(B.Q));
            if (!model_simply) {
                out.ok = false;
                out.detail += "; base pi1 certified trivial but model certificate failed";
                return out;
            }
            out.detail += "; pi1 certified trivial on base and model";
        }
    }
    return out;
}

/**
 * Range comparison for the ordered model: through the range given by the
 * local dimension of the base, the model must have the homology of the
 * full product.
 */
inline CheckOutcome theorem_range_check(const SimplicialComplex& X, int n, int d, int cap = 2) {
    CheckOutcome out;
    const LocalSummary local = local_homotopical_dimension(X);
    const int r = local.value >= kInfiniteConnectivity ? cap : local.value;
    const int bound = theorem_range_bound(r, d);
    const int m = std::min(bound, cap);
    std::ostringstream os;
    os << "r=" << (local.value >= kInfiniteConnectivity ? std::string("inf")
                                                        : std::to_string(local.value))
       << " bound=" << bound;
    if (m < 0) {
        out.detail = os.str() + "; empty range, nothing to compare";
        return out;
    }
    const RetractModel M = delta_model(X, n, d, m + 1);
    const HomologyResult hw = homology(M.W, m);
    const HomologyResult hp = homology(product_complex(X, n, m + 1), m);
    for (int i = 0; i <= m; ++i) {
        if (!(hw[static_cast<std::size_t>(i)] == hp[static_cast<std::size_t>(i)])) {
            out.ok = false;
            out.detail = os.str() + "; H" + std::to_string(i) + " mismatch: model " +
                         to_string(hw[static_cast<std::size_t>(i)]) + ", product " +
                         to_string(hp[static_cast<std::size_t>(i)]);
            return out;
        }
    }
    out.detail = os.str() + "; homology agrees through dimension " + std::to_string(m);
    return out;
}

struct VerificationCase {
    std::string id;
    std::string suite;
    std::string kind;
    std::string provenance;
    nlohmann::json params;
};

struct CaseResult {
    std::string id;
    std::string status;  // pass | fail | skipped (budget) | error
    std::string detail;
    double seconds = 0.0;
};

struct SuiteReport {
    std::string suite;
    std::vector<CaseResult> results;
    int passed = 0, failed = 0, skipped = 0, errors = 0;
    bool ok() const { return failed == 0 && errors == 0; }
};

inline std::vector<VerificationCase> parse_cases(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("cases") || !j["cases"].is_array())
        throw InputError("suites file: expected an object with a 'cases' array");
    std::vector<VerificationCase> out;
    for (const auto& c : j["cases"]) {
        VerificationCase vc;
        vc.id = c.value("id", "");
        vc.suite = c.value("suite", "");
        vc.kind = c.value("kind", "");
        vc.provenance = c.value("provenance", "");
        vc.params = c.value("params", nlohmann::json::object());
        if (vc.id.empty() || vc.suite.empty() || vc.kind.empty())
            throw InputError("suites file: every case needs id, suite and kind");
        out.push_back(std::move(vc));
    }
    return out;
}

inline std::vector<VerificationCase> load_cases(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open suites file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("suites file: " + std::string(e.what()));
    }
    return parse_cases(j);
}

namespace detail {

inline SimplicialComplex case_complex(const nlohmann::json& params, const std::string& key) {
    if (!params.contains(key) || !params[key].is_string())
        throw InputError("case parameter '" + key + "' must name a complex");
    const std::string name = params[key].get<std::string>();
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json") return load_complex(name);
    return corpus::by_name(name);
}

inline HomologyGroup expect_group(const nlohmann::json& g) {
    HomologyGroup out;
    if (g.is_array() && g.size() == 2 && g[0].is_number_integer() && g[1].is_array()) {
        out.betti = g[0].get<std::int64_t>();
        for (const auto& t : g[1]) out.torsion.push_back(t.get<std::int64_t>());
        return out;
    }
    throw InputError("expected homology group as [betti, [torsion...]]");
}

inline CheckOutcome compare_homology(const HomologyResult& got, const nlohmann::json& expect) {
    CheckOutcome out;
    if (!expect.is_array()) throw InputError("'expect' must be an array of groups");
    for (std::size_t i = 0; i < expect.size(); ++i) {
        const HomologyGroup want = expect_group(expect[i]);
        if (i >= got.groups.size() || !(got.groups[i] == want)) {
            out.ok = false;
            out.detail = "H" + std::to_string(i) + " = " +
                         (i < got.groups.size() ? to_string(got.groups[i]) : "absent") +
                         ", expected " + to_string(want);
            return out;
        }
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < got.groups.size(); ++i)
        os << (i ? ", " : "") << "H" << i << "=" << to_string(got.groups[i]);
    out.detail = os.str();
    return out;
}

inline CheckOutcome run_case(const VerificationCase& vc) {
    const auto& P = vc.params;
    const auto geti = [&](const char* key, int fallback) { return P.value(key, fallback); };

    if (vc.kind == "product_counts") {
        const SimplicialComplex X = case_complex(P, "base");
        const SimplicialComplex prod = product_complex(X, geti("n", 2));
        std::vector<std::int64_t> got;
        for (int p = 0; p <= prod.dim(); ++p) got.push_back(static_cast<std::int64_t>(prod.count(p)));
        std::vector<std::int64_t> want;
        for (const auto& v : P.at("expect")) want.push_back(v.get<std::int64_t>());
        CheckOutcome out;
        out.ok = got == want;
        std::ostringstream os;
        os << "cells per dimension:";
        for (auto v : got) os << ' ' << v;
        out.detail = os.str();
        return out;
    }
    if (vc.kind == "delta_homology" || vc.kind == "braid_homology" ||
        vc.kind == "product_homology") {
        const SimplicialComplex X = case_complex(P, "base");
        const int up_to = geti("up_to", 1);
        const bool reduced = P.value("reduced", false);
        HomologyResult h;
        if (vc.kind == "delta_homology") {
            if (P.value("core", false)) {
                // Beat-point core of the poset: same homotopy type, small
                // enough to enumerate in full on thick instances.
                const CoreModel M = delta_core_model(X, geti("n", 2), geti("d", 1));
                h = homology(M.W, up_to, reduced);
            } else {
                const RetractModel M = delta_model(X, geti("n", 2), geti("d", 1), up_to + 1);
                h = homology(M.W, up_to, reduced);
            }
        } else if (vc.kind == "braid_homology") {
            BraidOptions opts;
            opts.max_dim = up_to + 1;
            const BraidModel B = braid_model(X, geti("n", 2), geti("d", 1), opts);
            if (!B.certificate.ok)
                return {false, "quotient certificate failed: " + B.certificate.detail};
            h = homology(B.Q, up_to, reduced);
        } else {
            h = homology(product_complex(X, geti("n", 2), up_to + 1), up_to, reduced);
        }
        return compare_homology(h, P.at("expect"));
    }
    if (vc.kind == "delta_components") {
        const SimplicialComplex X = case_complex(P, "base");
        const RetractModel M = delta_model(X, geti("n", 2), geti("d", 1));
        const auto pieces = split_components(M.W);
        CheckOutcome out;
        const auto want = static_cast<std::int64_t>(geti("expect", 1));
        if (static_cast<std::int64_t>(pieces.size()) != want) {
            out.ok = false;
            out.detail = std::to_string(pieces.size()) + " components, expected " +
                         std::to_string(want);
            return out;
        }
        if (P.value("acyclic", false)) {
            for (const auto& piece : pieces)
                if (!reduced_homology_trivial(piece, piece.top_dim()))
                    return {false, "a component has nonvanishing reduced homology"};
        }
        out.detail = std::to_string(pieces.size()) + " components";
        return out;
    }
    if (vc.kind == "delta_pi1") {
        const SimplicialComplex X = case_complex(P, "base");
        const RetractModel M = delta_model(X, geti("n", 2), geti("d", 1), 2);
        const HomologyGroup ab = abelianization(pi1_presentation(M.W));
        HomologyGroup want;
        want.betti = geti("rank", 0);
        if (P.contains("torsion"))
            for (const auto& t : P["torsion"]) want.torsion.push_back(t.get<std::int64_t>());
        CheckOutcome out;
        out.ok = ab == want;
        out.detail = "abelianized pi1 = " + to_string(ab);
        return out;
    }
    if (vc.kind == "fiber_contractible") {
        const IntervalFiberModel F = simplex_interval_model(geti("n", 3), geti("d", 2));
        const SkeletalComplex S = SkeletalComplex::from_complex(F.model);
        CheckOutcome out;
        if (component_count(S) != 1) return {false, "fiber model is not connected"};
        const bool collapsed = collapses_to_point(S);
        const bool acyclic = reduced_homology_trivial(S, F.model.dim());
        out.ok = acyclic && (collapsed || presentation_trivializes(pi1_presentation(F.model)));
        out.detail = collapsed ? "collapses to a point"
                               : (out.ok ? "acyclic with trivializing presentation"
                                         : "contractibility certificates failed");
        return out;
    }
    if (vc.kind == "localdim") {
        const SimplicialComplex X = case_complex(P, "base");
        const LocalSummary got = local_homotopical_dimension(X);
        const CombinatorialLocalDim comb = local_dim_combinatorial(X);
        CheckOutcome out;
        const int want = geti("expect", 0);
        if (got.value != want)
            return {false, "local dimension " + std::to_string(got.value) + ", expected " +
                               std::to_string(want)};
        if (comb.value != got.value)
            return {false, "combinatorial bound " + std::to_string(comb.value) +
                               " disagrees with " + std::to_string(got.value)};
        out.detail = "r = " + std::to_string(got.value) + ", combinatorial bound agrees";
        return out;
    }
    if (vc.kind == "restriction") {
        const SimplicialComplex X = case_complex(P, "base");
        std::vector<Vertex> span;
        for (const auto& v : P.at("span")) span.push_back(v.get<Vertex>());
        const RestrictionReport rep =
            restriction_check(X, span, geti("n", 2), geti("d", 1), geti("max_dim", 2));
        return {rep.ok, rep.ok ? std::to_string(rep.checked) + " cells matched" : rep.detail};
    }
    if (vc.kind == "regularity") {
        const SimplicialComplex X = case_complex(P, "base");
        BraidOptions opts;
        opts.max_dim = geti("max_dim", 2);
        const BraidModel B = braid_model(X, geti("n", 2), geti("d", 1), opts);
        return {B.certificate.ok, B.certificate.detail};
    }
    if (vc.kind == "theorem_first_homology")
        return theorem_first_homology_check(case_complex(P, "base"), geti("n", 2), geti("d", 2));
    if (vc.kind == "theorem_range")
        return theorem_range_check(case_complex(P, "base"), geti("n", 2), geti("d", 1),
                                   geti("cap", 2));
    throw InputError("unknown case kind: " + vc.kind);
}

}  // namespace detail

/**
 * Run every case of one suite. `jobs` > 1 dispatches cases through
 * std::async; `budget_seconds` <= 0 means no budget, otherwise cases that
 * would start past the budget are skipped.
 */
inline SuiteReport run_suite(const std::vector<VerificationCase>& cases, const std::string& suite,
                             int jobs = 1, double budget_seconds = 0.0) {
    SuiteReport rep;
    rep.suite = suite;
    std::vector<const VerificationCase*> selected;
    for (const auto& c : cases)
        if (c.suite == suite) selected.push_back(&c);

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    auto run_one = [](const VerificationCase& vc) {
        CaseResult r;
        r.id = vc.id;
        const auto s0 = std::chrono::steady_clock::now();
        try {
            const CheckOutcome out = detail::run_case(vc);
            r.status = out.ok ? "pass" : "fail";
            r.detail = out.detail;
        } catch (const std::exception& e) {
            r.status = "error";
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - s0).count();
        return r;
    };

    std::size_t next = 0;
    while (next < selected.size()) {
        if (budget_seconds > 0.0 && elapsed() > budget_seconds) {
            for (; next < selected.size(); ++next)
                rep.results.push_back({selected[next]->id, "skipped (budget)", "", 0.0});
            break;
        }
        if (jobs <= 1) {
            rep.results.push_back(run_one(*selected[next]));
            ++next;
        } else {
            std::vector<std::future<CaseResult>> batch;
            for (int k = 0; k < jobs && next < selected.size(); ++k, ++next)
                batch.push_back(std::async(std::launch::async, run_one, *selected[next]));
            for (auto& f : batch) rep.results.push_back(f.get());
        }
    }
    for (const auto& r : rep.results) {
        if (r.status == "pass")
            ++rep.passed;
        else if (r.status == "fail")
            ++rep.failed;
        else if (r.status == "error")
            ++rep.errors;
        else
            ++rep.skipped;
    }
    return rep;
}

inline void print_report(const SuiteReport& rep, std::ostream& os) {
    std::size_t width = 4;
    for (const auto& r : rep.results) width = std::max(width, r.id.size());
    for (const auto& r : rep.results) {
        os << std::left << std::setw(static_cast<int>(width) + 2) << r.id << std::setw(18)
           << r.status << std::right << std::fixed << std::setprecision(2) << std::setw(8)
           << r.seconds << "s";
        if (!r.detail.empty()) os << "  " << r.detail;
        os << '\n';
    }
    os << rep.suite << ": " << rep.passed << " passed, " << rep.failed << " failed, "
       << rep.errors << " errors, " << rep.skipped << " skipped\n";
}

inline nlohmann::json report_to_json(const SuiteReport& rep) {
    nlohmann::json j;
    j["suite"] = rep.suite;
    j["passed"] = rep.passed;
    j["failed"] = rep.failed;
    j["errors"] = rep.errors;
    j["skipped"] = rep.skipped;
    j["results"] = nlohmann::json::array();
    for (const auto& r : rep.results)
        j["results"].push_back({{"id", r.id},
                                {"status", r.status},
                                {"detail", r.detail},
                                {"seconds", r.seconds}});
    return j;
}

}  // namespace confspace
