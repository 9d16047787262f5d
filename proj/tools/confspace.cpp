// Command line front end for the configuration space library.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "confspace/confspace.hpp"

namespace {

using namespace confspace;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

struct BaseChoice {
    std::string input_path;
    std::string builtin;
};

void add_base_options(CLI::App* cmd, BaseChoice& base) {
    auto* in = cmd->add_option("--input", base.input_path, "path to a complex JSON file");
    auto* builtin = cmd->add_option("--base", base.builtin,
                                    "builtin complex (see `confspace validate --list`)");
    in->excludes(builtin);
    builtin->excludes(in);
}

SimplicialComplex resolve_base(const BaseChoice& base) {
    if (!base.input_path.empty()) return load_complex(base.input_path);
    if (!base.builtin.empty()) return corpus::by_name(base.builtin);
    throw InputError("give a complex with --input FILE or --base NAME");
}

void print_counts(const SkeletalComplex& K, std::ostream& os) {
    os << "cells by dimension:";
    for (int p = 0; p <= K.top_dim(); ++p) os << ' ' << K.count(p);
    if (K.truncated) os << "  (truncated; complete up to dimension " << K.complete_up_to << ")";
    os << '\n';
}

void print_homology(const HomologyResult& h, bool reduced, std::ostream& os) {
    for (std::size_t i = 0; i < h.groups.size(); ++i)
        os << (reduced ? "~H_" : "H_") << i << " = " << to_string(h.groups[i]) << '\n';
}

int cmd_validate(const std::string& path, bool list_builtins) {
    if (list_builtins) {
        for (const auto& n : corpus::names()) std::cout << n << '\n';
        return kExitOk;
    }
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << '\n';
        return kExitInput;
    }
    nlohmann::json j;
    try {
        in >> j;
        const SimplicialComplex K = complex_from_json(j);
        std::cout << "valid: " << (K.name().empty() ? "(unnamed)" : K.name()) << ", "
                  << K.num_vertices() << " vertices, dimension " << K.dim() << ", "
                  << K.total_cells() << " cells\n";
        return kExitOk;
    } catch (const nlohmann::json::exception& e) {
        std::cout << "invalid: " << e.what() << '\n';
    } catch (const InputError& e) {
        std::cout << "invalid: " << e.what() << '\n';
    }
    return kExitFailed;
}

int cmd_delta_model(const BaseChoice& base, int n, int d, int max_dim, std::int64_t budget,
                    const std::string& out_path) {
    const SimplicialComplex X = resolve_base(base);
    const RetractModel M = delta_model(X, n, d, max_dim, budget);
    std::cout << "delta model of " << X.name() << " with n=" << n << ", d=" << d << '\n';
    print_counts(M.W, std::cout);
    if (!out_path.empty()) {
        save_complex(M.to_complex(), out_path);
        std::cout << "written to " << out_path << '\n';
    }
    return kExitOk;
}

int cmd_braid_model(const BaseChoice& base, int n, int d, int max_dim, std::int64_t budget,
                    bool no_certify, const std::string& out_path) {
    const SimplicialComplex X = resolve_base(base);
    BraidOptions opts;
    opts.max_dim = max_dim;
    opts.budget = budget;
    opts.certify = !no_certify;
    const BraidModel B = braid_model(X, n, d, opts);
    std::cout << "braid model of " << X.name() << " with n=" << n << ", d=" << d << '\n';
    print_counts(B.Q, std::cout);
    std::cout << "quotient certificate: " << B.certificate.detail << '\n';
    if (!out_path.empty()) {
        save_complex(B.to_complex(), out_path);
        std::cout << "written to " << out_path << '\n';
    }
    return B.certificate.ok ? kExitOk : kExitFailed;
}

SkeletalComplex resolve_model(const BaseChoice& base, const std::string& model, int n, int d,
                              int max_dim, std::int64_t budget, std::string& desc) {
    const SimplicialComplex X = resolve_base(base);
    if (model == "none") {
        desc = X.name();
        return SkeletalComplex::from_complex(X);
    }
    if (model == "product") {
        desc = X.name() + "^" + std::to_string(n);
        return SkeletalComplex::from_complex(product_complex(X, n, max_dim));
    }
    if (model == "delta") {
        desc = "delta(" + X.name() + ", n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")";
        return delta_model(X, n, d, max_dim, budget).W;
    }
    if (model == "braid") {
        desc = "braid(" + X.name() + ", n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")";
        BraidOptions opts;
        opts.max_dim = max_dim;
        opts.budget = budget;
        const BraidModel B = braid_model(X, n, d, opts);
        if (!B.certificate.ok)
            throw std::runtime_error("quotient certificate failed: " + B.certificate.detail);
        return B.Q;
    }
    throw InputError("unknown model: " + model);
}

int cmd_homology(const BaseChoice& base, const std::string& model, int n, int d, int up_to,
                 bool reduced, std::int64_t budget) {
    std::string desc;
    const SkeletalComplex K =
        resolve_model(base, model, n, d, model == "none" ? -1 : up_to + 1, budget, desc);
    const HomologyResult h = homology(K, up_to, reduced);
    std::cout << "homology of " << desc << " up to dimension " << up_to << '\n';
    print_homology(h, reduced, std::cout);
    return kExitOk;
}

int cmd_pi1(const BaseChoice& base, const std::string& model, int n, int d, std::int64_t budget) {
    std::string desc;
    const SkeletalComplex K = resolve_model(base, model, n, d, model == "none" ? -1 : 2, budget, desc);
    const Presentation P = pi1_presentation(K);
    std::cout << "fundamental group of " << desc << '\n';
    std::cout << "presentation: " << P.generators << " generators, " << P.relators.size()
              << " relators\n";
    std::cout << "abelianization: " << to_string(abelianization(P)) << '\n';
    if (P.generators <= 64 && presentation_trivializes(P))
        std::cout << "certificate: presentation reduces to the trivial group\n";
    return kExitOk;
}

int cmd_localdim(const BaseChoice& base) {
    const SimplicialComplex X = resolve_base(base);
    const LocalSummary local = local_homotopical_dimension(X);
    std::cout << "local homotopical dimension of " << X.name() << ": ";
    if (local.value >= kInfiniteConnectivity)
        std::cout << "infinite (every local model is acyclic)\n";
    else
        std::cout << local.value << "  (witness " << X.simplex_label(local.witness) << ")\n";
    if (!local.proxies.empty()) {
        std::cout << "note: homological value only at " << local.proxies.size()
                  << " simplices (no homotopy certificate found)\n";
    }
    const CombinatorialLocalDim comb = local_dim_combinatorial(X);
    std::cout << "combinatorial bound: " << comb.value
              << (comb.all_faces_decided ? "" : " (some shared faces undecided)") << '\n';
    if (local.value < kInfiniteConnectivity) {
        for (int d = 1; d <= 3; ++d)
            std::cout << "comparison range for d=" << d << ": dimensions 0.."
                      << theorem_range_bound(local.value, d) << '\n';
    }
    return kExitOk;
}

int cmd_verify(const std::string& suites_path, const std::string& suite, int jobs, double budget,
               const std::string& json_out) {
    const auto cases = load_cases(suites_path);
    const SuiteReport rep = run_suite(cases, suite, jobs, budget);
    print_report(rep, std::cout);
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw InputError("cannot write " + json_out);
        out << report_to_json(rep).dump(2) << '\n';
    }
    if (rep.results.empty()) {
        std::cerr << "no cases found for suite '" << suite << "'\n";
        return kExitInput;
    }
    return rep.ok() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite simplicial models of diagonal complements"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "confspace 1.0.0");

    // validate
    auto* validate = app.add_subcommand("validate", "check a complex JSON file");
    std::string validate_path;
    bool list_builtins = false;
    validate->add_option("--input", validate_path, "path to a complex JSON file");
    validate->add_flag("--list", list_builtins, "list builtin complexes and exit");

    // shared model options
    BaseChoice delta_base, braid_base, hom_base, pi1_base, local_base;
    int n = 2, d = 1, max_dim = -1, up_to = 1;
    std::int64_t budget = 600000000;
    std::string out_path;

    auto* delta = app.add_subcommand("delta-model", "build the ordered configuration model");
    add_base_options(delta, delta_base);
    delta->add_option("--n", n, "number of points")->required();
    delta->add_option("--d", d, "diagonal depth (no d+1 coincident points)")->required();
    delta->add_option("--max-dim", max_dim, "truncate the model above this dimension");
    delta->add_option("--budget", budget, "cell budget for enumeration");
    delta->add_option("--out", out_path, "write the model as complex JSON");

    auto* braid = app.add_subcommand("braid-model", "build the unordered configuration model");
    bool no_certify = false;
    add_base_options(braid, braid_base);
    braid->add_option("--n", n, "number of points")->required();
    braid->add_option("--d", d, "diagonal depth")->required();
    braid->add_option("--max-dim", max_dim, "truncate the model above this dimension");
    braid->add_option("--budget", budget, "cell budget for enumeration");
    braid->add_flag("--no-certify", no_certify, "skip the quotient certificate");
    braid->add_option("--out", out_path, "write the model as complex JSON");

    auto* hom = app.add_subcommand("homology", "integral homology of a complex or model");
    std::string model = "none";
    bool reduced = false;
    add_base_options(hom, hom_base);
    hom->add_option("--model", model, "none, product, delta or braid")
        ->check(CLI::IsMember({"none", "product", "delta", "braid"}));
    hom->add_option("--n", n, "number of points (models only)");
    hom->add_option("--d", d, "diagonal depth (models only)");
    hom->add_option("--up-to", up_to, "compute homology through this dimension")->required();
    hom->add_flag("--reduced", reduced, "report reduced homology");
    hom->add_option("--budget", budget, "cell budget for enumeration");

    auto* pi = app.add_subcommand("pi1", "fundamental group presentation");
    std::string pi_model = "none";
    add_base_options(pi, pi1_base);
    pi->add_option("--model", pi_model, "none, product, delta or braid")
        ->check(CLI::IsMember({"none", "product", "delta", "braid"}));
    pi->add_option("--n", n, "number of points (models only)");
    pi->add_option("--d", d, "diagonal depth (models only)");
    pi->add_option("--budget", budget, "cell budget for enumeration");

    auto* local = app.add_subcommand("localdim", "local homotopical dimension of a complex");
    add_base_options(local, local_base);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "core", suites_path = "data/suites.json", json_out;
    int jobs = 1;
    double time_budget = 0.0;
    verify->add_option("--suite", suite, "core, paper or stretch")
        ->check(CLI::IsMember({"core", "paper", "stretch"}));
    verify->add_option("--jobs", jobs, "run up to N cases concurrently");
    verify->add_option("--budget", time_budget, "soft time budget in seconds");
    verify->add_option("--suites", suites_path, "path to the suites file");
    verify->add_option("--json", json_out, "write a JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (validate->parsed()) {
            if (validate_path.empty() && !list_builtins)
                throw InputError("validate needs --input FILE (or --list)");
            return cmd_validate(validate_path, list_builtins);
        }
        if (delta->parsed()) return cmd_delta_model(delta_base, n, d, max_dim, budget, out_path);
        if (braid->parsed())
            return cmd_braid_model(braid_base, n, d, max_dim, budget, no_certify, out_path);
        if (hom->parsed()) return cmd_homology(hom_base, model, n, d, up_to, reduced, budget);
        if (pi->parsed()) return cmd_pi1(pi1_base, pi_model, n, d, budget);
        if (local->parsed()) return cmd_localdim(local_base);
        if (verify->parsed()) return cmd_verify(suites_path, suite, jobs, time_budget, json_out);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::length_error& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitInput;
}
