#include "qnc/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qnc/entropy_split.hpp"
#include "qnc/format.hpp"
#include "qnc/huffman.hpp"
#include "qnc/pipeline.hpp"
#include "qnc/search.hpp"
#include "qnc/source.hpp"
#include "qnc/typical.hpp"

namespace qnc {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitOracleMismatch = 3;

// Relative output paths resolve against QNC_OUTPUT_DIR when it is set.
std::string resolve_out_path(const std::string& path) {
    if (path.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    if (const char* dir = std::getenv("QNC_OUTPUT_DIR")) {
        return (std::filesystem::path(dir) / p).string();
    }
    return path;
}

void write_out_file(const std::string& path, const std::string& content) {
    const std::string resolved = resolve_out_path(path);
    std::ofstream out(resolved, std::ios::binary);
    if (!out) throw ValidationError("cannot write output file: " + resolved);
    out << content;
}

// Any source file becomes a flat ensemble: a decomposable source contributes
// its states with weights p_k * q_k^j, re-sorted canonically.
SignalEnsemble flatten_source(const std::string& path) {
    LoadedSource loaded = load_source(path);
    if (std::holds_alternative<SignalEnsemble>(loaded)) {
        return std::get<SignalEnsemble>(std::move(loaded));
    }
    const DecomposableSource& src = std::get<DecomposableSource>(loaded);
    std::vector<PureState> states;
    std::vector<double> probs;
    for (int k = 1; k <= 2; ++k) {
        const SignalEnsemble& sub = src.sub(k);
        const double pk = k == 1 ? src.p1() : src.p2();
        if (pk == 0.0) continue;
        for (int i = 0; i < sub.size(); ++i) {
            states.push_back(sub.states()[i]);
            probs.push_back(pk * sub.probs()[i]);
        }
    }
    return SignalEnsemble(std::move(states), std::move(probs));
}

int cmd_entropy(const std::string& source_path) {
    LoadedSource loaded = load_source(source_path);
    if (!std::holds_alternative<DecomposableSource>(loaded)) {
        throw ValidationError("entropy: the source file must carry two subspace blocks");
    }
    const EntropyReport r = entropy_decomposition(std::get<DecomposableSource>(loaded));
    std::cout << "entropy decomposition (bits, base 2)\n"
              << "P1        = " << fmt_real(r.p1) << "\n"
              << "S(rho)    = " << fmt_real(r.s_total) << "\n"
              << "H(X)      = " << fmt_real(r.h_x) << "\n"
              << "S(rho1)   = " << fmt_real(r.s1) << "\n"
              << "S(rho2)   = " << fmt_real(r.s2) << "\n"
              << "residual  = " << fmt_real(r.residual) << "\n";
    return kExitOk;
}

int cmd_gap(const std::string& source_path) {
    const RawSourceBlocks blocks = load_source_blocks(source_path);
    const double gap = subadditivity_gap(blocks.p1, blocks.ens1, blocks.ens2);
    const auto [o12, o21] = orthogonality_trace_check(subspace_density(blocks.ens1),
                                                      subspace_density(blocks.ens2));
    std::cout << "subadditivity gap (bits, base 2)\n"
              << "gap                 = " << fmt_real(gap) << "\n"
              << "supp(rho1) overlap  = " << fmt_real(o12) << "\n"
              << "supp(rho2) overlap  = " << fmt_real(o21) << "\n"
              << "orthogonal          = " << ((o12 < 1e-9 && o21 < 1e-9) ? "yes" : "no") << "\n";
    return kExitOk;
}

int cmd_ddim(int d, int n, bool oracle) {
    const BigCount dim = d_lambda(d, n);
    std::cout << dim.str() << "\n";
    if (oracle) {
        const BigCount brute = d_lambda_bruteforce(d, n);
        if (brute != dim) {
            std::ostringstream os;
            os << "d_lambda(" << d << ", " << n << ") = " << dim.str()
               << " but enumeration gives " << brute.str();
            throw OracleMismatch(os.str());
        }
        std::cout << "oracle: enumeration agrees (" << brute.str() << ")\n";
    }
    return kExitOk;
}

int cmd_search(const SearchRanges& ranges, const std::string& format,
               const std::string& out_path) {
    const std::vector<SolutionRow> rows = exact_solutions(ranges);
    const std::string rendered = format == "json" ? solutions_to_json(rows) : solutions_to_csv(rows);
    std::cout << rendered;
    if (!out_path.empty()) write_out_file(out_path, rendered);
    return kExitOk;
}

int cmd_verify_table1() {
    const Table1Report report = verify_table1();
    std::cout << report.render();
    if (!report.all_confirmed) throw OracleMismatch("published rows missing from the exact sweep");
    return kExitOk;
}

int cmd_fidelity(const std::string& source_path, int n, int d_opt, bool oracle) {
    const SignalEnsemble ens = flatten_source(source_path);
    const int d_star = ens.size();
    const int d = d_opt > 0 ? d_opt : d_star;
    if (d < 2 || d > d_star) {
        throw ValidationError("fidelity: --d must lie in [2, number of signal states]");
    }
    std::vector<CVector> raw;
    raw.reserve(d_star);
    for (const auto& s : ens.states()) raw.push_back(s.amplitudes());
    std::vector<CVector> ortho = gram_schmidt(raw);
    std::vector<PureState> basis;
    basis.reserve(ortho.size());
    for (auto& v : ortho) basis.emplace_back(std::move(v));

    const DensityOperator rho = density_from_ensemble(ens.states(), ens.probs());
    const SiteWeights weights = site_weights(rho, basis, d);
    const double f = fidelity_majority(weights, n);
    std::cout << "retained d=" << d << " of d*=" << d_star << ", N=" << n << "\n"
              << "D_Lambda   = " << d_lambda(d, n).str() << "\n"
              << "F_majority = " << fmt_real(f) << "\n";
    if (oracle) {
        const double brute = fidelity_bruteforce(rho, basis, d, n);
        if (std::abs(brute - f) > 1e-10) {
            std::ostringstream os;
            os << "fidelity_majority = " << fmt_real(f) << " but tensor construction gives "
               << fmt_real(brute);
            throw OracleMismatch(os.str());
        }
        std::cout << "oracle: tensor construction agrees (" << fmt_real(brute) << ")\n";
    }
    return kExitOk;
}

int cmd_pipeline(const RunConfig& config) {
    const PipelineReport report = run_pipeline(config);
    std::cout << report.render_text();
    if (!config.out_path.empty()) {
        write_out_file(config.out_path,
                       config.format == "csv" ? report.to_csv() : report.to_json());
    }
    return kExitOk;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
    CLI::App app{"quantum noiseless coding toolkit: entropy splits, typical-subspace"
                 " dimensions, block fidelities and zero-waste code search"};
    app.require_subcommand(1);

    std::string source_path;
    auto* entropy = app.add_subcommand("entropy", "entropy decomposition of a two-subspace source");
    entropy->add_option("source", source_path, "source file (JSON)")->required();

    auto* gap = app.add_subcommand("gap", "subadditivity-gap diagnostic (orthogonality not required)");
    gap->add_option("source", source_path, "source file (JSON)")->required();

    int dd = 2, dn = 3;
    bool d_oracle = false;
    auto* ddim = app.add_subcommand("ddim", "dimension of the majority-species subspace");
    ddim->add_option("--d", dd, "retained signal-space dimension")->required();
    ddim->add_option("--N", dn, "block length")->required();
    ddim->add_flag("--oracle", d_oracle, "cross-check against exhaustive enumeration");

    SearchRanges ranges;
    std::string format = "csv";
    std::string out_path;
    auto* search = app.add_subcommand("search", "exhaustive search for q^M = D_Lambda");
    search->add_option("--d-min", ranges.d_min);
    search->add_option("--d-max", ranges.d_max);
    search->add_option("--N-min", ranges.n_min);
    search->add_option("--N-max", ranges.n_max);
    search->add_option("--q-min", ranges.q_min);
    search->add_option("--q-max", ranges.q_max);
    search->add_option("--M-min", ranges.m_min);
    search->add_option("--M-max", ranges.m_max);
    search->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    search->add_option("--out", out_path, "also write the output to this file");

    auto* verify = app.add_subcommand("verify-table1", "check the published zero-waste table");
    (void)verify;

    int fn = 3, fd = 0;
    bool f_oracle = false;
    auto* fidelity = app.add_subcommand("fidelity", "majority-species block fidelity of a source");
    fidelity->add_option("source", source_path, "source file (JSON)")->required();
    fidelity->add_option("--N", fn, "block length")->required();
    fidelity->add_option("--d", fd, "retained dimension (default: all signal states)");
    fidelity->add_flag("--oracle", f_oracle, "cross-check against the explicit tensor construction");

    RunConfig config;
    auto* pipeline = app.add_subcommand("pipeline", "hybrid classical+quantum compression accounting");
    pipeline->add_option("source", config.source_path, "source file (JSON)")->required();
    pipeline->add_option("--N", config.n, "block length")->required();
    pipeline->add_option("--k", config.k, "classical Huffman block length (bits)");
    pipeline->add_option("--q", config.q, "q-ary quantum code alphabet size");
    pipeline->add_option("--seed", config.seed, "sampling seed");
    pipeline->add_option("--out", config.out_path, "write the report to this file");
    pipeline->add_option("--format", config.format, "csv or json for --out")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (entropy->parsed()) return cmd_entropy(source_path);
        if (gap->parsed()) return cmd_gap(source_path);
        if (ddim->parsed()) return cmd_ddim(dd, dn, d_oracle);
        if (search->parsed()) return cmd_search(ranges, format, out_path);
        if (verify->parsed()) return cmd_verify_table1();
        if (fidelity->parsed()) return cmd_fidelity(source_path, fn, fd, f_oracle);
        if (pipeline->parsed()) return cmd_pipeline(config);
    } catch (const OracleMismatch& e) {
        std::cerr << "oracle mismatch: " << e.what() << "\n";
        return kExitOracleMismatch;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace qnc
