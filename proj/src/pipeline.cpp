#include "qnc/pipeline.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "qnc/format.hpp"
#include "qnc/huffman.hpp"
#include "qnc/search.hpp"
#include "qnc/typical.hpp"

namespace qnc {

void RunConfig::validate() const {
    if (source_path.empty()) throw ValidationError("RunConfig: source path required");
    if (n < 1) throw ValidationError("RunConfig: N must be >= 1");
    if (k < 1 || k > 20) throw ValidationError("RunConfig: k outside [1, 20]");
    if (q < 2) throw ValidationError("RunConfig: q must be >= 2");
    if (format != "csv" && format != "json") throw ValidationError("RunConfig: format must be csv or json");
}

namespace {

SubspaceAccounting account_subspace(int n_k, int d_k, int q) {
    SubspaceAccounting acc;
    acc.n_k = n_k;
    acc.d_k = d_k;
    if (d_k == 1) {
        // One-dimensional subspace: every block is the same product state,
        // so the retained dimension is 1 whatever the length.
        acc.dim_code = 1;
    } else if (n_k >= 3) {
        acc.dim_code = d_lambda(d_k, n_k);
    } else {
        // Below the retained-subspace domain: store the block raw.
        acc.raw_storage = true;
        acc.dim_code = pow_count(BigCount(d_k), n_k);
    }
    acc.m_min = minimal_block_length(acc.dim_code, q);
    acc.code_qubits = acc.m_min * std::log2(static_cast<double>(q));
    acc.ideal_qubits = acc.dim_code == 1 ? 0.0
                                         : std::log2(to_double(acc.dim_code));
    return acc;
}

}  // namespace

PipelineReport run_pipeline(const RunConfig& config) {
    config.validate();
    LoadedSource loaded = load_source(config.source_path);
    if (!std::holds_alternative<DecomposableSource>(loaded)) {
        throw ValidationError("run_pipeline: the source file must carry two subspace blocks");
    }
    const DecomposableSource& source = std::get<DecomposableSource>(loaded);

    PipelineReport r;
    r.n_total = config.n;
    r.p1 = source.p1();
    r.k = config.k;
    r.q = config.q;
    r.seed = config.seed;

    const SignalSequence seq = sample_sequence(source, config.n, config.seed);
    const MembershipString membership = membership_string(seq);
    for (std::uint8_t bit : membership.bits) {
        if (bit == 0) ++r.n1;
    }
    r.n2 = r.n_total - r.n1;

    const HuffmanCodebook book = huffman_build(block_distribution(r.p1, config.k));
    const EncodedStream stream = encode(book, membership);
    r.realized_stream_bits = stream.payload_bits;
    r.realized_bits_per_signal = static_cast<double>(r.realized_stream_bits) / r.n_total;
    r.classical_bits_per_signal = book.expected_block_length() / config.k;

    const EntropyReport entropy = entropy_decomposition(source);
    r.h_x_bound = entropy.h_x;
    r.s1 = entropy.s1;
    r.s2 = entropy.s2;
    r.s_rho = entropy.s_total;
    r.residual = entropy.residual;

    r.sub1 = account_subspace(r.n1, source.d1(), config.q);
    r.sub2 = account_subspace(r.n2, source.d2(), config.q);

    r.n1_expected = static_cast<int>(std::llround(r.p1 * r.n_total));
    r.m1_expected = account_subspace(r.n1_expected, source.d1(), config.q).m_min;
    r.m2_expected = account_subspace(r.n_total - r.n1_expected, source.d2(), config.q).m_min;
    const double log2q = std::log2(static_cast<double>(config.q));
    r.delta_vs_expected_qubits =
        (r.sub1.m_min + r.sub2.m_min - r.m1_expected - r.m2_expected) * log2q;

    r.total_code_qubits = r.sub1.code_qubits + r.sub2.code_qubits;
    r.classical_bits_total = r.classical_bits_per_signal * r.n_total;
    r.combined_resource = r.classical_bits_total + r.total_code_qubits;
    r.ideal_bound = r.s_rho * r.n_total;
    return r;
}

namespace {

void render_subspace(std::ostringstream& os, const char* name, const SubspaceAccounting& acc,
                     int q) {
    os << name << ": N_k=" << acc.n_k << " d_k=" << acc.d_k << " D=" << acc.dim_code.str()
       << (acc.raw_storage ? " (stored raw, N_k < 3)" : "") << " min M(q=" << q
       << ")=" << acc.m_min << " code qubits=" << fmt_real(acc.code_qubits)
       << " ideal qubits=" << fmt_real(acc.ideal_qubits) << "\n";
}

}  // namespace

std::string PipelineReport::render_text() const {
    std::ostringstream os;
    os << "hybrid classical+quantum compression report (entropies in bits, base 2)\n";
    os << "N=" << n_total << " split N1=" << n1 << " N2=" << n2 << " (P1=" << fmt_real(p1)
       << ", expected N1=" << n1_expected << ")\n";
    os << "classical: k=" << k << " expected rate=" << fmt_real(classical_bits_per_signal)
       << " bits/signal, H(X)=" << fmt_real(h_x_bound) << ", realized stream=" << realized_stream_bits
       << " bits (" << fmt_real(realized_bits_per_signal) << " bits/signal)\n";
    os << "entropy split: S(rho)=" << fmt_real(s_rho) << " H(X)=" << fmt_real(h_x_bound)
       << " S(rho1)=" << fmt_real(s1) << " S(rho2)=" << fmt_real(s2)
       << " residual=" << fmt_real(residual) << "\n";
    render_subspace(os, "subspace 1", sub1, q);
    render_subspace(os, "subspace 2", sub2, q);
    os << "sizing delta vs expected split: " << fmt_real(delta_vs_expected_qubits) << " qubits (M"
       << " expected " << m1_expected << "+" << m2_expected << ", realized " << sub1.m_min << "+"
       << sub2.m_min << ")\n";
    os << "totals: classical=" << fmt_real(classical_bits_total)
       << " bits, quantum=" << fmt_real(total_code_qubits)
       << " qubits, combined=" << fmt_real(combined_resource)
       << " vs S(rho)*N=" << fmt_real(ideal_bound) << "\n";
    return os.str();
}

namespace {

// Reals go through fmt_real so file output carries the same 12 significant
// digits as the console.
nlohmann::json real12(double x) { return nlohmann::json::parse(fmt_real(x)); }

nlohmann::json subspace_json(const SubspaceAccounting& acc) {
    return {
        {"n_k", acc.n_k},
        {"d_k", acc.d_k},
        {"dim_code", acc.dim_code.str()},
        {"raw_storage", acc.raw_storage},
        {"m_min", acc.m_min},
        {"code_qubits", real12(acc.code_qubits)},
        {"ideal_qubits", real12(acc.ideal_qubits)},
    };
}

}  // namespace

std::string PipelineReport::to_json() const {
    nlohmann::json doc{
        {"n_total", n_total},
        {"n1", n1},
        {"n2", n2},
        {"n1_expected", n1_expected},
        {"p1", real12(p1)},
        {"k", k},
        {"q", q},
        {"seed", seed},
        {"classical_bits_per_signal", real12(classical_bits_per_signal)},
        {"h_x_bound", real12(h_x_bound)},
        {"realized_stream_bits", realized_stream_bits},
        {"realized_bits_per_signal", real12(realized_bits_per_signal)},
        {"s1", real12(s1)},
        {"s2", real12(s2)},
        {"s_rho", real12(s_rho)},
        {"residual", real12(residual)},
        {"subspace1", subspace_json(sub1)},
        {"subspace2", subspace_json(sub2)},
        {"m1_expected", m1_expected},
        {"m2_expected", m2_expected},
        {"delta_vs_expected_qubits", real12(delta_vs_expected_qubits)},
        {"total_code_qubits", real12(total_code_qubits)},
        {"classical_bits_total", real12(classical_bits_total)},
        {"combined_resource", real12(combined_resource)},
        {"ideal_bound", real12(ideal_bound)},
    };
    return doc.dump(2) + "\n";
}

std::string PipelineReport::to_csv() const {
    std::ostringstream os;
    os << "n_total,n1,n2,n1_expected,p1,k,q,seed,classical_bits_per_signal,h_x_bound,"
          "realized_stream_bits,realized_bits_per_signal,s1,s2,s_rho,residual,"
          "d1,D1,m1,d2,D2,m2,m1_expected,m2_expected,delta_vs_expected_qubits,"
          "total_code_qubits,classical_bits_total,combined_resource,ideal_bound\n";
    os << n_total << "," << n1 << "," << n2 << "," << n1_expected << "," << fmt_real(p1) << ","
       << k << "," << q << "," << seed << "," << fmt_real(classical_bits_per_signal) << ","
       << fmt_real(h_x_bound) << "," << realized_stream_bits << ","
       << fmt_real(realized_bits_per_signal) << "," << fmt_real(s1) << "," << fmt_real(s2) << ","
       << fmt_real(s_rho) << "," << fmt_real(residual) << "," << sub1.d_k << ","
       << sub1.dim_code.str() << "," << sub1.m_min << "," << sub2.d_k << ","
       << sub2.dim_code.str() << "," << sub2.m_min << "," << m1_expected << "," << m2_expected
       << "," << fmt_real(delta_vs_expected_qubits) << "," << fmt_real(total_code_qubits) << ","
       << fmt_real(classical_bits_total) << "," << fmt_real(combined_resource) << ","
       << fmt_real(ideal_bound) << "\n";
    return os.str();
}

}  // namespace qnc
