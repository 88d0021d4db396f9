#pragma once

#include <cstdint>
#include <string>

#include "qnc/bigcount.hpp"
#include "qnc/entropy_split.hpp"
#include "qnc/source.hpp"

namespace qnc {

struct RunConfig {
    std::string source_path;
    int n = 64;          // block length N
    int k = 8;           // classical Huffman block length in bits
    int q = 2;           // q-ary quantum code alphabet
    std::uint64_t seed = 0;
    std::string out_path;       // optional report file
    std::string format = "json";  // csv | json for the persisted report

    void validate() const;
};

/// Quantum-side accounting for one subspace's realized subsequence.
struct SubspaceAccounting {
    int n_k = 0;          // realized subsequence length
    int d_k = 0;          // subspace dimension
    BigCount dim_code;    // retained dimension (or d_k^n_k when stored raw)
    bool raw_storage = false;  // n_k < 3: below the retained-subspace domain
    int m_min = 0;        // minimal q-ary block length for dim_code
    double code_qubits = 0.0;   // m_min * log2(q)
    double ideal_qubits = 0.0;  // log2(dim_code)
};

/// End-to-end accounting of the hybrid scheme on one sampled block: Huffman
/// on the membership string, then per-subspace retained-subspace sizing for
/// the realized split (n1, n2). Codes are sized for the realized lengths;
/// delta_vs_expected_qubits reports the cost against sizing at the expected
/// split n1 = round(p1 N).
struct PipelineReport {
    int n_total = 0;
    int n1 = 0, n2 = 0;
    double p1 = 0.0;
    int k = 0, q = 0;
    std::uint64_t seed = 0;

    // classical side
    double classical_bits_per_signal = 0.0;  // expected codebook rate (>= H(X))
    double h_x_bound = 0.0;
    std::uint64_t realized_stream_bits = 0;  // payload bits of this run's stream
    double realized_bits_per_signal = 0.0;

    // entropy split of the source
    double s1 = 0.0, s2 = 0.0, s_rho = 0.0, residual = 0.0;

    SubspaceAccounting sub1, sub2;

    // sizing at the expected split
    int n1_expected = 0;
    int m1_expected = 0, m2_expected = 0;
    double delta_vs_expected_qubits = 0.0;

    double total_code_qubits = 0.0;      // both subspaces, realized sizing
    double classical_bits_total = 0.0;   // expected rate * N
    double combined_resource = 0.0;      // classical bits + code qubits
    double ideal_bound = 0.0;            // S(rho) * N

    std::string render_text() const;
    std::string to_json() const;
    std::string to_csv() const;
};

PipelineReport run_pipeline(const RunConfig& config);

}  // namespace qnc
