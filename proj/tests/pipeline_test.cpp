#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "qnc/pipeline.hpp"
#include "qnc/huffman.hpp"
#include "qnc/search.hpp"
#include "qnc/typical.hpp"
#include "test_support.hpp"

using namespace qnc;

namespace {

std::string bell_fixture_path() { return std::string(QNC_DATA_DIR) + "/bell_source.json"; }

RunConfig bell_config(int n, int k, int q, std::uint64_t seed) {
    RunConfig c;
    c.source_path = bell_fixture_path();
    c.n = n;
    c.k = k;
    c.q = q;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("run_pipeline on the Bell fixture") {
    const PipelineReport r = run_pipeline(bell_config(64, 8, 2, 7));

    CHECK(r.n1 + r.n2 == 64);
    CHECK(r.n1_expected == 32);
    CHECK(r.p1 == 0.5);

    // At p1 = 0.5 every Huffman codeword has length k, so the expected rate
    // is exactly one bit per signal and matches H(X).
    CHECK(r.h_x_bound == doctest::Approx(1.0));
    CHECK(r.classical_bits_per_signal >= 1.0 - 1e-9);
    CHECK(r.classical_bits_per_signal == doctest::Approx(measured_rate(0.5, 8)));

    // Entropy split cross-checked against the module it came from.
    const EntropyReport split = entropy_decomposition(bell_source(0.5));
    CHECK(r.s1 == doctest::Approx(split.s1));
    CHECK(r.s2 == doctest::Approx(split.s2));
    CHECK(r.s_rho == doctest::Approx(split.s_total));
    CHECK(r.s1 == doctest::Approx(0.0));
    CHECK(std::abs(r.residual) < 1e-9);

    // Singlet subspace: one dimension, no quantum resource.
    CHECK(r.sub1.d_k == 1);
    CHECK(r.sub1.dim_code == 1);
    CHECK(r.sub1.m_min == 0);
    CHECK(r.sub1.code_qubits == 0.0);

    // Triplet subspace sized for the realized split.
    CHECK(r.sub2.d_k == 3);
    CHECK(r.sub2.dim_code == d_lambda(3, r.n2));
    CHECK(r.sub2.m_min == minimal_block_length(r.sub2.dim_code, 2));
}

TEST_CASE("p1 = 1 source routes everything to subspace 1") {
    // build a p1=1 variant of the fixture on the fly
    const DecomposableSource src = bell_source(1.0);
    const std::string path = "/tmp/qnc_p1_source.json";
    save_source(src, path);
    RunConfig c;
    c.source_path = path;
    c.n = 32;
    c.k = 4;
    c.q = 2;
    c.seed = 5;
    const PipelineReport r = run_pipeline(c);
    CHECK(r.n2 == 0);
    CHECK(r.n1 == 32);
    CHECK(r.h_x_bound == 0.0);
    CHECK(r.sub2.n_k == 0);
    CHECK(r.sub2.dim_code == 1);  // empty block stores nothing
    CHECK(r.sub1.dim_code == 1);  // d1 = 1 again
    std::remove(path.c_str());
}

TEST_CASE("short subsequences fall back to raw storage") {
    // p1 close to 1 makes n2 tiny at small N
    const DecomposableSource src = bell_source(7.0 / 8.0);
    const std::string path = "/tmp/qnc_p99_source.json";
    save_source(src, path);
    RunConfig c;
    c.source_path = path;
    c.n = 8;
    c.k = 2;
    c.q = 2;
    c.seed = 3;  // chosen so the realized n2 lands in (0, 3)
    PipelineReport r = run_pipeline(c);
    int tries = 0;
    while ((r.n2 == 0 || r.n2 >= 3) && tries < 50) {
        c.seed += 1;
        r = run_pipeline(c);
        ++tries;
    }
    REQUIRE(r.n2 > 0);
    REQUIRE(r.n2 < 3);
    CHECK(r.sub2.raw_storage);
    CHECK(r.sub2.dim_code == pow_count(BigCount(3), r.n2));
    std::remove(path.c_str());
}

TEST_CASE("reports are deterministic for a fixed seed") {
    const PipelineReport a = run_pipeline(bell_config(64, 8, 2, 7));
    const PipelineReport b = run_pipeline(bell_config(64, 8, 2, 7));
    CHECK(a.render_text() == b.render_text());
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_csv() == b.to_csv());

    const PipelineReport other = run_pipeline(bell_config(64, 8, 2, 8));
    CHECK(a.render_text() != other.render_text());  // the seed matters
}

TEST_CASE("report serializations are well formed") {
    const PipelineReport r = run_pipeline(bell_config(32, 4, 2, 19));

    const std::string csv = r.to_csv();
    const auto count_fields = [](const std::string& line) {
        return std::count(line.begin(), line.end(), ',') + 1;
    };
    const auto newline = csv.find('\n');
    REQUIRE(newline != std::string::npos);
    const std::string header = csv.substr(0, newline);
    const std::string row = csv.substr(newline + 1, csv.size() - newline - 2);
    CHECK(count_fields(header) == count_fields(row));

    // JSON must parse back and carry the headline numbers
    const auto doc = nlohmann::json::parse(r.to_json());
    CHECK(doc["n_total"].get<int>() == 32);
    CHECK(doc["n1"].get<int>() + doc["n2"].get<int>() == 32);
    CHECK(doc["subspace2"]["dim_code"].get<std::string>() == r.sub2.dim_code.str());
}

TEST_CASE("expected classical rate is non-increasing across doubling k") {
    double prev = 2.0;
    for (int k : {1, 2, 4, 8}) {
        const PipelineReport r = run_pipeline(bell_config(256, k, 2, 11));
        CHECK(r.classical_bits_per_signal >= r.h_x_bound - 1e-9);
        CHECK(r.classical_bits_per_signal <= prev + 1e-12);
        prev = r.classical_bits_per_signal;
    }
}

TEST_CASE("realized n1 fluctuates around p1*N across seeds") {
    double sum = 0.0;
    const int runs = 100;
    for (int seed = 0; seed < runs; ++seed) {
        const SignalSequence seq = sample_sequence(bell_source(0.5), 64, seed);
        int n1 = 0;
        for (const auto& e : seq.entries()) {
            if (e.subspace == 1) ++n1;
        }
        sum += n1;
    }
    const double mean = sum / runs;
    // sd of one draw is sqrt(64 * 0.25) = 4, so the mean over 100 seeds has
    // standard error 0.4
    CHECK(std::abs(mean - 32.0) < 3.0 * 0.4);
}

TEST_CASE("config validation") {
    RunConfig c = bell_config(64, 8, 2, 7);
    c.n = 0;
    CHECK_THROWS_AS(run_pipeline(c), ValidationError);
    c = bell_config(64, 8, 1, 7);
    CHECK_THROWS_AS(run_pipeline(c), ValidationError);
    c = bell_config(64, 8, 2, 7);
    c.format = "xml";
    CHECK_THROWS_AS(run_pipeline(c), ValidationError);
    c = bell_config(64, 8, 2, 7);
    c.source_path = "/nonexistent.json";
    CHECK_THROWS_AS(run_pipeline(c), ValidationError);
}
