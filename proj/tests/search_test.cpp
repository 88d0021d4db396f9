#include <doctest.h>

#include <fstream>
#include <sstream>

#include "qnc/search.hpp"
#include "qnc/typical.hpp"

using namespace qnc;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("waste") {
    CHECK(waste(BigCount(4), 2, 2) == 0.0);
    CHECK(waste(BigCount(4), 2, 3) == 1.0);  // (8 - 4) / 4
    CHECK_THROWS_AS(waste(BigCount(4), 2, 1), ValidationError);
}

TEST_CASE("minimal_block_length") {
    CHECK(minimal_block_length(BigCount(4), 2) == 2);
    CHECK(minimal_block_length(BigCount(5), 2) == 3);
    CHECK(minimal_block_length(BigCount(65536), 4) == 8);
    CHECK(minimal_block_length(BigCount(1), 2) == 0);
    CHECK(minimal_block_length(pow_count(BigCount(32), 32), 32) == 32);
}

TEST_CASE("waste at the minimal block length stays below q - 1") {
    // one fewer symbol would be infeasible, so q^m < q * dim
    for (int q : {2, 3, 5, 16}) {
        for (int dval : {3, 7, 100, 12345, 65537}) {
            const BigCount dim(dval);
            const int m = minimal_block_length(dim, q);
            CHECK(waste(dim, q, m) < static_cast<double>(q) - 1.0 + 1e-12);
        }
    }
}

TEST_CASE("exact_solutions on a restricted range") {
    // d = q = 2, N <= 17, M <= 16: every odd N has D_Lambda = 2^(N-1),
    // so all eight rows below are exact solutions (the published table lists
    // only four of them).
    SearchRanges ranges;
    ranges.d_max = 2;
    ranges.q_max = 2;
    ranges.n_max = 17;
    ranges.m_max = 16;
    const std::vector<SolutionRow> rows = exact_solutions(ranges);
    REQUIRE(rows.size() == 8);
    const int expected_n[] = {3, 5, 7, 9, 11, 13, 15, 17};
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].d == 2);
        CHECK(rows[i].q == 2);
        CHECK(rows[i].n == expected_n[i]);
        CHECK(rows[i].m == expected_n[i] - 1);
        CHECK(rows[i].dim == pow_count(BigCount(2), expected_n[i] - 1));
    }
    // the four published rows are among them
    for (int n : {3, 5, 9, 17}) {
        const SolutionRow want{2, n, 2, n - 1, pow_count(BigCount(2), n - 1)};
        CHECK(std::find(rows.begin(), rows.end(), want) != rows.end());
    }
}

TEST_CASE("range validation") {
    SearchRanges bad;
    bad.n_min = 2;
    CHECK_THROWS_AS(exact_solutions(bad), ValidationError);
    SearchRanges flipped;
    flipped.d_max = 1;
    CHECK_THROWS_AS(exact_solutions(flipped), ValidationError);
}

TEST_CASE("full default sweep matches the golden file") {
    const std::vector<SolutionRow> rows = exact_solutions(SearchRanges{});
    const std::string golden = read_file(std::string(QNC_TEST_DATA_DIR) + "/exact_solutions_golden.csv");
    CHECK(solutions_to_csv(rows) == golden);
}

TEST_CASE("verify_table1 confirms the sixteen published rows and finds extras") {
    const Table1Report report = verify_table1();
    CHECK(report.all_confirmed);
    CHECK(report.published.size() == 16);
    for (const auto& check : report.published) CHECK(check.found);

    // the sweep must surface solutions missing from the published table
    CHECK(!report.extras.empty());
    const SolutionRow known_extra{2, 9, 16, 2, BigCount(256)};
    CHECK(std::find(report.extras.begin(), report.extras.end(), known_extra) !=
          report.extras.end());

    // every solution row is zero-waste by construction
    for (const auto& check : report.published) {
        CHECK(waste(check.expected.dim, check.expected.q, check.expected.m) == 0.0);
    }
    for (const auto& row : report.extras) {
        CHECK(waste(row.dim, row.q, row.m) == 0.0);
    }
}

TEST_CASE("sweep output is invariant under partitioning the range") {
    SearchRanges lo;
    lo.d_max = 10;
    SearchRanges hi;
    hi.d_min = 11;
    std::vector<SolutionRow> merged = exact_solutions(lo);
    const std::vector<SolutionRow> rest = exact_solutions(hi);
    merged.insert(merged.end(), rest.begin(), rest.end());
    CHECK(merged == exact_solutions(SearchRanges{}));
}

TEST_CASE("reports and serializations are deterministic") {
    const Table1Report a = verify_table1();
    const Table1Report b = verify_table1();
    CHECK(a.render() == b.render());

    const std::vector<SolutionRow> rows_a = exact_solutions(SearchRanges{});
    const std::vector<SolutionRow> rows_b = exact_solutions(SearchRanges{});
    CHECK(solutions_to_csv(rows_a) == solutions_to_csv(rows_b));
    CHECK(solutions_to_json(rows_a) == solutions_to_json(rows_b));
}

TEST_CASE("csv layout") {
    const std::vector<SolutionRow> rows{{2, 3, 2, 2, BigCount(4)}};
    CHECK(solutions_to_csv(rows) == "d,N,q,M,D_Lambda\n2,3,2,2,4\n");
}
