#pragma once

#include <string>
#include <vector>

#include "qnc/bigcount.hpp"

namespace qnc {

/// One zero-waste parameterization: q^m equals the retained-subspace
/// dimension exactly.
struct SolutionRow {
    int d = 0;
    int n = 0;
    int q = 0;
    int m = 0;
    BigCount dim;  // d_lambda(d, n) == q^m

    friend bool operator==(const SolutionRow& a, const SolutionRow& b) {
        return a.d == b.d && a.n == b.n && a.q == b.q && a.m == b.m && a.dim == b.dim;
    }
};

/// Inclusive search ranges. Defaults are the published sweep:
/// 2 <= d, q, M <= 32 and 3 <= N <= 32.
struct SearchRanges {
    int d_min = 2, d_max = 32;
    int n_min = 3, n_max = 32;
    int q_min = 2, q_max = 32;
    int m_min = 2, m_max = 32;

    void validate() const;
};

/// Fractional over-provisioning (q^m - dim) / dim. Throws if q^m < dim
/// (the code space cannot hold the subspace).
double waste(const BigCount& dim, int q, int m);

/// Smallest m with q^m >= dim, by exact integer comparison.
int minimal_block_length(const BigCount& dim, int q);

/// All (d, n, q, m) in the ranges with q^m = d_lambda(d, n) exactly,
/// sorted ascending by (d, n, q, m).
std::vector<SolutionRow> exact_solutions(const SearchRanges& ranges);

/// The published sixteen-row table checked against the exact sweep over the
/// published ranges. `extras` holds every additional exact solution the sweep
/// finds; the published table is known to be incomplete, so extras are
/// expected, not an error.
struct Table1Report {
    struct RowCheck {
        SolutionRow expected;
        bool found = false;
    };
    std::vector<RowCheck> published;
    std::vector<SolutionRow> extras;
    bool all_confirmed = false;

    std::string render() const;
};

Table1Report verify_table1();

/// The sixteen published rows.
const std::vector<SolutionRow>& published_table1();

std::string solutions_to_csv(const std::vector<SolutionRow>& rows);
std::string solutions_to_json(const std::vector<SolutionRow>& rows);

}  // namespace qnc
