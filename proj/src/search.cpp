#include "qnc/search.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "qnc/format.hpp"
#include "qnc/typical.hpp"

namespace qnc {

void SearchRanges::validate() const {
    if (d_min < 2 || q_min < 2 || m_min < 2) {
        throw ValidationError("SearchRanges: d_min, q_min and m_min must be >= 2");
    }
    if (n_min < 3) throw ValidationError("SearchRanges: n_min must be >= 3");
    if (d_max < d_min || n_max < n_min || q_max < q_min || m_max < m_min) {
        throw ValidationError("SearchRanges: each max must be >= its min");
    }
}

double waste(const BigCount& dim, int q, int m) {
    if (dim <= 0) throw ValidationError("waste: dim must be positive");
    if (q < 2) throw ValidationError("waste: q must be >= 2");
    if (m < 0) throw ValidationError("waste: m must be >= 0");
    const BigCount code_space = pow_count(BigCount(q), m);
    if (code_space < dim) {
        std::ostringstream os;
        os << "waste: infeasible, " << q << "^" << m << " = " << code_space.str() << " < "
           << dim.str();
        throw ValidationError(os.str());
    }
    return to_double(code_space - dim) / to_double(dim);
}

int minimal_block_length(const BigCount& dim, int q) {
    if (dim <= 0) throw ValidationError("minimal_block_length: dim must be positive");
    if (q < 2) throw ValidationError("minimal_block_length: q must be >= 2");
    BigCount p(1);
    int m = 0;
    while (p < dim) {
        p *= q;
        ++m;
    }
    return m;
}

std::vector<SolutionRow> exact_solutions(const SearchRanges& ranges) {
    ranges.validate();
    std::vector<SolutionRow> rows;
    for (int d = ranges.d_min; d <= ranges.d_max; ++d) {
        for (int n = ranges.n_min; n <= ranges.n_max; ++n) {
            const BigCount dim = d_lambda(d, n);
            for (int q = ranges.q_min; q <= ranges.q_max; ++q) {
                BigCount p = pow_count(BigCount(q), ranges.m_min);
                for (int m = ranges.m_min; m <= ranges.m_max && p <= dim; ++m, p *= q) {
                    if (p == dim) {
                        rows.push_back({d, n, q, m, dim});
                        break;  // q^m is strictly increasing in m
                    }
                }
            }
        }
    }
    std::sort(rows.begin(), rows.end(), [](const SolutionRow& a, const SolutionRow& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.n != b.n) return a.n < b.n;
        if (a.q != b.q) return a.q < b.q;
        return a.m < b.m;
    });
    return rows;
}

const std::vector<SolutionRow>& published_table1() {
    static const std::vector<SolutionRow> rows = {
        {2, 3, 2, 2, BigCount(4)},        {2, 5, 2, 4, BigCount(16)},
        {2, 9, 2, 8, BigCount(256)},      {2, 17, 2, 16, BigCount(65536)},
        {2, 5, 4, 2, BigCount(16)},       {2, 9, 4, 4, BigCount(256)},
        {2, 17, 4, 8, BigCount(65536)},   {2, 11, 32, 2, BigCount(1024)},
        {2, 21, 32, 4, BigCount(1048576)}, {4, 4, 7, 2, BigCount(49)},
        {6, 3, 2, 4, BigCount(16)},       {6, 3, 4, 2, BigCount(16)},
        {17, 3, 7, 2, BigCount(49)},      {22, 3, 2, 6, BigCount(64)},
        {22, 3, 4, 3, BigCount(64)},      {22, 3, 8, 2, BigCount(64)},
    };
    return rows;
}

Table1Report verify_table1() {
    Table1Report report;
    const std::vector<SolutionRow> found = exact_solutions(SearchRanges{});
    report.all_confirmed = true;
    for (const SolutionRow& expected : published_table1()) {
        const bool present = std::find(found.begin(), found.end(), expected) != found.end();
        report.published.push_back({expected, present});
        if (!present) report.all_confirmed = false;
    }
    for (const SolutionRow& row : found) {
        const auto& pub = published_table1();
        if (std::find(pub.begin(), pub.end(), row) == pub.end()) report.extras.push_back(row);
    }
    return report;
}

std::string Table1Report::render() const {
    std::ostringstream os;
    os << "published zero-waste solutions (q^M = D_Lambda):\n";
    int confirmed = 0;
    for (const RowCheck& check : published) {
        const SolutionRow& r = check.expected;
        os << "  d=" << r.d << " N=" << r.n << " q=" << r.q << " M=" << r.m
           << " D_Lambda=" << r.dim.str() << " ... " << (check.found ? "confirmed" : "MISSING")
           << "\n";
        if (check.found) ++confirmed;
    }
    os << confirmed << "/" << published.size() << " published rows confirmed\n";
    os << extras.size() << " additional exact solutions not in the published table"
       << " (the published table is incomplete):\n";
    for (const SolutionRow& r : extras) {
        os << "  d=" << r.d << " N=" << r.n << " q=" << r.q << " M=" << r.m
           << " D_Lambda=" << r.dim.str() << "\n";
    }
    return os.str();
}

std::string solutions_to_csv(const std::vector<SolutionRow>& rows) {
    std::ostringstream os;
    os << "d,N,q,M,D_Lambda\n";
    for (const SolutionRow& r : rows) {
        os << r.d << "," << r.n << "," << r.q << "," << r.m << "," << r.dim.str() << "\n";
    }
    return os.str();
}

std::string solutions_to_json(const std::vector<SolutionRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SolutionRow& r : rows) {
        arr.push_back({{"d", r.d}, {"N", r.n}, {"q", r.q}, {"M", r.m}, {"D_Lambda", r.dim.str()}});
    }
    return arr.dump(2) + "\n";
}

}  // namespace qnc
