#include "qnc/typical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qnc {

std::vector<BigCount> pascal_row(int n) {
    if (n < 0) throw ValidationError("pascal_row: negative n");
    std::vector<BigCount> row{BigCount(1)};
    for (int i = 1; i <= n; ++i) {
        std::vector<BigCount> next(i + 1);
        next[0] = 1;
        next[i] = 1;
        for (int j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
        row = std::move(next);
    }
    return row;
}

BigCount pow_count(const BigCount& base, int exp) {
    if (exp < 0) throw ValidationError("pow_count: negative exponent");
    BigCount out(1);
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

void TypicalSubspaceSpec::validate() const {
    if (d < 2) throw ValidationError("TypicalSubspaceSpec: d must be >= 2");
    if (n < 3) throw ValidationError("TypicalSubspaceSpec: n must be >= 3");
    if (d_star < d) throw ValidationError("TypicalSubspaceSpec: d_star must be >= d");
}

BigCount d_lambda(int d, int n) {
    if (d < 2) throw ValidationError("d_lambda: d must be >= 2");
    if (n < 3) throw ValidationError("d_lambda: n must be >= 3");
    const int L = (n + 1) / 2;
    const std::vector<BigCount> row = pascal_row(n);
    const BigCount dm1(d - 1);
    BigCount total(0);
    BigCount power(1);  // (d-1)^j
    for (int j = 0; j <= L - 1; ++j) {
        total += power * row[j];
        power *= dm1;
    }
    if (n % 2 == 0) {
        // power is (d-1)^L here; the even term uses (d-1)^(L-1).
        total += pow_count(dm1, L - 1) * BigCount(d - 2) * row[L];
    }
    return total;
}

bool lambda_membership(std::span<const int> word) {
    const int n = static_cast<int>(word.size());
    int zeros = 0;
    for (int c : word) {
        if (c == 0) ++zeros;
    }
    const int L = (n + 1) / 2;
    const int j = n - zeros;  // minority slots
    if (j <= L - 1) return true;
    if (n % 2 == 0 && j == L) {
        int first = -1;
        for (int c : word) {
            if (c == 0) continue;
            if (first < 0) {
                first = c;
            } else {
                return c != first;
            }
        }
    }
    return false;
}

namespace {

// Upper bound check for d^n without overflow.
bool power_within(int d, int n, std::uint64_t cap) {
    std::uint64_t p = 1;
    for (int i = 0; i < n; ++i) {
        if (p > cap / static_cast<std::uint64_t>(d)) return false;
        p *= static_cast<std::uint64_t>(d);
    }
    return p <= cap;
}

// Calls fn(word) for every word over [0, d)^n in lexicographic order.
template <typename Fn>
void for_each_word(int d, int n, Fn&& fn) {
    std::vector<int> word(n, 0);
    while (true) {
        fn(std::span<const int>(word));
        int pos = n - 1;
        while (pos >= 0 && word[pos] == d - 1) word[pos--] = 0;
        if (pos < 0) break;
        ++word[pos];
    }
}

}  // namespace

BigCount d_lambda_bruteforce(int d, int n) {
    if (d < 2) throw ValidationError("d_lambda_bruteforce: d must be >= 2");
    if (n < 3) throw ValidationError("d_lambda_bruteforce: n must be >= 3");
    if (!power_within(d, n, 10'000'000ull)) {
        throw ValidationError("d_lambda_bruteforce: instance too large (d^n > 1e7)");
    }
    std::uint64_t count = 0;
    for_each_word(d, n, [&](std::span<const int> word) {
        if (lambda_membership(word)) ++count;
    });
    return BigCount(count);
}

std::vector<std::vector<int>> lambda_words(int d, int n) {
    if (d < 2) throw ValidationError("lambda_words: d must be >= 2");
    if (n < 3) throw ValidationError("lambda_words: n must be >= 3");
    if (!power_within(d, n, 10'000'000ull)) {
        throw ValidationError("lambda_words: instance too large (d^n > 1e7)");
    }
    std::vector<std::vector<int>> words;
    for_each_word(d, n, [&](std::span<const int> word) {
        if (lambda_membership(word)) words.emplace_back(word.begin(), word.end());
    });
    return words;
}

double SiteWeights::weight(int symbol) const {
    if (symbol == 0) return q_s;
    if (symbol < d()) return q_r[symbol - 1];
    if (symbol < d_star()) return q_ext[symbol - d()];
    throw ValidationError("SiteWeights: symbol out of range");
}

double SiteWeights::retained_sum() const {
    double r = 0.0;
    for (double q : q_r) r += q;
    return r;
}

SiteWeights site_weights(const DensityOperator& rho, const std::vector<PureState>& basis, int d) {
    if (d < 1 || d > static_cast<int>(basis.size())) {
        throw ValidationError("site_weights: d outside [1, basis size]");
    }
    for (size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].dim() != rho.dim()) throw ValidationError("site_weights: basis/rho dimension mismatch");
        for (size_t j = 0; j <= i; ++j) {
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(basis[j].inner(basis[i]) - expected) > kOrthoTol) {
                std::ostringstream os;
                os << "site_weights: basis vectors " << j << " and " << i << " not orthonormal";
                throw ValidationError(os.str());
            }
        }
    }
    SiteWeights w;
    double total = 0.0;
    for (size_t i = 0; i < basis.size(); ++i) {
        const CVector& e = basis[i].amplitudes();
        double q = (e.adjoint() * rho.matrix() * e)(0).real();
        if (q < -kPsdTol || q > 1.0 + kNormTol) {
            std::ostringstream os;
            os << "site_weights: <e_" << i + 1 << "|rho|e_" << i + 1 << "> = " << q
               << " outside [0, 1]";
            throw ValidationError(os.str());
        }
        q = std::clamp(q, 0.0, 1.0);
        total += q;
        if (i == 0) {
            w.q_s = q;
        } else if (static_cast<int>(i) < d) {
            w.q_r.push_back(q);
        } else {
            w.q_ext.push_back(q);
        }
    }
    if (total > 1.0 + kNormTol) {
        std::ostringstream os;
        os << "site_weights: weights sum to " << total << " > 1";
        throw ValidationError(os.str());
    }
    return w;
}

namespace {

double powi(double base, int exp) {
    double out = 1.0;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace

double fidelity_majority(const SiteWeights& w, int n) {
    if (n < 3) throw ValidationError("fidelity_majority: n must be >= 3");
    const int L = (n + 1) / 2;
    const double r_sum = w.retained_sum();
    const std::vector<BigCount> row = pascal_row(n);
    double f = 0.0;
    for (int j = 0; j <= L - 1; ++j) {
        f += to_double(row[j]) * powi(w.q_s, n - j) * powi(r_sum, j);
    }
    if (n % 2 == 0) {
        double r_sq = 0.0;
        for (double q : w.q_r) r_sq += q * q;
        f += to_double(row[L]) * powi(w.q_s, L) * (r_sum * r_sum - r_sq) * powi(r_sum, L - 2);
    }
    return f;
}

double fidelity_bruteforce(const DensityOperator& rho, const std::vector<PureState>& basis, int d,
                           int n) {
    if (n < 3) throw ValidationError("fidelity_bruteforce: n must be >= 3");
    if (d < 2 || d > static_cast<int>(basis.size())) {
        throw ValidationError("fidelity_bruteforce: d outside [2, basis size]");
    }
    const int dim = rho.dim();
    if (!power_within(dim, n, static_cast<std::uint64_t>(kMaxHilbertDim))) {
        throw ValidationError("fidelity_bruteforce: instance too large (dim^n > 4096)");
    }
    // Orthonormality, dimensions and weight bounds are revalidated here.
    (void)site_weights(rho, basis, d);

    long total = 1;
    for (int i = 0; i < n; ++i) total *= dim;

    CMatrix rho_n = rho.matrix();
    for (int i = 1; i < n; ++i) rho_n = tensor_product(rho_n, rho.matrix());

    // Columns of V are the member product vectors; W = V V^dag is the
    // projector onto the retained block subspace.
    const std::vector<std::vector<int>> words = lambda_words(d, n);
    CMatrix v(total, static_cast<long>(words.size()));
    for (std::size_t c = 0; c < words.size(); ++c) {
        for (long idx = 0; idx < total; ++idx) {
            Complex amp(1.0, 0.0);
            long rem = idx;
            // First word slot is the outermost Kronecker factor.
            for (int slot = n - 1; slot >= 0; --slot) {
                const int component = static_cast<int>(rem % dim);
                rem /= dim;
                amp *= basis[words[c][slot]].amplitudes()(component);
                if (amp == Complex(0.0, 0.0)) break;
            }
            v(idx, static_cast<long>(c)) = amp;
        }
    }
    CMatrix w_lambda = v * v.adjoint();
    const Complex trace = (rho_n.array() * w_lambda.transpose().array()).sum();
    return trace.real();
}

double fidelity_subspace(const SiteWeights& w, const std::vector<std::vector<int>>& words) {
    std::vector<std::vector<int>> sorted = words;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("fidelity_subspace: duplicate words");
    }
    double f = 0.0;
    for (const auto& word : words) {
        double p = 1.0;
        for (int c : word) p *= w.weight(c);
        f += p;
    }
    return f;
}

BestSubspace best_equal_dim_fidelity(const SiteWeights& w, int n, const BigCount& dim) {
    if (n < 1) throw ValidationError("best_equal_dim_fidelity: n must be >= 1");
    if (dim <= 0) throw ValidationError("best_equal_dim_fidelity: dim must be positive");
    if (dim > BigCount(1'000'000)) {
        throw ValidationError("best_equal_dim_fidelity: instance too large (dim > 1e6)");
    }
    const int ds = w.d_star();
    if (!power_within(ds, n, 10'000'000ull)) {
        throw ValidationError("best_equal_dim_fidelity: instance too large (d_star^n > 1e7)");
    }
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(ds);
    if (dim > BigCount(total)) {
        throw ValidationError("best_equal_dim_fidelity: dim exceeds the number of words");
    }
    const std::size_t want = dim.convert_to<std::size_t>();

    // Word index in base d_star (first slot most significant), so ascending
    // index is lexicographic order and gives the deterministic tie-break.
    std::vector<std::pair<double, std::uint64_t>> ranked(total);
    std::vector<int> word(n, 0);
    std::uint64_t idx = 0;
    while (true) {
        double p = 1.0;
        for (int c : word) p *= w.weight(c);
        ranked[idx] = {p, idx};
        ++idx;
        int pos = n - 1;
        while (pos >= 0 && word[pos] == ds - 1) word[pos--] = 0;
        if (pos < 0) break;
        ++word[pos];
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    BestSubspace best;
    best.words.reserve(want);
    for (std::size_t i = 0; i < want; ++i) {
        best.fidelity += ranked[i].first;
        std::vector<int> decoded(n);
        std::uint64_t rem = ranked[i].second;
        for (int slot = n - 1; slot >= 0; --slot) {
            decoded[slot] = static_cast<int>(rem % static_cast<std::uint64_t>(ds));
            rem /= static_cast<std::uint64_t>(ds);
        }
        best.words.push_back(std::move(decoded));
    }
    return best;
}

}  // namespace qnc
