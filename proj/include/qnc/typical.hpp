#pragma once

#include <span>
#include <vector>

#include "qnc/bigcount.hpp"
#include "qnc/quantum.hpp"

namespace qnc {

/// Parameters of the majority-species retained subspace: block length n over
/// a retained d-dimensional signal space inside an ambient space of dimension
/// d_star >= d.
struct TypicalSubspaceSpec {
    int d = 2;
    int n = 3;
    int d_star = 2;

    void validate() const;
};

/// Exact dimension of the retained N-block subspace. For odd n = 2L-1 this is
/// sum_{j=0}^{L-1} (d-1)^j C(n, j); even n = 2L adds (d-1)^(L-1) (d-2) C(n, L).
BigCount d_lambda(int d, int n);

/// Membership predicate over words with symbols in [0, d), symbol 0 being the
/// dominant species. A word of length n belongs iff the count of symbol 0
/// exceeds n/2, or, for even n with exactly n/2 occurrences, the second
/// non-zero symbol in positional order differs from the first. The even rule
/// is the one whose count reproduces the closed form above (see README).
bool lambda_membership(std::span<const int> word);

/// Independent oracle for d_lambda: enumerate all d^n words and count the
/// members. Requires d^n <= 10^7.
BigCount d_lambda_bruteforce(int d, int n);

/// Diagonal weights q_i = <e_i|rho|e_i> over an orthonormal basis whose first
/// d vectors span the retained space; any remaining vectors extend it toward
/// the ambient space.
struct SiteWeights {
    double q_s = 0.0;             // <e_1|rho|e_1>
    std::vector<double> q_r;      // e_2 .. e_d
    std::vector<double> q_ext;    // e_{d+1} .. e_{d*}, optional

    int d() const { return 1 + static_cast<int>(q_r.size()); }
    int d_star() const { return d() + static_cast<int>(q_ext.size()); }
    double weight(int symbol) const;
    double retained_sum() const;  // R = sum of q_r
};

SiteWeights site_weights(const DensityOperator& rho, const std::vector<PureState>& basis, int d);

/// Closed-form fidelity Tr(rho^(x)n W) over the majority-species words:
/// F = sum_{j=0}^{L-1} C(n,j) q_s^(n-j) R^j, plus for even n = 2L the term
/// C(n,L) q_s^L (R^2 - sum q_r^2) R^(L-2).
double fidelity_majority(const SiteWeights& w, int n);

/// Same quantity by explicit construction: builds rho^(x)n and the projector
/// W onto the member words as dense matrices and takes the trace. Requires
/// dim(rho)^n <= 4096. Must agree with fidelity_majority to 1e-10.
double fidelity_bruteforce(const DensityOperator& rho, const std::vector<PureState>& basis, int d,
                           int n);

/// Fidelity contribution of an explicit word set over the extended alphabet
/// [0, d_star). Words must be distinct.
double fidelity_subspace(const SiteWeights& w, const std::vector<std::vector<int>>& words);

struct BestSubspace {
    double fidelity = 0.0;
    std::vector<std::vector<int>> words;  // the selected words, best first
};

/// The exact optimum over equal-dimension subspaces: the top-`dim` words by
/// product weight (ties broken lexicographically), with the achieved
/// fidelity. Requires dim <= 10^6 and d_star^n <= 10^7.
BestSubspace best_equal_dim_fidelity(const SiteWeights& w, int n, const BigCount& dim);

/// All member words of the (d, n) construction in lexicographic order.
std::vector<std::vector<int>> lambda_words(int d, int n);

}  // namespace qnc
