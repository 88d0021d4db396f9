#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qnc/quantum.hpp"
#include "qnc/source.hpp"

namespace qnc {

/// Classical record of which subspace each signal came from:
/// bit i = 0 iff signal i is from H1.
struct MembershipString {
    std::vector<std::uint8_t> bits;

    int length() const { return static_cast<int>(bits.size()); }
};

/// The three-way entropy split S(rho) = H(X) + p1 S(rho1) + p2 S(rho2),
/// all in bits. residual is the defect of that identity as computed.
struct EntropyReport {
    double p1;
    double s_total;
    double h_x;
    double s1;
    double s2;
    double residual;
};

/// Pi_1 = sum_j |e1_j><e1_j|, rank d1.
Projector projector_pi1(const DecomposableSource& source);

MembershipString membership_string(const SignalSequence& seq);

EntropyReport entropy_decomposition(const DecomposableSource& source);

/// H(X) + p1 S(rho1) + p2 S(rho2) - S(p1 rho1 + p2 rho2) for two ensembles in
/// a common ambient space. Orthogonality is not required: the gap is ~0 for
/// orthogonal subspaces and strictly positive when they overlap, which is the
/// computable face of "block coding cannot separate two nonorthogonal
/// subspaces".
double subadditivity_gap(double p1, const SignalEnsemble& ens1, const SignalEnsemble& ens2);

/// Support-overlap magnitudes (Tr of rho2 compressed onto supp(rho1), and
/// vice versa). Both below 1e-9 iff the supports are orthogonal; this stands
/// in for the trace identity Tr(rho1 log rho2) = Tr(rho2 log rho1) = 0
/// without evaluating log on singular operators.
std::pair<double, double> orthogonality_trace_check(const DensityOperator& rho1,
                                                    const DensityOperator& rho2);

}  // namespace qnc
