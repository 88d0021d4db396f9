#include "qnc/entropy_split.hpp"

#include <cmath>

#include "qnc/huffman.hpp"

namespace qnc {

Projector projector_pi1(const DecomposableSource& source) {
    return projector_from_basis(source.basis1());
}

MembershipString membership_string(const SignalSequence& seq) {
    MembershipString out;
    out.bits.reserve(seq.length());
    for (const auto& e : seq.entries()) {
        out.bits.push_back(e.subspace == 1 ? 0 : 1);
    }
    return out;
}

EntropyReport entropy_decomposition(const DecomposableSource& source) {
    EntropyReport r;
    r.p1 = source.p1();
    r.h_x = shannon_entropy_bits(r.p1);
    r.s1 = von_neumann_entropy(subspace_density(source.sub1()));
    r.s2 = von_neumann_entropy(subspace_density(source.sub2()));
    r.s_total = von_neumann_entropy(total_density(source));
    r.residual = r.s_total - r.h_x - r.p1 * r.s1 - (1.0 - r.p1) * r.s2;
    return r;
}

double subadditivity_gap(double p1, const SignalEnsemble& ens1, const SignalEnsemble& ens2) {
    if (p1 < 0.0 || p1 > 1.0) throw ValidationError("subadditivity_gap: p1 outside [0, 1]");
    if (ens1.ambient_dim() != ens2.ambient_dim()) {
        throw ValidationError("subadditivity_gap: ensembles live in different ambient dimensions");
    }
    const DensityOperator rho1 = subspace_density(ens1);
    const DensityOperator rho2 = subspace_density(ens2);
    const double s1 = von_neumann_entropy(rho1);
    const double s2 = von_neumann_entropy(rho2);
    const double s_mix = von_neumann_entropy(mix(p1, rho1, rho2));
    return shannon_entropy_bits(p1) + p1 * s1 + (1.0 - p1) * s2 - s_mix;
}

std::pair<double, double> orthogonality_trace_check(const DensityOperator& rho1,
                                                    const DensityOperator& rho2) {
    if (rho1.dim() != rho2.dim()) {
        throw ValidationError("orthogonality_trace_check: dimension mismatch");
    }
    // P rho' P is positive for positive rho', so its trace norm is just the
    // trace, and Tr(P rho' P) = Tr(rho' P) by idempotence.
    auto support_overlap = [](const DensityOperator& a, const DensityOperator& b) {
        const Spectrum spectrum = hermitian_eigensystem(a.matrix());
        CMatrix p = CMatrix::Zero(a.dim(), a.dim());
        for (int i = 0; i < spectrum.eigenvalues.size(); ++i) {
            if (spectrum.eigenvalues(i) > kSupportTol) {
                p.noalias() += spectrum.eigenvectors.col(i) * spectrum.eigenvectors.col(i).adjoint();
            }
        }
        return (b.matrix() * p).trace().real();
    };
    return {support_overlap(rho1, rho2), support_overlap(rho2, rho1)};
}

}  // namespace qnc
