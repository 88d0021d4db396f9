#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qnc/errors.hpp"

namespace qnc {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Tolerances shared across the toolkit.
inline constexpr double kNormTol = 1e-10;        // state normalization, traces, Hermiticity
inline constexpr double kOrthoTol = 1e-8;        // orthonormality of supplied bases
inline constexpr double kPsdTol = 1e-10;         // eigenvalues below -kPsdTol are invalid
inline constexpr double kEntropyCutoff = 1e-12;  // eigenvalues below this contribute 0 to entropy
inline constexpr double kSupportTol = 1e-10;     // eigenvalues above this define the support
inline constexpr int kMaxHilbertDim = 4096;

/// Normalized complex state vector.
class PureState {
public:
    explicit PureState(CVector amplitudes);

    int dim() const { return static_cast<int>(amps_.size()); }
    const CVector& amplitudes() const { return amps_; }

    /// <this|other>
    Complex inner(const PureState& other) const;

    /// |psi><psi|
    CMatrix outer() const { return amps_ * amps_.adjoint(); }

    /// Standard basis vector |index> in the given dimension.
    static PureState basis_vector(int dim, int index);

private:
    CVector amps_;
};

/// Hermitian, unit-trace, positive operator. Construct through from_matrix
/// (full validation) or one of the operations below that preserve the
/// invariants structurally.
class DensityOperator {
public:
    static DensityOperator from_matrix(CMatrix m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const CMatrix& matrix() const { return m_; }
    double trace_real() const { return m_.trace().real(); }

private:
    struct Trusted {};
    DensityOperator(CMatrix m, Trusted) : m_(std::move(m)) {}

    friend DensityOperator density_from_ensemble(const std::vector<PureState>& states,
                                                 const std::vector<double>& probs);
    friend DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);
    friend DensityOperator mix(double w1, const DensityOperator& a, const DensityOperator& b);

    CMatrix m_;
};

/// Eigensystem of a Hermitian matrix, eigenvalues sorted descending.
/// Ordering is deterministic: ties are broken by lexicographic comparison of
/// the real parts of the eigenvector components, and each eigenvector is
/// phase-fixed so its first non-negligible component is real positive.
struct Spectrum {
    Eigen::VectorXd eigenvalues;  // descending
    CMatrix eigenvectors;         // orthonormal columns, col(i) pairs with eigenvalues[i]

    CMatrix reconstruct() const;
};

/// Hermitian idempotent with known rank.
class Projector {
public:
    Projector(CMatrix m, int rank);

    const CMatrix& matrix() const { return m_; }
    int rank() const { return rank_; }
    int dim() const { return static_cast<int>(m_.rows()); }

    CVector apply(const CVector& v) const { return m_ * v; }

private:
    CMatrix m_;
    int rank_;
};

/// rho = sum_i p_i |a_i><a_i|. Probabilities must be nonnegative and sum to 1
/// within kNormTol; all states must share one dimension.
DensityOperator density_from_ensemble(const std::vector<PureState>& states,
                                      const std::vector<double>& probs);

/// Convex combination w1*a + (1-w1)*b of two density operators.
DensityOperator mix(double w1, const DensityOperator& a, const DensityOperator& b);

Spectrum hermitian_eigensystem(const CMatrix& h);

/// -Tr(rho log2 rho) in bits. Eigenvalues below kEntropyCutoff contribute 0;
/// below -kPsdTol the operator is rejected.
double von_neumann_entropy(const DensityOperator& rho);

/// Entropy of a raw eigenvalue list (same clamping rules).
double entropy_of_eigenvalues(const Eigen::VectorXd& eigenvalues);

PureState tensor_product(const PureState& a, const PureState& b);
CMatrix tensor_product(const CMatrix& a, const CMatrix& b);
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);

/// Sum of rank-1 projectors onto the given vectors, which must be
/// orthonormal within kOrthoTol.
Projector projector_from_basis(const std::vector<PureState>& vectors);

/// Modified Gram-Schmidt with reorthogonalization. Throws ValidationError if
/// the input is linearly dependent within `tol`.
std::vector<CVector> gram_schmidt(const std::vector<CVector>& vectors, double tol = 1e-10);

}  // namespace qnc
