#include "qnc/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace qnc {

namespace {

void require_square(const CMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << what << ": matrix must be square and non-empty, got " << m.rows() << "x" << m.cols();
        throw ValidationError(os.str());
    }
    if (m.rows() > kMaxHilbertDim) {
        std::ostringstream os;
        os << what << ": dimension " << m.rows() << " exceeds the supported cap " << kMaxHilbertDim;
        throw ValidationError(os.str());
    }
}

double hermiticity_defect(const CMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

PureState::PureState(CVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) throw ValidationError("PureState: empty amplitude vector");
    const double norm2 = amps_.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "PureState: squared norm " << norm2 << " deviates from 1 by more than " << kNormTol;
        throw ValidationError(os.str());
    }
}

Complex PureState::inner(const PureState& other) const {
    if (dim() != other.dim()) throw ValidationError("PureState::inner: dimension mismatch");
    return amps_.dot(other.amps_);  // Eigen's dot conjugates the left operand
}

PureState PureState::basis_vector(int dim, int index) {
    if (dim < 1 || index < 0 || index >= dim) {
        throw ValidationError("PureState::basis_vector: index out of range");
    }
    CVector v = CVector::Zero(dim);
    v(index) = Complex(1.0, 0.0);
    return PureState(std::move(v));
}

DensityOperator DensityOperator::from_matrix(CMatrix m) {
    require_square(m, "DensityOperator");
    const double herm = hermiticity_defect(m);
    if (herm > kNormTol) {
        std::ostringstream os;
        os << "DensityOperator: not Hermitian, max |rho - rho^dag| = " << herm;
        throw ValidationError(os.str());
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "DensityOperator: trace " << tr << " deviates from 1 by more than " << kNormTol;
        throw ValidationError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ValidationError("DensityOperator: eigensolve failed");
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -kPsdTol) {
        std::ostringstream os;
        os << "DensityOperator: negative eigenvalue " << min_eig;
        throw ValidationError(os.str());
    }
    return DensityOperator(std::move(m), Trusted{});
}

DensityOperator density_from_ensemble(const std::vector<PureState>& states,
                                      const std::vector<double>& probs) {
    if (states.empty()) throw ValidationError("density_from_ensemble: empty ensemble");
    if (states.size() != probs.size()) {
        throw ValidationError("density_from_ensemble: states and probs differ in length");
    }
    const int dim = states.front().dim();
    for (const auto& s : states) {
        if (s.dim() != dim) throw ValidationError("density_from_ensemble: dimension mismatch between states");
    }
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw ValidationError("density_from_ensemble: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "density_from_ensemble: probabilities sum to " << total << ", expected 1";
        throw ValidationError(os.str());
    }
    // Convex mixture of rank-1 projectors: Hermitian, unit trace and PSD by
    // construction, so the trusted path is safe here.
    CMatrix m = CMatrix::Zero(dim, dim);
    for (size_t i = 0; i < states.size(); ++i) {
        if (probs[i] == 0.0) continue;
        m.noalias() += probs[i] * states[i].outer();
    }
    return DensityOperator(std::move(m), DensityOperator::Trusted{});
}

DensityOperator mix(double w1, const DensityOperator& a, const DensityOperator& b) {
    if (w1 < 0.0 || w1 > 1.0) throw ValidationError("mix: weight outside [0, 1]");
    if (a.dim() != b.dim()) throw ValidationError("mix: dimension mismatch");
    CMatrix m = w1 * a.matrix() + (1.0 - w1) * b.matrix();
    return DensityOperator(std::move(m), DensityOperator::Trusted{});
}

CMatrix Spectrum::reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

Spectrum hermitian_eigensystem(const CMatrix& h) {
    require_square(h, "hermitian_eigensystem");
    const double herm = hermiticity_defect(h);
    if (herm > kNormTol) {
        std::ostringstream os;
        os << "hermitian_eigensystem: not Hermitian, max |H - H^dag| = " << herm;
        throw ValidationError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw ValidationError("hermitian_eigensystem: solver failed");

    const int n = static_cast<int>(h.rows());
    CMatrix vecs = solver.eigenvectors();
    Eigen::VectorXd vals = solver.eigenvalues();

    // Phase convention: first component with magnitude above kEntropyCutoff
    // is made real positive.
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Complex c = vecs(i, j);
            if (std::abs(c) > kEntropyCutoff) {
                vecs.col(j) *= std::conj(c) / std::abs(c);
                break;
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (vals(a) != vals(b)) return vals(a) > vals(b);
        for (int i = 0; i < n; ++i) {
            const double ra = vecs(i, a).real();
            const double rb = vecs(i, b).real();
            if (ra != rb) return ra < rb;
        }
        return false;
    });

    Spectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (int j = 0; j < n; ++j) {
        out.eigenvalues(j) = vals(order[j]);
        out.eigenvectors.col(j) = vecs.col(order[j]);
    }
    return out;
}

double entropy_of_eigenvalues(const Eigen::VectorXd& eigenvalues) {
    double s = 0.0;
    for (int i = 0; i < eigenvalues.size(); ++i) {
        const double lambda = eigenvalues(i);
        if (lambda < -kPsdTol) {
            std::ostringstream os;
            os << "entropy: eigenvalue " << lambda << " below -" << kPsdTol;
            throw ValidationError(os.str());
        }
        if (lambda < kEntropyCutoff) continue;
        s -= lambda * std::log2(lambda);
    }
    return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityOperator& rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ValidationError("von_neumann_entropy: eigensolve failed");
    return entropy_of_eigenvalues(solver.eigenvalues());
}

PureState tensor_product(const PureState& a, const PureState& b) {
    CVector v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
    return PureState(std::move(v));
}

CMatrix tensor_product(const CMatrix& a, const CMatrix& b) {
    return Eigen::kroneckerProduct(a, b);
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
    if (static_cast<long>(a.dim()) * b.dim() > kMaxHilbertDim) {
        throw ValidationError("tensor_product: result dimension exceeds the supported cap");
    }
    // Kronecker products preserve Hermiticity, positivity and (unit) trace.
    CMatrix m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
    return DensityOperator(std::move(m), DensityOperator::Trusted{});
}

Projector::Projector(CMatrix m, int rank) : m_(std::move(m)), rank_(rank) {
    require_square(m_, "Projector");
    if (rank_ < 0 || rank_ > m_.rows()) throw ValidationError("Projector: rank out of range");
    if (hermiticity_defect(m_) > kNormTol) throw ValidationError("Projector: not Hermitian");
    const double idem = (m_ * m_ - m_).cwiseAbs().maxCoeff();
    if (idem > kNormTol) {
        std::ostringstream os;
        os << "Projector: not idempotent, max |P^2 - P| = " << idem;
        throw ValidationError(os.str());
    }
    if (std::abs(m_.trace().real() - rank_) > 1e-8) {
        throw ValidationError("Projector: trace does not match the declared rank");
    }
}

Projector projector_from_basis(const std::vector<PureState>& vectors) {
    if (vectors.empty()) throw ValidationError("projector_from_basis: empty basis");
    const int dim = vectors.front().dim();
    for (size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].dim() != dim) throw ValidationError("projector_from_basis: dimension mismatch");
        for (size_t j = 0; j <= i; ++j) {
            const Complex g = vectors[j].inner(vectors[i]);
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - expected) > kOrthoTol) {
                std::ostringstream os;
                os << "projector_from_basis: vectors " << j << " and " << i
                   << " are not orthonormal, <u|v> = " << std::abs(g);
                throw ValidationError(os.str());
            }
        }
    }
    CMatrix m = CMatrix::Zero(dim, dim);
    for (const auto& v : vectors) m.noalias() += v.outer();
    return Projector(std::move(m), static_cast<int>(vectors.size()));
}

std::vector<CVector> gram_schmidt(const std::vector<CVector>& vectors, double tol) {
    std::vector<CVector> basis;
    basis.reserve(vectors.size());
    for (size_t i = 0; i < vectors.size(); ++i) {
        CVector v = vectors[i];
        if (!basis.empty() && v.size() != basis.front().size()) {
            throw ValidationError("gram_schmidt: dimension mismatch");
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) v -= b.dot(v) * b;
        }
        const double norm = v.norm();
        if (norm < tol) {
            std::ostringstream os;
            os << "gram_schmidt: vector " << i << " is linearly dependent on its predecessors"
               << " (residual norm " << norm << ")";
            throw ValidationError(os.str());
        }
        basis.push_back(v / norm);
    }
    return basis;
}

}  // namespace qnc
