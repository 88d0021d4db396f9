#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qnc/quantum.hpp"

namespace qnc {

/// Signal states {|a_i>} with probabilities {p_i} in a common ambient space.
/// On construction the states are canonically re-sorted by non-increasing
/// probability (stable, so equal-probability states keep their input order);
/// original_index(i) recovers the caller's position of canonical state i.
class SignalEnsemble {
public:
    SignalEnsemble(std::vector<PureState> states, std::vector<double> probs);

    int size() const { return static_cast<int>(states_.size()); }
    int ambient_dim() const { return ambient_dim_; }
    const std::vector<PureState>& states() const { return states_; }
    const std::vector<double>& probs() const { return probs_; }
    int original_index(int canonical) const { return original_index_[canonical]; }

private:
    std::vector<PureState> states_;
    std::vector<double> probs_;
    std::vector<int> original_index_;
    int ambient_dim_;
};

/// Source whose signals come from one of two mutually orthogonal subspaces:
/// H1 = span(sub1 states) with weight p1, H2 = span(sub2 states) with 1 - p1.
/// The subspace bases are derived by Gram-Schmidt over each sub-ensemble.
class DecomposableSource {
public:
    double p1() const { return p1_; }
    double p2() const { return 1.0 - p1_; }
    const SignalEnsemble& sub(int k) const { return k == 1 ? sub1_ : sub2_; }
    const SignalEnsemble& sub1() const { return sub1_; }
    const SignalEnsemble& sub2() const { return sub2_; }
    const std::vector<PureState>& basis1() const { return basis1_; }
    const std::vector<PureState>& basis2() const { return basis2_; }
    int d1() const { return static_cast<int>(basis1_.size()); }
    int d2() const { return static_cast<int>(basis2_.size()); }
    int ambient_dim() const { return sub1_.ambient_dim(); }

private:
    friend DecomposableSource compose_source(double p1, SignalEnsemble sub1, SignalEnsemble sub2);
    DecomposableSource(double p1, SignalEnsemble sub1, SignalEnsemble sub2,
                       std::vector<PureState> basis1, std::vector<PureState> basis2);

    double p1_;
    SignalEnsemble sub1_, sub2_;
    std::vector<PureState> basis1_, basis2_;
};

struct SequenceEntry {
    std::uint8_t subspace;  // 1 or 2
    int state_index;        // canonical index into the tagged sub-ensemble
};

class SignalSequence {
public:
    explicit SignalSequence(std::vector<SequenceEntry> entries) : entries_(std::move(entries)) {}
    int length() const { return static_cast<int>(entries_.size()); }
    const std::vector<SequenceEntry>& entries() const { return entries_; }

private:
    std::vector<SequenceEntry> entries_;
};

/// The four maximally entangled two-spin states over the product basis
/// {up-up, up-down, down-up, down-down}, in the order
/// psi_minus, psi_plus, phi_plus, phi_minus.
std::vector<PureState> bell_basis();

/// Built-in source: the singlet psi_minus spans H1 (d1 = 1) with weight p1;
/// the triplet spans H2 (d2 = 3) with uniform conditional probabilities.
DecomposableSource bell_source(double p1 = 0.5);

/// Validates that the two sub-ensembles occupy mutually orthogonal subspaces
/// (every cross pair of signal states orthogonal within kNormTol) and derives
/// the subspace bases. Reports the offending state pair on failure.
DecomposableSource compose_source(double p1, SignalEnsemble sub1, SignalEnsemble sub2);

/// rho_k = sum_j q_k^j |a_j><a_j| for one sub-ensemble, in the ambient space.
DensityOperator subspace_density(const SignalEnsemble& ensemble);

/// rho = p1 rho_1 + p2 rho_2.
DensityOperator total_density(const DecomposableSource& source);

/// i.i.d. draws: subspace tag ~ Bernoulli(p1), state index ~ conditional
/// probabilities, via mt19937_64(seed) and the helpers in rng.hpp (one
/// uniform for the tag, one for the index, inverse CDF). Fixed seed, fixed
/// output, on every platform.
SignalSequence sample_sequence(const DecomposableSource& source, int n, std::uint64_t seed);

using LoadedSource = std::variant<DecomposableSource, SignalEnsemble>;

/// Two raw sub-ensembles plus the subspace weight, loaded without the
/// cross-subspace orthogonality check (the nonorthogonality diagnostics
/// need exactly that freedom).
struct RawSourceBlocks {
    double p1;
    SignalEnsemble ens1;
    SignalEnsemble ens2;
};

/// Parses and validates a source file (see README for the JSON schema).
/// Files with a `subspaces` array yield a DecomposableSource; flat files
/// yield a SignalEnsemble. Errors carry a field-level diagnostic.
LoadedSource load_source(const std::string& path);

/// Same file format, but skips the orthogonality validation between blocks.
RawSourceBlocks load_source_blocks(const std::string& path);

void save_source(const DecomposableSource& source, const std::string& path);
void save_source(const SignalEnsemble& ensemble, const std::string& path);

/// Serialized forms (exact round trip through load_source).
std::string source_to_json(const DecomposableSource& source);
std::string source_to_json(const SignalEnsemble& ensemble);

}  // namespace qnc
