#include "qnc/source.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "qnc/rng.hpp"

namespace qnc {

namespace {

using nlohmann::json;

void check_probability_vector(const std::vector<double>& probs, const std::string& where) {
    double total = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] < 0.0) {
            std::ostringstream os;
            os << where << ": probs[" << i << "] = " << probs[i] << " is negative";
            throw ValidationError(os.str());
        }
        total += probs[i];
    }
    if (std::abs(total - 1.0) > kNormTol) {
        std::ostringstream os;
        os << where << ": probs sum to " << total << ", expected 1 within " << kNormTol;
        throw ValidationError(os.str());
    }
}

}  // namespace

SignalEnsemble::SignalEnsemble(std::vector<PureState> states, std::vector<double> probs) {
    if (states.empty()) throw ValidationError("SignalEnsemble: no states");
    if (states.size() != probs.size()) {
        throw ValidationError("SignalEnsemble: states and probs differ in length");
    }
    ambient_dim_ = states.front().dim();
    for (const auto& s : states) {
        if (s.dim() != ambient_dim_) {
            throw ValidationError("SignalEnsemble: states have mixed dimensions");
        }
    }
    check_probability_vector(probs, "SignalEnsemble");

    // Linear independence: the Gram matrix of the states must be strictly
    // positive definite.
    const int n = static_cast<int>(states.size());
    CMatrix gram(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) gram(i, j) = states[i].inner(states[j]);
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig <= 1e-10) {
        std::ostringstream os;
        os << "SignalEnsemble: states are linearly dependent (Gram matrix min eigenvalue "
           << min_eig << ")";
        throw ValidationError(os.str());
    }

    // Canonical ordering: non-increasing probability, stable.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return probs[a] > probs[b]; });
    states_.reserve(n);
    probs_.reserve(n);
    original_index_ = order;
    for (int i : order) {
        states_.push_back(std::move(states[i]));
        probs_.push_back(probs[i]);
    }
}

DecomposableSource::DecomposableSource(double p1, SignalEnsemble sub1, SignalEnsemble sub2,
                                       std::vector<PureState> basis1, std::vector<PureState> basis2)
    : p1_(p1),
      sub1_(std::move(sub1)),
      sub2_(std::move(sub2)),
      basis1_(std::move(basis1)),
      basis2_(std::move(basis2)) {}

DecomposableSource compose_source(double p1, SignalEnsemble sub1, SignalEnsemble sub2) {
    if (p1 < 0.0 || p1 > 1.0) throw ValidationError("compose_source: p1 outside [0, 1]");
    if (sub1.ambient_dim() != sub2.ambient_dim()) {
        throw ValidationError("compose_source: sub-ensembles live in different ambient dimensions");
    }
    for (int i = 0; i < sub1.size(); ++i) {
        for (int j = 0; j < sub2.size(); ++j) {
            const double overlap = std::abs(sub1.states()[i].inner(sub2.states()[j]));
            if (overlap > kNormTol) {
                std::ostringstream os;
                os << "compose_source: subspaces not orthogonal, |<sub1[" << i << "]|sub2[" << j
                   << "]>| = " << overlap;
                throw ValidationError(os.str());
            }
        }
    }

    auto derive_basis = [](const SignalEnsemble& ens) {
        std::vector<CVector> raw;
        raw.reserve(ens.size());
        for (const auto& s : ens.states()) raw.push_back(s.amplitudes());
        std::vector<CVector> ortho = gram_schmidt(raw);
        std::vector<PureState> basis;
        basis.reserve(ortho.size());
        for (auto& v : ortho) basis.emplace_back(std::move(v));
        return basis;
    };
    std::vector<PureState> basis1 = derive_basis(sub1);
    std::vector<PureState> basis2 = derive_basis(sub2);

    for (size_t i = 0; i < basis1.size(); ++i) {
        for (size_t j = 0; j < basis2.size(); ++j) {
            const double overlap = std::abs(basis1[i].inner(basis2[j]));
            if (overlap > kNormTol) {
                std::ostringstream os;
                os << "compose_source: derived bases not orthogonal, |<e1_" << i << "|e2_" << j
                   << ">| = " << overlap;
                throw ValidationError(os.str());
            }
        }
    }

    return DecomposableSource(p1, std::move(sub1), std::move(sub2), std::move(basis1),
                              std::move(basis2));
}

std::vector<PureState> bell_basis() {
    // sqrt(0.5) is the correctly rounded double for 1/sqrt(2), bit-identical
    // to the decimal literal 0.7071067811865476 in the shipped fixture.
    const double s = std::sqrt(0.5);
    auto make = [](std::initializer_list<double> re) {
        CVector v(4);
        int i = 0;
        for (double x : re) v(i++) = Complex(x, 0.0);
        return PureState(std::move(v));
    };
    return {
        make({0.0, s, -s, 0.0}),  // psi_minus
        make({0.0, s, s, 0.0}),   // psi_plus
        make({s, 0.0, 0.0, s}),   // phi_plus
        make({s, 0.0, 0.0, -s}),  // phi_minus
    };
}

DecomposableSource bell_source(double p1) {
    std::vector<PureState> bell = bell_basis();
    SignalEnsemble singlet({bell[0]}, {1.0});
    const double third = 1.0 / 3.0;
    SignalEnsemble triplet({bell[1], bell[2], bell[3]}, {third, third, third});
    return compose_source(p1, std::move(singlet), std::move(triplet));
}

DensityOperator subspace_density(const SignalEnsemble& ensemble) {
    return density_from_ensemble(ensemble.states(), ensemble.probs());
}

DensityOperator total_density(const DecomposableSource& source) {
    return mix(source.p1(), subspace_density(source.sub1()), subspace_density(source.sub2()));
}

SignalSequence sample_sequence(const DecomposableSource& source, int n, std::uint64_t seed) {
    if (n < 1) throw ValidationError("sample_sequence: n must be >= 1");
    std::mt19937_64 gen(seed);
    auto draw_index = [&](const SignalEnsemble& ens) {
        const double u = uniform01(gen);
        double cum = 0.0;
        const auto& probs = ens.probs();
        for (int i = 0; i < ens.size(); ++i) {
            cum += probs[i];
            if (u < cum) return i;
        }
        return ens.size() - 1;
    };
    std::vector<SequenceEntry> entries;
    entries.reserve(n);
    for (int i = 0; i < n; ++i) {
        const bool from_h1 = uniform01(gen) < source.p1();
        if (from_h1) {
            entries.push_back({1, draw_index(source.sub1())});
        } else {
            entries.push_back({2, draw_index(source.sub2())});
        }
    }
    return SignalSequence(std::move(entries));
}

namespace {

json state_to_json(const PureState& s) {
    json arr = json::array();
    for (int i = 0; i < s.dim(); ++i) {
        arr.push_back({s.amplitudes()(i).real(), s.amplitudes()(i).imag()});
    }
    return arr;
}

json ensemble_block_to_json(const SignalEnsemble& ens) {
    json block;
    json states = json::array();
    for (const auto& s : ens.states()) states.push_back(state_to_json(s));
    block["states"] = std::move(states);
    block["probs"] = ens.probs();
    return block;
}

PureState state_from_json(const json& j, int ambient_dim, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != ambient_dim) {
        std::ostringstream os;
        os << where << ": expected " << ambient_dim << " amplitude pairs";
        throw ValidationError(os.str());
    }
    CVector v(ambient_dim);
    for (int i = 0; i < ambient_dim; ++i) {
        const json& pair = j[i];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            std::ostringstream os;
            os << where << "[" << i << "]: expected [re, im]";
            throw ValidationError(os.str());
        }
        v(i) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    try {
        return PureState(std::move(v));
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

SignalEnsemble ensemble_from_json(const json& block, int ambient_dim, const std::string& where) {
    if (!block.contains("states") || !block["states"].is_array() || block["states"].empty()) {
        throw ValidationError(where + ".states: missing or empty");
    }
    if (!block.contains("probs") || !block["probs"].is_array()) {
        throw ValidationError(where + ".probs: missing");
    }
    std::vector<PureState> states;
    for (size_t i = 0; i < block["states"].size(); ++i) {
        std::ostringstream os;
        os << where << ".states[" << i << "]";
        states.push_back(state_from_json(block["states"][i], ambient_dim, os.str()));
    }
    std::vector<double> probs;
    for (size_t i = 0; i < block["probs"].size(); ++i) {
        if (!block["probs"][i].is_number()) {
            std::ostringstream os;
            os << where << ".probs[" << i << "]: expected a number";
            throw ValidationError(os.str());
        }
        probs.push_back(block["probs"][i].get<double>());
    }
    try {
        return SignalEnsemble(std::move(states), std::move(probs));
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

struct ParsedSourceFile {
    int ambient_dim = 0;
    std::optional<double> p1;
    std::vector<SignalEnsemble> blocks;  // 1 (flat) or 2 (subspaces)
};

ParsedSourceFile parse_source_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open source file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("source file parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("source file: top level must be an object");
    if (!doc.contains("ambient_dim") || !doc["ambient_dim"].is_number_integer()) {
        throw ValidationError("source file: missing integer field ambient_dim");
    }
    ParsedSourceFile out;
    out.ambient_dim = doc["ambient_dim"].get<int>();
    if (out.ambient_dim < 1 || out.ambient_dim > kMaxHilbertDim) {
        throw ValidationError("source file: ambient_dim out of range");
    }

    if (doc.contains("subspaces")) {
        const json& subs = doc["subspaces"];
        if (!subs.is_array() || subs.size() != 2) {
            throw ValidationError("source file: subspaces must be an array of exactly two blocks");
        }
        double p[2];
        for (int k = 0; k < 2; ++k) {
            std::ostringstream os;
            os << "subspaces[" << k << "]";
            const std::string where = os.str();
            if (!subs[k].contains("p_subspace") || !subs[k]["p_subspace"].is_number()) {
                throw ValidationError(where + ".p_subspace: missing number");
            }
            p[k] = subs[k]["p_subspace"].get<double>();
            if (p[k] < 0.0 || p[k] > 1.0) {
                throw ValidationError(where + ".p_subspace: outside [0, 1]");
            }
            out.blocks.push_back(ensemble_from_json(subs[k], out.ambient_dim, where));
        }
        if (std::abs(p[0] + p[1] - 1.0) > kNormTol) {
            std::ostringstream os;
            os << "source file: subspace weights sum to " << p[0] + p[1] << ", expected 1";
            throw ValidationError(os.str());
        }
        out.p1 = p[0];
    } else {
        out.blocks.push_back(ensemble_from_json(doc, out.ambient_dim, "source"));
    }
    return out;
}

}  // namespace

LoadedSource load_source(const std::string& path) {
    ParsedSourceFile parsed = parse_source_file(path);
    if (parsed.blocks.size() == 2) {
        return compose_source(*parsed.p1, std::move(parsed.blocks[0]), std::move(parsed.blocks[1]));
    }
    return std::move(parsed.blocks[0]);
}

RawSourceBlocks load_source_blocks(const std::string& path) {
    ParsedSourceFile parsed = parse_source_file(path);
    if (parsed.blocks.size() != 2) {
        throw ValidationError("source file: two subspace blocks required for this operation");
    }
    return RawSourceBlocks{*parsed.p1, std::move(parsed.blocks[0]), std::move(parsed.blocks[1])};
}

std::string source_to_json(const DecomposableSource& source) {
    json doc;
    doc["ambient_dim"] = source.ambient_dim();
    json b1 = ensemble_block_to_json(source.sub1());
    b1["p_subspace"] = source.p1();
    json b2 = ensemble_block_to_json(source.sub2());
    b2["p_subspace"] = source.p2();
    doc["subspaces"] = json::array({std::move(b1), std::move(b2)});
    return doc.dump(2) + "\n";
}

std::string source_to_json(const SignalEnsemble& ensemble) {
    json doc = ensemble_block_to_json(ensemble);
    doc["ambient_dim"] = ensemble.ambient_dim();
    return doc.dump(2) + "\n";
}

namespace {
void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}
}  // namespace

void save_source(const DecomposableSource& source, const std::string& path) {
    write_file(path, source_to_json(source));
}

void save_source(const SignalEnsemble& ensemble, const std::string& path) {
    write_file(path, source_to_json(ensemble));
}

}  // namespace qnc
