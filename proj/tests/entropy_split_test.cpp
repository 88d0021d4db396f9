#include <doctest.h>

#include <cmath>

#include "qnc/entropy_split.hpp"
#include "qnc/huffman.hpp"
#include "test_support.hpp"

using namespace qnc;

namespace {

// The standard overlapping pair: ens1 = {|0>}, ens2 = {cos t |0> + sin t |1>}.
std::pair<SignalEnsemble, SignalEnsemble> overlapping_pair(double theta) {
    CVector tilted(2);
    tilted << Complex(std::cos(theta), 0), Complex(std::sin(theta), 0);
    return {SignalEnsemble({PureState::basis_vector(2, 0)}, {1.0}),
            SignalEnsemble({PureState(tilted)}, {1.0})};
}

}  // namespace

TEST_CASE("projector_pi1 on the Bell fixture") {
    const DecomposableSource src = bell_source(0.5);
    const Projector pi1 = projector_pi1(src);
    CHECK(pi1.rank() == 1);

    // Pi_1 fixes sub1 states and annihilates sub2 states.
    const CVector fixed = pi1.apply(src.sub1().states()[0].amplitudes());
    CHECK((fixed - src.sub1().states()[0].amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
    for (const auto& s : src.sub2().states()) {
        CHECK(pi1.apply(s.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("membership_string maps tags to bits") {
    SUBCASE("all-tag-1 gives zeros") {
        SignalSequence seq({{1, 0}, {1, 0}, {1, 0}, {1, 0}});
        const MembershipString m = membership_string(seq);
        CHECK(m.bits == std::vector<std::uint8_t>{0, 0, 0, 0});
    }
    SUBCASE("tags (1,2,2,1) give 0110") {
        SignalSequence seq({{1, 0}, {2, 1}, {2, 2}, {1, 0}});
        const MembershipString m = membership_string(seq);
        CHECK(m.bits == std::vector<std::uint8_t>{0, 1, 1, 0});
    }
    SUBCASE("sampled zero-fraction tracks p1") {
        const DecomposableSource src = bell_source(0.25);
        const SignalSequence seq = sample_sequence(src, 10000, 31337);
        const MembershipString m = membership_string(seq);
        int zeros = 0;
        for (auto b : m.bits) {
            if (b == 0) ++zeros;
        }
        CHECK(std::abs(zeros / 10000.0 - 0.25) < 0.02);
        // bit i is exactly tag i - 1
        for (int i = 0; i < seq.length(); ++i) {
            CHECK(m.bits[i] == seq.entries()[i].subspace - 1);
        }
    }
}

TEST_CASE("entropy_decomposition") {
    SUBCASE("Bell fixture values") {
        const EntropyReport r = entropy_decomposition(bell_source(0.5));
        CHECK(r.s_total == doctest::Approx(1.0 + 0.5 * std::log2(3.0)).epsilon(1e-12));
        CHECK(r.h_x == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.s1 == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(r.s2 == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
        CHECK(std::abs(r.residual) < 1e-9);
    }
    SUBCASE("p1 = 1 collapses to the first subspace") {
        const EntropyReport r = entropy_decomposition(bell_source(1.0));
        CHECK(r.h_x == 0.0);
        CHECK(r.s_total == doctest::Approx(r.s1).epsilon(1e-12));
    }
    SUBCASE("two orthogonal pure states at p1 = 1/2 carry exactly one bit") {
        SignalEnsemble a({PureState::basis_vector(2, 0)}, {1.0});
        SignalEnsemble b({PureState::basis_vector(2, 1)}, {1.0});
        const EntropyReport r = entropy_decomposition(compose_source(0.5, a, b));
        CHECK(r.s_total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.s1 == doctest::Approx(0.0));
        CHECK(r.s2 == doctest::Approx(0.0));
        CHECK(std::abs(r.residual) < 1e-12);
    }
    SUBCASE("randomized orthogonal sources have vanishing residual") {
        std::mt19937_64 gen(271828);
        for (int t = 0; t < 50; ++t) {
            const int d1 = 1 + static_cast<int>(gen() % 4);
            const int d2 = 1 + static_cast<int>(gen() % 4);
            const int ambient = d1 + d2 + static_cast<int>(gen() % 2);
            const double p1 = uniform01(gen);
            const DecomposableSource src =
                test::random_source(gen, ambient, d1, d2, d1, d2, p1);
            CHECK(std::abs(entropy_decomposition(src).residual) < 1e-9);
        }
    }
}

TEST_CASE("subadditivity_gap") {
    SUBCASE("orthogonal Bell split has zero gap") {
        const DecomposableSource src = bell_source(0.5);
        const double gap = subadditivity_gap(0.5, src.sub1(), src.sub2());
        CHECK(std::abs(gap) < 1e-9);
    }
    SUBCASE("identical single-state ensembles give H(p1)") {
        SignalEnsemble a({PureState::basis_vector(2, 0)}, {1.0});
        SignalEnsemble b({PureState::basis_vector(2, 0)}, {1.0});
        CHECK(subadditivity_gap(0.5, a, b) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("theta = pi/4 overlap against the 2x2 eigendecomposition oracle") {
        const double theta = M_PI / 4.0;
        auto [a, b] = overlapping_pair(theta);
        const double gap = subadditivity_gap(0.5, a, b);
        // oracle: mixture eigenvalues are (1 +- cos theta) / 2
        const double lp = (1.0 + std::cos(theta)) / 2.0;
        const double lm = (1.0 - std::cos(theta)) / 2.0;
        const double s_mix = -lp * std::log2(lp) - lm * std::log2(lm);
        CHECK(gap == doctest::Approx(1.0 - s_mix).epsilon(1e-10));
        CHECK(gap > 0.0);
        CHECK(gap < 1.0);
    }
    SUBCASE("gap is never materially negative, zero exactly when orthogonal") {
        std::mt19937_64 gen(99);
        for (int t = 0; t < 30; ++t) {
            // random possibly-overlapping ensembles in dim 4
            SignalEnsemble a({test::random_pure_state(gen, 4)}, {1.0});
            SignalEnsemble b({test::random_pure_state(gen, 4)}, {1.0});
            const double p1 = uniform01(gen);
            CHECK(subadditivity_gap(p1, a, b) >= -1e-9);
        }
        for (int t = 0; t < 20; ++t) {
            const DecomposableSource src = test::random_source(gen, 6, 2, 3, 2, 3, uniform01(gen));
            CHECK(std::abs(subadditivity_gap(src.p1(), src.sub1(), src.sub2())) < 1e-9);
        }
    }
}

TEST_CASE("orthogonality_trace_check") {
    SUBCASE("Bell fixture supports are orthogonal") {
        const DecomposableSource src = bell_source(0.5);
        const auto [a, b] = orthogonality_trace_check(subspace_density(src.sub1()),
                                                      subspace_density(src.sub2()));
        CHECK(a < 1e-9);
        CHECK(b < 1e-9);
    }
    SUBCASE("identical maximally mixed operators overlap fully") {
        const DensityOperator half = DensityOperator::from_matrix(0.5 * CMatrix::Identity(2, 2));
        const auto [a, b] = orthogonality_trace_check(half, half);
        CHECK(a == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(b == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("theta = pi/4 case overlaps by cos^2 theta") {
        auto [ens_a, ens_b] = overlapping_pair(M_PI / 4.0);
        const auto [a, b] =
            orthogonality_trace_check(subspace_density(ens_a), subspace_density(ens_b));
        CHECK(a == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(b == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("agrees with the compose_source validator") {
        std::mt19937_64 gen(1312);
        for (int t = 0; t < 10; ++t) {
            const DecomposableSource src = test::random_source(gen, 5, 2, 2, 2, 2, 0.5);
            const auto [a, b] = orthogonality_trace_check(subspace_density(src.sub1()),
                                                          subspace_density(src.sub2()));
            CHECK(a < 1e-9);
            CHECK(b < 1e-9);
        }
        auto [ens_a, ens_b] = overlapping_pair(0.4);
        SignalEnsemble a2 = ens_a, b2 = ens_b;
        CHECK_THROWS_AS(compose_source(0.5, std::move(a2), std::move(b2)), ValidationError);
        const auto [oa, ob] =
            orthogonality_trace_check(subspace_density(ens_a), subspace_density(ens_b));
        CHECK(oa > 1e-9);
        CHECK(ob > 1e-9);
    }
}
