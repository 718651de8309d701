// Copyright 2026 The qann Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <qann/gates.hpp>
#include <qann/qstate.hpp>

#include "oracles.hpp"

using namespace qann;
using Catch::Matchers::WithinAbs;

namespace {

auto random_state(std::size_t n, std::mt19937_64 &rng) -> StateVector {
    std::normal_distribution<double> g;
    std::vector<Complex> amps(std::size_t{1} << n);
    for (auto &a : amps) {
        a = {g(rng), g(rng)};
    }
    return StateVector::normalized(n, std::move(amps));
}

auto random_product(std::size_t n, std::mt19937_64 &rng) -> StateVector {
    auto s = random_state(1, rng);
    for (std::size_t q = 1; q < n; ++q) {
        s = tensor(s, random_state(1, rng));
    }
    return s;
}

const double kR = 1.0 / std::sqrt(2.0);

} // namespace

TEST_CASE("basis_state", "[qstate]") {
    auto s = basis_state(2, "00");
    CHECK(s[0] == Complex{1.0});
    CHECK(s[1] == Complex{});

    s = basis_state(2, "11");
    CHECK(s[3] == Complex{1.0});
    CHECK(s[0] == Complex{});

    // |0;00;0> of the four-neuron network
    s = basis_state(4, "0;00;0");
    CHECK(s.n_qubits() == 4);
    CHECK(s[0] == Complex{1.0});

    CHECK(basis_state(3, "100")[4] == Complex{1.0});

    CHECK_THROWS_AS(basis_state(3, "00"), ConfigurationError);
    CHECK_THROWS_AS(basis_state(2, "0x"), ConfigurationError);
}

TEST_CASE("StateVector validates its invariants", "[qstate]") {
    CHECK_THROWS_AS(StateVector(1, {1.0, 1.0}), ArgumentError);
    CHECK_THROWS_AS(StateVector(2, {1.0, 0.0}), ArgumentError);
    CHECK_THROWS_AS(StateVector(1, {std::nan(""), 0.0}), ArgumentError);
    CHECK_THROWS_AS(StateVector::normalized(1, {0.0, 0.0}), ArgumentError);
    CHECK_NOTHROW(StateVector(1, {kR, kR}));
}

TEST_CASE("tensor", "[qstate]") {
    const auto zero = basis_state(1, "0");
    const auto one = basis_state(1, "1");
    CHECK(max_abs_diff(tensor(zero, one), basis_state(2, "01")) == 0.0);

    const StateVector plus{1, {kR, kR}};
    const auto pz = tensor(plus, zero);
    CHECK_THAT(pz[0].real(), WithinAbs(kR, 1e-15));
    CHECK_THAT(pz[2].real(), WithinAbs(kR, 1e-15));
    CHECK(pz[1] == Complex{});
    CHECK(pz[3] == Complex{});

    // |psi_phi> (x) |0> at phi = (0,0,0,pi): (cos pi/4, 0, -sin pi/4, 0)
    const auto psi = apply_single(zero, u2_from_params({0, 0, 0, std::numbers::pi}), 1);
    const auto s = tensor(psi, zero);
    CHECK_THAT(std::abs(s[0] - Complex{std::cos(std::numbers::pi / 4)}), WithinAbs(0, 1e-15));
    CHECK_THAT(std::abs(s[2] - Complex{-std::sin(std::numbers::pi / 4)}), WithinAbs(0, 1e-15));
    CHECK(std::abs(s[1]) < 1e-15);
    CHECK(std::abs(s[3]) < 1e-15);
}

TEST_CASE("tensor is associative", "[qstate][property]") {
    std::mt19937_64 rng{7};
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_state(1 + trial % 2, rng);
        const auto b = random_state(1 + trial % 3, rng);
        const auto c = random_state(1, rng);
        CHECK(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) <= 1e-14);
    }
}

TEST_CASE("reduced_density", "[qstate]") {
    SECTION("Bell pair keeps a maximally mixed qubit") {
        const StateVector bell{2, {kR, 0, 0, kR}};
        const auto rho = reduced_density(bell, {1});
        CHECK(rho.n_qubits == 1);
        CHECK((rho.entries - 0.5 * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    }
    SECTION("product state") {
        const auto rho = reduced_density(basis_state(2, "01"), {2});
        CHECK(std::abs(rho.entries(1, 1) - 1.0) < 1e-15);
        CHECK(std::abs(rho.entries(0, 0)) < 1e-15);
    }
    SECTION("complementarity state at phi3 = pi, output neuron") {
        // psi0|0>|+> + psi1|1>|->, psi = (cos pi/4, -sin pi/4)
        const double c = std::cos(std::numbers::pi / 4);
        const double s = -std::sin(std::numbers::pi / 4);
        const std::vector<Complex> v{c * kR, c * kR, s * kR, -s * kR};
        const auto rho = reduced_density(StateVector{2, v}, {2});
        const auto ref = oracle::partial_trace(v, 2, {2});
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                CHECK(std::abs(rho.entries(i, j) - ref[i][j]) < 1e-15);
            }
        }
        // |cos|^2 |+><+| + |sin|^2 |-><-| = I/2 here
        CHECK(std::abs(rho.entries(0, 0) - 0.5) < 1e-15);
        CHECK(std::abs(rho.entries(0, 1)) < 1e-15);
    }
    SECTION("matches brute-force enumeration on random states") {
        std::mt19937_64 rng{11};
        const auto st = random_state(4, rng);
        const std::vector<Complex> v(st.amps().begin(), st.amps().end());
        for (const std::vector<std::size_t> &keep :
             {std::vector<std::size_t>{1}, {2, 4}, {1, 3, 4}, {1, 2, 3, 4}}) {
            const auto rho = reduced_density(st, keep);
            const auto ref = oracle::partial_trace(v, 4, keep);
            for (std::size_t i = 0; i < ref.size(); ++i) {
                for (std::size_t j = 0; j < ref.size(); ++j) {
                    CHECK(std::abs(rho.entries(i, j) - ref[i][j]) < 1e-14);
                }
            }
        }
    }
    SECTION("keep order does not matter") {
        std::mt19937_64 rng{3};
        const auto st = random_state(3, rng);
        const std::vector<std::size_t> a{1, 3};
        const std::vector<std::size_t> b{3, 1};
        CHECK((reduced_density(st, a).entries - reduced_density(st, b).entries).norm() == 0.0);
    }
    SECTION("errors") {
        const auto st = basis_state(2, "00");
        CHECK_THROWS_AS(reduced_density(st, std::vector<std::size_t>{}), ArgumentError);
        CHECK_THROWS_AS(reduced_density(st, {3}), ArgumentError);
        CHECK_THROWS_AS(reduced_density(st, {0}), ArgumentError);
        CHECK_THROWS_AS(reduced_density(st, {1, 1}), ArgumentError);
    }
}

TEST_CASE("reduced density invariants", "[qstate][property]") {
    std::mt19937_64 rng{5};
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const auto st = random_state(n, rng);
        const auto prod = random_product(n, rng);
        std::vector<std::size_t> keep;
        for (std::size_t q = 1; q <= n; ++q) {
            if ((trial >> (q - 1)) & 1) {
                keep.push_back(q);
            }
        }
        if (keep.empty()) {
            keep.push_back(n);
        }
        const auto rho = reduced_density(st, keep);
        CHECK(std::abs(rho.trace() - 1.0) <= 1e-10);
        CHECK(rho.is_valid());
        CHECK(von_neumann_entropy(reduced_density(prod, keep)) < 1e-9);
    }
}

TEST_CASE("measure_probabilities", "[qstate]") {
    const StateVector plus{1, {kR, kR}};
    auto [p0, p1] = measure_probabilities(plus, 1, Basis::PlusMinus);
    CHECK_THAT(p0, WithinAbs(1.0, 1e-15));
    CHECK_THAT(p1, WithinAbs(0.0, 1e-15));

    std::tie(p0, p1) = measure_probabilities(plus, 1, Basis::Computational);
    CHECK_THAT(p0, WithinAbs(0.5, 1e-15));
    CHECK_THAT(p1, WithinAbs(0.5, 1e-15));

    CHECK_THROWS_AS(measure_probabilities(plus, 2, Basis::Computational), ArgumentError);
    CHECK_THROWS_AS(measure_probabilities(plus, 0, Basis::Computational), ArgumentError);

    std::mt19937_64 rng{9};
    for (int i = 0; i < 20; ++i) {
        const auto st = random_state(3, rng);
        for (auto b : {Basis::Computational, Basis::PlusMinus}) {
            const auto [a, c] = measure_probabilities(st, 1 + i % 3, b);
            CHECK(std::abs(a + c - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("joint_probabilities", "[qstate]") {
    // |0>|+>: computational on 1, PlusMinus on 2 gives outcome (0,+) surely
    const StateVector s{2, {kR, kR, 0, 0}};
    const std::vector<std::pair<std::size_t, Basis>> r{{1, Basis::Computational},
                                                       {2, Basis::PlusMinus}};
    const auto p = joint_probabilities(s, r);
    REQUIRE(p.size() == 4);
    CHECK_THAT(p[0], WithinAbs(1.0, 1e-15));
    CHECK_THAT(p[1] + p[2] + p[3], WithinAbs(0.0, 1e-15));
}

TEST_CASE("von_neumann_entropy", "[qstate]") {
    CHECK_THAT(von_neumann_entropy(DensityMatrix::pure(basis_state(1, "0"))),
               WithinAbs(0.0, 1e-15));
    DensityMatrix mixed{1, 0.5 * Eigen::MatrixXcd::Identity(2, 2)};
    CHECK_THAT(von_neumann_entropy(mixed), WithinAbs(1.0, 1e-15));

    // Bell-type state with |psi(0)|^2 = |psi(1)|^2 = 1/2
    const StateVector bell{2, {kR, 0, 0, -kR}};
    CHECK_THAT(von_neumann_entropy(reduced_density(bell, {1})), WithinAbs(1.0, 1e-12));

    DensityMatrix bad{1, Eigen::MatrixXcd::Identity(2, 2) * 0.5};
    bad.entries(0, 1) = 0.3;
    CHECK_THROWS_AS(von_neumann_entropy(bad), ArgumentError);
}

TEST_CASE("entropy bounded by kept qubit count", "[qstate][property]") {
    std::mt19937_64 rng{13};
    for (int trial = 0; trial < 50; ++trial) {
        const auto st = random_state(4, rng);
        const std::vector<std::size_t> keep{1, 3};
        const double s = von_neumann_entropy(reduced_density(st, keep));
        CHECK(s >= 0.0);
        CHECK(s <= 2.0 + 1e-12);
    }
}
