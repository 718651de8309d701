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

#include <numbers>
#include <random>
#include <sstream>

#include <qann/analysis.hpp>

#include "oracles.hpp"

using namespace qann;
using std::numbers::pi;

namespace {

auto random_state(std::size_t n, std::mt19937_64 &rng) -> StateVector {
    std::normal_distribution<double> g;
    std::vector<Complex> a(std::size_t{1} << n);
    for (auto &x : a) {
        x = {g(rng), g(rng)};
    }
    return StateVector::normalized(n, std::move(a));
}

/// Entropy from the brute-force partial trace, for cross-checking.
auto oracle_entropy(const StateVector &s, const std::vector<std::size_t> &keep) -> double {
    const auto m = oracle::partial_trace(std::vector<Complex>(s.amps().begin(), s.amps().end()),
                                         s.n_qubits(), keep);
    Eigen::MatrixXcd rho(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i][j];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    double h = 0.0;
    for (auto l : es.eigenvalues()) {
        if (l > 1e-15) {
            h -= l * std::log2(l);
        }
    }
    return h;
}

} // namespace

TEST_CASE("table2 check at phi3 = pi", "[analysis]") {
    const GateParams phi{0, 0, 0, pi};
    const auto rep = table2_check(phi);
    CHECK(rep.records.size() == 4);
    CHECK(rep.all_passed());

    // g(s)=s gives (|00> - |11>)/sqrt2
    const auto fns = networks::unary_functions();
    const std::array<GateParams, 1> phis{phi};
    const auto out = run_history(networks::two_neuron(fns[1]), phis);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(out[0] - r) < 1e-15);
    CHECK(std::abs(out[3] + r) < 1e-15);
    CHECK(std::abs(entanglement_report(out, {1}) - 1.0) < 1e-12);
}

TEST_CASE("table2 at random phi", "[analysis][property]") {
    PhiSampler sample{11};
    for (int i = 0; i < 50; ++i) {
        CHECK(table2_check(sample()).all_passed());
    }
}

TEST_CASE("table1 and boolean-mn", "[analysis]") {
    const auto t1 = table1_check();
    CHECK(t1.records.size() == 8);
    CHECK(t1.all_passed());
    const auto mn = boolean_mn_check(10, 7);
    CHECK(mn.records.size() == 3 * (16 + 256 + 10));
    CHECK(mn.all_passed());
}

TEST_CASE("xor reflexivity", "[analysis]") {
    const auto rep = xor_reflexivity_check(100, 20260101);
    CHECK(rep.records.size() == 300);
    CHECK(rep.all_passed());
    CHECK_THROWS_AS(xor_reflexivity_check(0, 1), ArgumentError);

    // Middle-layer entanglement with the input at phi3 = pi.
    const std::array<GateParams, 1> phis{GateParams{0, 0, 0, pi}};
    const auto s = run_history(networks::xor_network(), phis);
    CHECK(std::abs(entanglement_report(s, {1}) - 1.0) < 1e-12);
    CHECK(std::abs(entanglement_report(s, {4})) < 1e-12);
}

TEST_CASE("hadamard variant", "[analysis]") {
    PhiSampler sample{12};
    for (int i = 0; i < 20; ++i) {
        const auto rep = hadamard_variant_check(sample());
        CHECK(rep.all_passed());
    }
    // phi3 = 0 means psi1 = 0: only the |+> branch is recorded.
    const auto rep = hadamard_variant_check(GateParams{0, 0, 0, 0});
    CHECK(rep.all_passed());
    CHECK(rep.records.size() == 3);
}

TEST_CASE("complementarity", "[analysis]") {
    const auto rep = complementarity_check(GateParams{0, 0, 0, pi});
    CHECK(rep.all_passed());
    // Equal superposition: P(0,+) = P(1,-) = 1/2
    CHECK(std::abs(rep.records[0].expected - 0.5) < 1e-15);
    CHECK(std::abs(rep.records[3].expected - 0.5) < 1e-15);

    const std::array<GateParams, 1> phis{GateParams{0, 0, 0, pi}};
    const auto s = run_history(networks::complementarity_network(), phis);
    CHECK(std::abs(entanglement_report(s, {2}) - 1.0) < 1e-12);

    PhiSampler sample{13};
    for (int i = 0; i < 20; ++i) {
        CHECK(complementarity_check(sample()).all_passed());
    }
}

TEST_CASE("entanglement of product and Bell states", "[analysis]") {
    CHECK(std::abs(entanglement_report(basis_state(3, "010"), {1, 2})) < 1e-14);
    const auto bell = ket(2, {{"00", 1.0}, {"11", 1.0}});
    CHECK(std::abs(entanglement_report(bell, {1}) - 1.0) < 1e-12);
    const auto ghz = ket(3, {{"000", 1.0}, {"111", 1.0}});
    CHECK(std::abs(entanglement_report(ghz, {1, 3}) - 1.0) < 1e-12);
}

TEST_CASE("entropy is symmetric under complement", "[analysis][property]") {
    std::mt19937_64 rng{14};
    for (int i = 0; i < 30; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 4);
        const auto s = random_state(n, rng);
        std::vector<std::size_t> a;
        std::vector<std::size_t> b;
        for (std::size_t q = 1; q <= n; ++q) {
            ((rng() & 1U) ? a : b).push_back(q);
        }
        if (a.empty() || b.empty()) {
            continue;
        }
        const double sa = entanglement_report(s, std::span<const std::size_t>(a));
        const double sb = entanglement_report(s, std::span<const std::size_t>(b));
        CHECK(std::abs(sa - sb) <= 1e-10);
        CHECK(std::abs(sa - oracle_entropy(s, a)) <= 1e-10);
    }
}

TEST_CASE("conditional and mass helpers", "[analysis]") {
    const auto s = ket(3, {{"001", 1.0}, {"110", 1.0}});
    const std::array<std::size_t, 2> nb{1, 3};
    const std::array<std::uint64_t, 1> p{0b01};
    CHECK(std::abs(mass_on(s, nb, p) - 0.5) < 1e-15);
    CHECK(std::abs(fidelity(conditional_neuron_state(s, 3, "00"), basis_state(1, "1")) - 1.0) <
          1e-15);
    CHECK_THROWS_AS(conditional_neuron_state(s, 3, "0"), ArgumentError);
}

TEST_CASE("averaged dynamics report", "[analysis]") {
    const std::vector<double> times{0.0, 1.0, 2.0};
    const auto rep = averaged_dynamics_check(WavePacket::uniform(), times, QuadratureGrid{16});
    CHECK(rep.all_passed());
    const auto found = std::count_if(rep.records.begin(), rep.records.end(), [](const auto &r) {
        return r.description.starts_with("rho_00 vs 1-D marginal");
    });
    CHECK(found == 3);

    const WavePacket two{{{ModeIndex{0, 0, 0, 0}, std::sqrt(0.5)},
                          {ModeIndex{0, 0, 0, 1}, std::sqrt(0.5)}},
                         3};
    CHECK(averaged_dynamics_check(two, times, QuadratureGrid{8}).all_passed());
}

TEST_CASE("report CSV", "[analysis][io]") {
    ScenarioReport rep{"demo", {}};
    rep.check("a, quoted \"one\"", 1.0, 1.0 + 1e-12, 1e-10);
    rep.check_below("b", 2.0, 1.0);
    CHECK(rep.passed() == 1);
    CHECK(rep.failed() == 1);
    std::ostringstream os;
    write_csv(os, rep);
    const auto text = os.str();
    CHECK(text.starts_with("scenario,assertion,expected,observed,tolerance,pass\n"));
    CHECK(text.find("\"a, quoted \"\"one\"\"\"") != std::string::npos);
    CHECK(text.find(",false\n") != std::string::npos);

    std::ostringstream a;
    std::ostringstream b;
    write_csv(a, xor_reflexivity_check(10, 99));
    write_csv(b, xor_reflexivity_check(10, 99));
    CHECK(a.str() == b.str());
}
