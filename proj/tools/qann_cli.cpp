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
// Command-line driver: built-in scenarios, single histories, truth-table
// verification and environment-averaged dynamics. All output is CSV.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qann/qann.hpp>

namespace {

enum ExitCode { kOk = 0, kAssertionFailed = 1, kConfigError = 2, kIoError = 3 };

/// Raised for unreadable or unwritable files.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

auto read_file(const std::string &path) -> std::string {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Options {
    std::string scenario;
    std::vector<std::string> phi;
    std::uint64_t seed = 20260101;
    std::size_t samples = 100;
    std::size_t grid = qann::kDefaultGridPoints;
    int nmax = qann::kDefaultNMax;
    std::string times = "0";
    std::string out;
    std::string net;
    std::string fn;
    std::vector<std::string> packets;
};

/// Writes to --out when given, stdout otherwise.
template <typename F>
void emit(const Options &opt, F &&write) {
    if (opt.out.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream os(opt.out);
    if (!os) {
        throw IoError("cannot write " + opt.out);
    }
    write(os);
    if (!os) {
        throw IoError("write failed for " + opt.out);
    }
}

auto phis_or_samples(const Options &opt) -> std::vector<qann::GateParams> {
    std::vector<qann::GateParams> out;
    for (const auto &p : opt.phi) {
        out.push_back(qann::parse_phi(p));
    }
    if (out.empty()) {
        qann::PhiSampler sample{opt.seed};
        for (std::size_t i = 0; i < opt.samples; ++i) {
            out.push_back(sample());
        }
    }
    return out;
}

auto load_packets(const Options &opt, std::size_t inputs)
    -> std::vector<qann::WavePacket> {
    std::vector<qann::WavePacket> packets;
    for (const auto &path : opt.packets) {
        packets.push_back(qann::parse_packet(read_file(path), opt.nmax, &std::cerr));
    }
    if (packets.empty()) {
        packets.push_back(qann::WavePacket::uniform(opt.nmax));
    }
    // A single packet is shared by every input neuron.
    if (packets.size() == 1 && inputs > 1) {
        packets.resize(inputs, packets.front());
    }
    return packets;
}

auto finish(const qann::ScenarioReport &report, const Options &opt) -> int {
    emit(opt, [&](std::ostream &os) { qann::write_csv(os, report); });
    std::cerr << report.scenario << ": " << report.passed() << '/'
              << report.records.size() << " assertions passed\n";
    return report.all_passed() ? kOk : kAssertionFailed;
}

auto run_scenario(const Options &opt) -> int {
    const auto &name = opt.scenario;
    qann::ScenarioReport report{name, {}};
    if (name == "table1") {
        report = qann::table1_check();
    } else if (name == "table2") {
        for (const auto &phi : phis_or_samples(opt)) {
            report.append(qann::table2_check(phi));
        }
    } else if (name == "boolean-mn") {
        report = qann::boolean_mn_check(opt.samples, opt.seed);
    } else if (name == "xor") {
        report = qann::xor_reflexivity_check(opt.samples, opt.seed);
    } else if (name == "hadamard-variant") {
        for (const auto &phi : phis_or_samples(opt)) {
            report.append(qann::hadamard_variant_check(phi));
        }
    } else if (name == "complementarity") {
        for (const auto &phi : phis_or_samples(opt)) {
            report.append(qann::complementarity_check(phi));
        }
    } else if (name == "averaged-dynamics") {
        const auto packets = load_packets(opt, 1);
        if (packets.size() != 1) {
            throw qann::ConfigurationError(
                "averaged-dynamics takes a single packet");
        }
        const auto times = qann::parse_real_list(opt.times);
        report = qann::averaged_dynamics_check(packets.front(), times,
                                               qann::QuadratureGrid{opt.grid});
    } else {
        throw qann::ConfigurationError("unknown scenario '" + name + "'");
    }
    return finish(report, opt);
}

auto run_history_cmd(const Options &opt) -> int {
    const auto cfg = qann::parse_network_config(read_file(opt.net));
    std::vector<qann::GateParams> phis;
    for (const auto &p : opt.phi) {
        phis.push_back(qann::parse_phi(p));
    }
    const auto state = qann::run_history(cfg, phis);
    emit(opt, [&](std::ostream &os) {
        os << "basis,re,im,probability\n";
        for (const auto &b : qann::branch_amplitudes(state, 1e-15)) {
            os << b.bits << ',' << qann::detail::fmt(b.amplitude.real()) << ','
               << qann::detail::fmt(b.amplitude.imag()) << ','
               << qann::detail::fmt(std::norm(b.amplitude)) << '\n';
        }
    });
    return kOk;
}

auto verify_cmd(const Options &opt) -> int {
    const auto cfg = qann::parse_network_config(read_file(opt.net));
    const auto g = qann::parse_truth_table(read_file(opt.fn));
    const auto outputs = cfg.net.layer_neurons(cfg.net.layers().size() - 1);
    const auto tt = qann::verify_truth_table(cfg.net, g, cfg.inputs, outputs);
    qann::ScenarioReport report{"verify", {}};
    for (const auto &e : tt.entries) {
        report.check("s=" + e.input + " -> " + e.expected, 1.0, e.probability,
                     1e-10);
    }
    return finish(report, opt);
}

auto average_cmd(const Options &opt) -> int {
    const auto cfg = qann::parse_network_config(read_file(opt.net));
    const auto packets = load_packets(opt, cfg.inputs.size());
    const qann::QuadratureGrid grid{opt.grid};
    const auto times = qann::parse_real_list(opt.times);
    const auto n = cfg.net.n_neurons();
    bool ok = true;
    emit(opt, [&](std::ostream &os) {
        os << "t,trace,purity,entropy";
        for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
            os << ",rho_" << qann::bits_of(k, n);
        }
        os << '\n';
        for (double t : times) {
            const auto rho = qann::averaged_density(cfg, packets, t, grid);
            const double tr = rho.trace().real();
            ok = ok && std::abs(tr - 1.0) <= 1e-9 && rho.is_valid(1e-9, 1e-9);
            os << qann::detail::fmt(t) << ',' << qann::detail::fmt(tr) << ','
               << qann::detail::fmt(qann::purity(rho)) << ','
               << qann::detail::fmt(qann::von_neumann_entropy(rho));
            for (Eigen::Index k = 0; k < rho.entries.rows(); ++k) {
                os << ',' << qann::detail::fmt(rho.entries(k, k).real());
            }
            os << '\n';
        }
    });
    return ok ? kOk : kAssertionFailed;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum feedforward network simulator"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--out", opt.out, "CSV output path (default stdout)");
    };
    const auto add_phi = [&](CLI::App *cmd) {
        cmd->add_option("--phi", opt.phi,
                        "a,b,c,d gate angles; repeat per input neuron. "
                        "Accepts radians or multiples of pi (0.5pi)")
            ->allow_extra_args(false);
    };
    const auto add_env = [&](CLI::App *cmd) {
        cmd->add_option("--grid", opt.grid, "quadrature points per axis")
            ->check(CLI::Range(2, 512));
        cmd->add_option("--nmax", opt.nmax, "mode truncation bound")
            ->check(CLI::Range(0, 64));
        cmd->add_option("--t", opt.times, "comma-separated times");
        cmd->add_option("--packet", opt.packets,
                        "packet file (n0 n1 n2 n3 re im); repeat per input "
                        "neuron, a single packet is shared");
    };

    auto *scenario = app.add_subcommand("scenario", "run a built-in scenario");
    scenario
        ->add_option("name", opt.scenario,
                     "table1 | table2 | boolean-mn | xor | hadamard-variant | "
                     "complementarity | averaged-dynamics")
        ->required();
    add_phi(scenario);
    scenario->add_option("--seed", opt.seed, "random seed");
    scenario->add_option("--samples", opt.samples, "number of random samples");
    add_env(scenario);
    add_common(scenario);

    auto *run = app.add_subcommand("run", "run one history and print branches");
    run->add_option("--net", opt.net, "network config")->required();
    add_phi(run);
    add_common(run);

    auto *verify = app.add_subcommand("verify", "verify a truth table");
    verify->add_option("--net", opt.net, "network config")->required();
    verify->add_option("--fn", opt.fn, "truth table file")->required();
    add_common(verify);

    auto *average = app.add_subcommand("average",
                                       "environment-averaged density matrix");
    average->add_option("--net", opt.net, "network config")->required();
    add_env(average);
    add_common(average);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*scenario) {
            return run_scenario(opt);
        }
        if (*run) {
            return run_history_cmd(opt);
        }
        if (*verify) {
            return verify_cmd(opt);
        }
        return average_cmd(opt);
    } catch (const IoError &e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kIoError;
    } catch (const qann::VerificationFailure &e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return kAssertionFailed;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}
