// Copyright 2026 The ecpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ecp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ecp/circuits.hpp"
#include "ecp/detection.hpp"

namespace ecp::cli {

namespace {

struct RunConfig {
    std::string protocol = "bell";
    double alpha = 0.0;
    int parties = 3;
    int rounds = 0;
    int grid = 99;
    std::string out_path;
    std::string plot_path;
    bool permute_detectors = false;
    bool verbose = false;
};

ProtocolSpec make_spec(const RunConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha <= 1.0)) {
        throw CLI::ValidationError("--alpha", "alpha must lie in (0, 1]");
    }
    const double beta = std::sqrt(std::max(0.0, 1.0 - config.alpha * config.alpha));
    if (config.protocol == "bell") return ProtocolSpec::bell(config.alpha, beta, config.rounds);
    return ProtocolSpec::ghz(config.parties, config.alpha, beta, config.rounds);
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
    const ProtocolSpec spec = make_spec(config);
    const std::vector<HeraldedOutcome> outcomes = herald(spec);

    out << "protocol: " << (spec.kind == ProtocolKind::bell ? "bell" : "ghz") << " parties="
        << spec.parties << "\n";
    out << "alpha: " << format_number(config.alpha) << "\n";
    out << "label         probability      feed-forward  residual-fidelity\n";
    double success = 0.0;
    double recyclable = 0.0;
    for (const HeraldedOutcome& outcome : outcomes) {
        std::string fidelity_column = "-";
        if (outcome.probability > 0.0) {
            const PhotonicState corrected =
                apply_feedforward(outcome.residual, outcome.feedforward);
            fidelity_column = format_number(fidelity(corrected, canonical_state(outcome.label, spec)));
        }
        char line[128];
        std::snprintf(line, sizeof line, "%-13s %-16s %-13s %s\n",
                      to_string(outcome.label).c_str(), format_number(outcome.probability).c_str(),
                      to_string(outcome.feedforward).c_str(), fidelity_column.c_str());
        out << line;
        if (outcome.label == OutcomeLabel::success_plus ||
            outcome.label == OutcomeLabel::success_minus) {
            success += outcome.probability;
        } else {
            recyclable += outcome.probability;
        }
    }
    out << "total-success    " << format_number(success) << "\n";
    out << "total-recyclable " << format_number(recyclable) << "\n";
    if (spec.recycle_rounds > 0) {
        out << "total-after-" << spec.recycle_rounds << "-recycles "
            << format_number(total_probability(config.alpha, spec.recycle_rounds)) << "\n";
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const std::vector<SweepRow> rows = sweep_grid(config.grid, config.rounds);

    if (config.out_path.empty() || config.out_path == "-") {
        write_sweep_csv(out, rows);
    } else {
        std::ofstream file(config.out_path);
        if (!file) {
            err << "cannot write " << config.out_path << "\n";
            return kExitUsage;
        }
        write_sweep_csv(file, rows);
        if (!file.good()) {
            err << "write failed for " << config.out_path << "\n";
            return kExitUsage;
        }
    }
    if (!config.plot_path.empty()) {
        std::ofstream file(config.plot_path);
        if (!file) {
            err << "cannot write " << config.plot_path << "\n";
            return kExitUsage;
        }
        file << sweep_svg(rows);
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& config, bool parties_given, std::ostream& out) {
    std::vector<int> party_counts;
    if (parties_given) {
        party_counts.push_back(config.parties);
    } else {
        party_counts = {2, 3};
    }

    const std::vector<double> alphas = alpha_grid(config.grid);
    std::optional<DetectorMap> override_map;

    int total_rows = 0;
    int passed_rows = 0;
    bool all_pass = true;
    for (int parties : party_counts) {
        if (config.permute_detectors) {
            override_map = DetectorMap::with_crossed_wiring(parties);
        }
        const VerifyReport report = verify_tables(parties, alphas, override_map);
        out << format_report(report, config.verbose);
        total_rows += static_cast<int>(report.rows.size());
        passed_rows += report.passed_rows();
        all_pass = all_pass && report.all_pass();
    }
    out << (all_pass && passed_rows == total_rows ? "PASS" : "FAIL") << " rows="
        << passed_rows << "/" << total_rows << "\n";
    return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    const int rounds = rows.empty() ? 0 : rows.front().rounds;
    out << "alpha,p_success,p_recyclable,p_total_r" << rounds << "\n";
    for (const SweepRow& row : rows) {
        out << format_number(row.alpha) << "," << format_number(row.p_success) << ","
            << format_number(row.p_recyclable) << "," << format_number(row.p_total) << "\n";
    }
}

std::string sweep_svg(std::span<const SweepRow> rows) {
    const double width = 640.0, height = 480.0;
    const double left = 70.0, right = 20.0, top = 20.0, bottom = 50.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    const double y_max = 0.8;

    auto x_of = [&](double alpha) { return left + alpha * plot_w; };
    auto y_of = [&](double p) { return top + (1.0 - p / y_max) * plot_h; };

    auto polyline = [&](auto value_of, const char* style) {
        std::ostringstream s;
        s << "  <polyline fill=\"none\" " << style << " points=\"";
        for (const SweepRow& row : rows) {
            s << x_of(row.alpha) << "," << y_of(value_of(row)) << " ";
        }
        s << "\"/>\n";
        return s.str();
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes and ticks
    svg << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << top + plot_h << "\" stroke=\"black\"/>\n";
    svg << "  <line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 8; ++i) {
        const double p = 0.1 * i;
        svg << "  <line x1=\"" << left - 4 << "\" y1=\"" << y_of(p) << "\" x2=\"" << left
            << "\" y2=\"" << y_of(p) << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << left - 8 << "\" y=\"" << y_of(p) + 4
            << "\" text-anchor=\"end\" font-size=\"12\">" << format_number(p) << "</text>\n";
    }
    for (int i = 0; i <= 10; ++i) {
        const double alpha = 0.1 * i;
        svg << "  <line x1=\"" << x_of(alpha) << "\" y1=\"" << top + plot_h << "\" x2=\""
            << x_of(alpha) << "\" y2=\"" << top + plot_h + 4 << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << x_of(alpha) << "\" y=\"" << top + plot_h + 18
            << "\" text-anchor=\"middle\" font-size=\"12\">" << format_number(alpha)
            << "</text>\n";
    }
    svg << "  <text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"14\">alpha</text>\n";
    svg << "  <text x=\"18\" y=\"" << top + plot_h / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
        << top + plot_h / 2 << ")\">success probability</text>\n";

    svg << polyline([](const SweepRow& r) { return r.p_success; },
                    "stroke=\"#1f5fbf\" stroke-width=\"2\"");
    svg << polyline([](const SweepRow& r) { return r.p_total; },
                    "stroke=\"#bf3f1f\" stroke-width=\"2\" stroke-dasharray=\"6,4\"");

    svg << "  <text x=\"" << left + 10 << "\" y=\"" << top + 16
        << "\" font-size=\"12\" fill=\"#1f5fbf\">single pass</text>\n";
    const int rounds = rows.empty() ? 0 : rows.front().rounds;
    svg << "  <text x=\"" << left + 10 << "\" y=\"" << top + 32
        << "\" font-size=\"12\" fill=\"#bf3f1f\">with " << rounds << " recycle round"
        << (rounds == 1 ? "" : "s") << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("ecpsim");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"heralded entanglement-concentration simulator for Bell and GHZ states"};
    app.require_subcommand(1);

    RunConfig config;

    CLI::App* simulate = app.add_subcommand(
        "simulate", "run one concentration pass and print the heralded outcomes");
    auto* protocol_positional = simulate->add_option("PROTOCOL", config.protocol, "bell or ghz")
                                    ->check(CLI::IsMember({"bell", "ghz"}));
    simulate->add_option("--protocol", config.protocol, "bell or ghz")
        ->check(CLI::IsMember({"bell", "ghz"}))
        ->excludes(protocol_positional);
    simulate->add_option("--alpha", config.alpha, "coefficient of the |H..H> branch")->required();
    simulate->add_option("--parties", config.parties, "party count for ghz")->check(CLI::Range(2, 13));
    simulate->add_option("--rounds", config.rounds, "also print the recycled total")
        ->check(CLI::Range(0, 64));

    CLI::App* sweep = app.add_subcommand("sweep", "tabulate the probability curves over alpha");
    sweep->add_option("--grid", config.grid, "number of grid points")->check(CLI::Range(2, 100000));
    sweep->add_option("--rounds", config.rounds, "recycle rounds in the total column")
        ->check(CLI::Range(0, 64));
    sweep->add_option("--out", config.out_path, "CSV path ('-' for stdout)");
    sweep->add_option("--plot", config.plot_path, "also write an SVG plot");

    CLI::App* verify = app.add_subcommand(
        "verify", "check the detection-signature tables against the simulation");
    auto* parties_option =
        verify->add_option("--parties", config.parties, "verify one party count instead")
            ->check(CLI::Range(2, 13));
    verify->add_option("--grid", config.grid, "alpha grid size")->check(CLI::Range(1, 999));
    verify->add_flag("--permute-detectors", config.permute_detectors,
                     "swap one party's detector wiring (negative control)");
    verify->add_flag("--verbose", config.verbose, "print every row, not only failures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        err << app.help();
        return kExitUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(config, out);
        if (sweep->parsed()) return cmd_sweep(config, out, err);
        if (verify->parsed()) {
            if (verify->count("--grid") == 0) config.grid = 9;
            return cmd_verify(config, parties_option->count() > 0, out);
        }
    } catch (const CLI::Error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace ecp::cli
