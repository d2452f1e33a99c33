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

#include "ecp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ecp {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
}

bool is_success(OutcomeLabel label) {
    return label == OutcomeLabel::success_plus || label == OutcomeLabel::success_minus;
}

}  // namespace

double p_success(double alpha) {
    check_alpha(alpha);
    const double a2 = alpha * alpha;
    return 2.0 * a2 * (1.0 - a2);
}

double p_recyclable(double alpha) {
    check_alpha(alpha);
    const double a2 = alpha * alpha;
    const double b2 = 1.0 - a2;
    return a2 * a2 + b2 * b2;
}

double recycling_gain(double alpha) {
    check_alpha(alpha);
    const double a2 = alpha * alpha;
    const double b2 = 1.0 - a2;
    const double denom = a2 * a2 + b2 * b2;
    if (denom == 0.0) return 0.0;
    const double ab2 = a2 * b2;
    return 2.0 * ab2 * ab2 / denom;
}

double total_probability(double alpha, int rounds) {
    check_alpha(alpha);
    if (rounds < 0) throw std::invalid_argument("rounds must be non-negative");

    // Each failed pass leaves coefficients alpha^2, beta^2 (renormalized);
    // accumulate the success mass reached through every prefix of failures.
    double a2 = alpha * alpha;
    double b2 = 1.0 - a2;
    double reach = 1.0;
    double total = 0.0;
    for (int round = 0; round <= rounds; ++round) {
        const double norm2 = a2 * a2 + b2 * b2;
        total += reach * 2.0 * a2 * b2;
        if (norm2 == 0.0) break;
        reach *= norm2;
        a2 = a2 * a2 / norm2;
        b2 = 1.0 - a2;
    }
    return total;
}

std::vector<double> alpha_grid(int points) {
    if (points < 1) throw std::invalid_argument("grid needs at least one point");
    std::vector<double> grid;
    grid.reserve(points);
    for (int i = 1; i <= points; ++i) {
        grid.push_back(static_cast<double>(i) / static_cast<double>(points + 1));
    }
    return grid;
}

std::vector<SweepRow> sweep_grid(int points, int rounds) {
    std::vector<SweepRow> rows;
    rows.reserve(points);
    for (double alpha : alpha_grid(points)) {
        rows.push_back(SweepRow{alpha, p_success(alpha), p_recyclable(alpha),
                                total_probability(alpha, rounds), rounds});
    }
    return rows;
}

bool RowCheck::pass() const {
    return observed && min_fidelity >= 1.0 - kFidelityTolerance && detail.empty();
}

bool VerifyReport::all_pass() const {
    if (!errors.empty()) return false;
    if (worst_mass_error > kMassTolerance || worst_probability_gap > kMassTolerance) return false;
    return passed_rows() == static_cast<int>(rows.size());
}

int VerifyReport::passed_rows() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(),
                                          [](const RowCheck& row) { return row.pass(); }));
}

VerifyReport verify_tables(int parties, std::span<const double> alphas,
                           const std::optional<DetectorMap>& map_override) {
    VerifyReport report;
    report.parties = parties;

    const bool tabulated = parties <= 3;
    std::map<std::vector<Click>, std::size_t> row_index;
    if (tabulated) {
        for (const GoldenRow& row : golden_table(parties)) {
            row_index.emplace(row.clicks, report.rows.size());
            report.rows.push_back(RowCheck{to_string(DetectionEvent{row.clicks, {}}), row.label,
                                           row.feedforward, false, 1.0, ""});
        }
    }

    for (double alpha : alphas) {
        const double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
        const ProtocolSpec spec =
            parties == 2 ? ProtocolSpec::bell(alpha, beta) : ProtocolSpec::ghz(parties, alpha, beta);
        const CircuitPlan plan =
            map_override ? build_plan(spec, *map_override) : build_plan(spec);

        const PhotonicState state = run_to_premeasurement(plan);
        const std::vector<EnumeratedOutcome> outcomes = enumerate_outcomes(state, plan);

        double probability_sum = 0.0;
        double success_mass = 0.0;
        double recyclable_mass = 0.0;
        for (const EnumeratedOutcome& outcome : outcomes) {
            probability_sum += outcome.probability;

            Classification cls;
            std::size_t index;
            if (tabulated) {
                auto found = row_index.find(outcome.event.clicks);
                if (found == row_index.end()) {
                    report.errors.push_back("pattern " + to_string(outcome.event) +
                                            " missing from the table (alpha=" +
                                            std::to_string(alpha) + ")");
                    continue;
                }
                index = found->second;
                cls = Classification{report.rows[index].label, report.rows[index].feedforward};
            } else {
                try {
                    cls = classify_by_rule(outcome.event, plan);
                } catch (const std::exception& e) {
                    report.errors.push_back(e.what());
                    continue;
                }
                auto found = row_index.find(outcome.event.clicks);
                if (found == row_index.end()) {
                    row_index.emplace(outcome.event.clicks, report.rows.size());
                    index = report.rows.size();
                    report.rows.push_back(RowCheck{to_string(outcome.event), cls.label,
                                                   cls.feedforward, false, 1.0, ""});
                } else {
                    index = found->second;
                    if (report.rows[index].label != cls.label) {
                        report.rows[index].detail = "label changed across the grid";
                    }
                }
            }

            (is_success(cls.label) ? success_mass : recyclable_mass) += outcome.probability;

            RowCheck& row = report.rows[index];
            row.observed = true;
            const PhotonicState corrected = apply_feedforward(outcome.residual, cls.feedforward);
            const double f = fidelity(corrected, canonical_state(cls.label, spec));
            row.min_fidelity = std::min(row.min_fidelity, f);
        }

        report.worst_probability_gap =
            std::max(report.worst_probability_gap, std::abs(probability_sum - 1.0));
        report.worst_mass_error =
            std::max(report.worst_mass_error, std::abs(success_mass - p_success(alpha)));
        report.worst_mass_error =
            std::max(report.worst_mass_error, std::abs(recyclable_mass - p_recyclable(alpha)));
    }

    for (RowCheck& row : report.rows) {
        if (!row.observed && row.detail.empty()) row.detail = "never observed on the grid";
    }
    return report;
}

VerifyReport verify_tables(int parties) {
    const std::vector<double> alphas = alpha_grid(9);
    return verify_tables(parties, alphas);
}

std::string format_report(const VerifyReport& report, bool verbose) {
    std::ostringstream out;
    out << "verify: " << report.parties << " parties, " << report.rows.size()
        << " signature rows\n";
    for (const RowCheck& row : report.rows) {
        if (!verbose && row.pass()) continue;
        out << "  [" << (row.pass() ? "ok" : "FAIL") << "] " << row.signature << " -> "
            << to_string(row.label) << " / " << to_string(row.feedforward)
            << "  min_fidelity=" << row.min_fidelity;
        if (!row.detail.empty()) out << "  (" << row.detail << ")";
        out << "\n";
    }
    for (const std::string& error : report.errors) out << "  [FAIL] " << error << "\n";
    out << "  mass error " << report.worst_mass_error << ", probability gap "
        << report.worst_probability_gap << "\n";
    return out.str();
}

}  // namespace ecp
