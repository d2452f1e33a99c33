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

#ifndef ECP_ANALYSIS_HPP
#define ECP_ANALYSIS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ecp/circuits.hpp"
#include "ecp/detection.hpp"

namespace ecp {

/// Heralded success probability of one concentration pass, 2|alpha beta|^2.
double p_success(double alpha);
/// Probability of the recyclable branch, |alpha|^4 + |beta|^4.
double p_recyclable(double alpha);
/// Extra success probability gained by concentrating the recyclable state
/// once more: 2|alpha beta|^4 / (|alpha|^4 + |beta|^4).
double recycling_gain(double alpha);
/// Success probability accumulated over 1 + `rounds` passes, recycling the
/// failed branch each time. Beyond the first recycle round this iterates the
/// square-and-normalize coefficient update; the iterated-round totals are an
/// extension of the single-recycle scheme and can exceed its 0.75 ceiling.
double total_probability(double alpha, int rounds);

struct SweepRow {
    double alpha = 0.0;
    double p_success = 0.0;
    double p_recyclable = 0.0;
    double p_total = 0.0;
    int rounds = 0;
};

/// Uniform grid alpha_i = i / (points + 1), i = 1..points.
std::vector<double> alpha_grid(int points);
std::vector<SweepRow> sweep_grid(int points, int rounds);

/// Result of checking one signature row against the simulation.
struct RowCheck {
    std::string signature;
    OutcomeLabel label;
    FeedForward feedforward;
    bool observed = false;
    double min_fidelity = 1.0;  // worst post-feedforward fidelity over the grid
    std::string detail;

    bool pass() const;
};

struct VerifyReport {
    int parties = 0;
    std::vector<RowCheck> rows;
    double worst_mass_error = 0.0;         // |simulated - closed form| per label class
    double worst_probability_gap = 0.0;    // |sum of outcome probabilities - 1|
    std::vector<std::string> errors;       // unreachable patterns etc.

    bool all_pass() const;
    int passed_rows() const;
};

inline constexpr double kFidelityTolerance = 1e-10;
inline constexpr double kMassTolerance = 1e-10;

/// Simulates across the alpha grid and checks every signature row: the
/// classification, the post-feedforward residual against the row's target
/// state, the per-class probability masses, and completeness. For 2 or 3
/// parties the rows are the transcribed golden table; beyond that they are
/// the observed patterns checked against the generalized rule.
VerifyReport verify_tables(int parties, std::span<const double> alphas,
                           const std::optional<DetectorMap>& map_override = std::nullopt);
VerifyReport verify_tables(int parties);

std::string format_report(const VerifyReport& report, bool verbose);

}  // namespace ecp

#endif  // ECP_ANALYSIS_HPP
