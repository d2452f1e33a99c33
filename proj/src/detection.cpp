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

#include "ecp/detection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ecp/elements.hpp"

namespace ecp {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

bool all_binned_in(const OccupationConfig& config, TimeBin bin) {
    bool any = false;
    for (const auto& [mode, count] : config.occupations()) {
        if (mode.bin == TimeBin::untagged) continue;
        if (mode.bin != bin) return false;
        any = true;
    }
    return any;
}

OccupationConfig shift_bins_to_t0(const OccupationConfig& config) {
    std::vector<std::pair<ModeLabel, int>> occupations;
    occupations.reserve(config.occupations().size());
    for (auto [mode, count] : config.occupations()) {
        if (mode.bin == TimeBin::t1) mode.bin = TimeBin::t0;
        occupations.emplace_back(mode, count);
    }
    return OccupationConfig(std::move(occupations));
}

std::vector<std::pair<Click, int>> click_counts(const OccupationConfig& detector_config) {
    std::map<Click, int> counts;
    for (const auto& [mode, count] : detector_config.occupations()) {
        counts[Click{static_cast<int>(mode.rail.index), mode.bin}] += count;
    }
    return {counts.begin(), counts.end()};
}

// ---- golden signature tables -------------------------------------------

// Signature notation: "D1" fires without a time interval, "D1^t0,D1^t1"
// fires with one. Simultaneous patterns are stored with the canonical t0 tag.
GoldenRow parse_row(const std::string& signature, OutcomeLabel label, FeedForward ff) {
    GoldenRow row{{}, label, ff};
    std::stringstream in(signature);
    std::string token;
    while (std::getline(in, token, ',')) {
        Click click{0, TimeBin::t0};
        std::size_t caret = token.find('^');
        std::string id_part = caret == std::string::npos ? token : token.substr(0, caret);
        click.detector = std::stoi(id_part.substr(1));
        if (caret != std::string::npos) {
            click.bin = token.substr(caret + 1) == "t1" ? TimeBin::t1 : TimeBin::t0;
        } else if (click.detector >= 5) {
            click.bin = TimeBin::untagged;  // no delay line ahead of these
        }
        row.clicks.push_back(click);
    }
    std::sort(row.clicks.begin(), row.clicks.end());
    return row;
}

std::vector<GoldenRow> make_bell_table() {
    std::vector<GoldenRow> rows;
    auto add = [&rows](const char* sig, OutcomeLabel label, FeedForward ff) {
        rows.push_back(parse_row(sig, label, ff));
    };
    const auto rp = OutcomeLabel::recyclable_plus;
    const auto rm = OutcomeLabel::recyclable_minus;
    const auto sp = OutcomeLabel::success_plus;
    const auto sm = OutcomeLabel::success_minus;
    const auto none = FeedForward::none;
    const auto sz = FeedForward::sigma_z_on_b;

    for (const char* sig : {"D1", "D2", "D3", "D4"}) add(sig, rp, none);
    for (const char* sig : {"D1,D2", "D3,D4"}) add(sig, rm, sz);
    for (const char* sig : {"D1^t0,D1^t1", "D2^t0,D2^t1", "D3^t0,D3^t1", "D4^t0,D4^t1",
                            "D1^t0,D2^t1", "D1^t1,D2^t0", "D3^t0,D4^t1", "D3^t1,D4^t0"}) {
        add(sig, sp, none);
    }
    for (const char* sig : {"D1^t0,D3^t1", "D1^t1,D3^t0", "D2^t0,D4^t1", "D2^t1,D4^t0",
                            "D2^t0,D3^t1", "D2^t1,D3^t0", "D1^t0,D4^t1", "D1^t1,D4^t0"}) {
        add(sig, sm, sz);
    }
    return rows;
}

std::vector<GoldenRow> make_ghz3_table() {
    std::vector<GoldenRow> rows;
    auto add = [&rows](const char* sig, OutcomeLabel label, FeedForward ff) {
        rows.push_back(parse_row(sig, label, ff));
    };
    const auto rp = OutcomeLabel::recyclable_plus;
    const auto rm = OutcomeLabel::recyclable_minus;
    const auto sp = OutcomeLabel::success_plus;
    const auto sm = OutcomeLabel::success_minus;
    const auto none = FeedForward::none;
    const auto sz = FeedForward::sigma_z_on_b;

    for (const char* sig : {"D1,D2,D5", "D3,D4,D5", "D1,D6", "D2,D6", "D3,D6", "D4,D6"}) {
        add(sig, rp, none);
    }
    for (const char* sig : {"D1,D2,D6", "D3,D4,D6", "D1,D5", "D2,D5", "D3,D5", "D4,D5"}) {
        add(sig, rm, sz);
    }
    for (const char* sig :
         {"D1^t0,D1^t1,D6", "D2^t0,D2^t1,D6", "D3^t0,D3^t1,D6", "D4^t0,D4^t1,D6",
          "D1^t0,D2^t1,D6", "D1^t1,D2^t0,D6", "D3^t0,D4^t1,D6", "D3^t1,D4^t0,D6",
          "D1^t0,D3^t1,D5", "D1^t1,D3^t0,D5", "D2^t0,D4^t1,D5", "D2^t1,D4^t0,D5",
          "D2^t0,D3^t1,D5", "D2^t1,D3^t0,D5", "D1^t0,D4^t1,D5", "D1^t1,D4^t0,D5"}) {
        add(sig, sp, none);
    }
    for (const char* sig :
         {"D1^t0,D1^t1,D5", "D2^t0,D2^t1,D5", "D3^t0,D3^t1,D5", "D4^t0,D4^t1,D5",
          "D1^t0,D2^t1,D5", "D1^t1,D2^t0,D5", "D3^t0,D4^t1,D5", "D3^t1,D4^t0,D5",
          "D1^t0,D3^t1,D6", "D1^t1,D3^t0,D6", "D2^t0,D4^t1,D6", "D2^t1,D4^t0,D6",
          "D2^t0,D3^t1,D6", "D2^t1,D3^t0,D6", "D1^t0,D4^t1,D6", "D1^t1,D4^t0,D6"}) {
        add(sig, sm, sz);
    }
    return rows;
}

}  // namespace

std::string to_string(OutcomeLabel label) {
    switch (label) {
        case OutcomeLabel::success_plus: return "success+";
        case OutcomeLabel::success_minus: return "success-";
        case OutcomeLabel::recyclable_plus: return "recyclable+";
        case OutcomeLabel::recyclable_minus: return "recyclable-";
    }
    return "?";
}

std::string to_string(FeedForward op) {
    return op == FeedForward::none ? "none" : "sigma_z(B)";
}

std::string to_string(const DetectionEvent& event) {
    bool spans_bins = false;
    for (const Click& click : event.clicks) {
        if (click.bin == TimeBin::t1) spans_bins = true;
    }
    std::string out = "(";
    for (std::size_t i = 0; i < event.clicks.size(); ++i) {
        if (i) out += ",";
        out += "D" + std::to_string(event.clicks[i].detector);
        if (spans_bins && event.clicks[i].bin != TimeBin::untagged) {
            out += event.clicks[i].bin == TimeBin::t0 ? "^t0" : "^t1";
        }
    }
    out += ")";
    return out;
}

std::span<const GoldenRow> golden_table(int parties) {
    static const std::vector<GoldenRow> bell = make_bell_table();
    static const std::vector<GoldenRow> ghz3 = make_ghz3_table();
    if (parties == 2) return bell;
    if (parties == 3) return ghz3;
    throw std::invalid_argument("no golden table for " + std::to_string(parties) + " parties");
}

std::vector<EnumeratedOutcome> enumerate_outcomes(const PhotonicState& premeasurement,
                                                  const CircuitPlan& plan) {
    const std::span<const Rail> measured(plan.measured_rails);

    // Group kept-side amplitudes by the shift-canonical detector config.
    std::map<OccupationConfig, std::map<OccupationConfig, Complex>> groups;
    for (const auto& [config, amplitude] : premeasurement.terms()) {
        OccupationConfig detector_part = config.restricted_to(measured);
        if (all_binned_in(detector_part, TimeBin::t1)) {
            detector_part = shift_bins_to_t0(detector_part);
        }
        groups[detector_part][config.without(measured)] += amplitude;
    }

    std::vector<EnumeratedOutcome> outcomes;
    outcomes.reserve(groups.size());
    for (auto& [detector_config, kept_amplitudes] : groups) {
        double probability = 0.0;
        for (const auto& [kept, amplitude] : kept_amplitudes) probability += std::norm(amplitude);
        if (probability < premeasurement.prune_epsilon()) continue;

        EnumeratedOutcome outcome;
        outcome.event.internal_counts = click_counts(detector_config);
        for (const auto& [click, count] : outcome.event.internal_counts) {
            outcome.event.clicks.push_back(click);
        }
        outcome.probability = probability;
        PhotonicState residual(std::move(kept_amplitudes), premeasurement.prune_epsilon());
        outcome.residual = residual.scaled(Complex{1.0 / std::sqrt(probability), 0.0});
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

Classification classify_by_rule(const DetectionEvent& event, const CircuitPlan& plan) {
    const DetectorMap& detectors = plan.detectors;
    const int parties = plan.spec.parties;

    std::vector<Click> binned;
    std::vector<int> primed_click_count(parties, 0);
    int v_port_flips = 0;
    for (const Click& click : event.clicks) {
        const int party = detectors.party_of(click.detector);
        if (party <= 1) {
            if (click.bin == TimeBin::untagged) {
                throw std::invalid_argument("unreachable pattern " + to_string(event) +
                                            ": untimed click on a delayed rail");
            }
            binned.push_back(click);
        } else {
            if (click.bin != TimeBin::untagged) {
                throw std::invalid_argument("unreachable pattern " + to_string(event) +
                                            ": time tag on an undelayed rail");
            }
            primed_click_count[party] += 1;
            if (detectors.is_v_port(click.detector)) v_port_flips += 1;
        }
    }
    for (int party = 2; party < parties; ++party) {
        if (primed_click_count[party] != 1) {
            throw std::invalid_argument("unreachable pattern " + to_string(event) + ": party " +
                                        std::to_string(party + 1) + " must see exactly one click");
        }
    }

    bool base_minus = false;
    if (binned.size() == 2 && binned[0].bin != binned[1].bin) {
        // Success: the pair fired with the t0-t1 interval.
        base_minus = detectors.party_of(binned[0].detector) !=
                     detectors.party_of(binned[1].detector);
    } else if (binned.size() == 2) {
        // Simultaneous pair: only both ports of one party's PBS can fire.
        if (detectors.party_of(binned[0].detector) != detectors.party_of(binned[1].detector)) {
            throw std::invalid_argument("unreachable pattern " + to_string(event) +
                                        ": simultaneous clicks across parties");
        }
        base_minus = true;
    } else if (binned.size() == 1) {
        base_minus = false;
    } else {
        throw std::invalid_argument("unreachable pattern " + to_string(event) +
                                    ": expected one or two clicks on D1..D4");
    }

    const bool interval = binned.size() == 2 && binned[0].bin != binned[1].bin;
    const bool minus = base_minus != (v_port_flips % 2 == 1);
    const OutcomeLabel label =
        interval ? (minus ? OutcomeLabel::success_minus : OutcomeLabel::success_plus)
                 : (minus ? OutcomeLabel::recyclable_minus : OutcomeLabel::recyclable_plus);
    return Classification{label, minus ? FeedForward::sigma_z_on_b : FeedForward::none};
}

Classification classify(const DetectionEvent& event, const CircuitPlan& plan) {
    if (plan.spec.parties <= 3) {
        for (const GoldenRow& row : golden_table(plan.spec.parties)) {
            if (row.clicks == event.clicks) return Classification{row.label, row.feedforward};
        }
        throw std::invalid_argument("unreachable pattern " + to_string(event) +
                                    ": not a tabulated signature");
    }
    return classify_by_rule(event, plan);
}

PhotonicState apply_feedforward(const PhotonicState& residual, FeedForward op) {
    if (op == FeedForward::none || residual.is_zero()) return residual;
    return apply_transform(residual, sigma_z(Rail::party(1)).transform);
}

PhotonicState canonical_success_state(int parties) {
    std::vector<ModeLabel> all_h{mode(Rail::primed(0), Polarization::h)};
    std::vector<ModeLabel> all_v{mode(Rail::primed(0), Polarization::v)};
    for (int party = 1; party < parties; ++party) {
        all_h.push_back(mode(Rail::party(party), Polarization::h));
        all_v.push_back(mode(Rail::party(party), Polarization::v));
    }
    std::map<OccupationConfig, Complex> terms;
    terms[OccupationConfig::from_modes(all_h)] = kInvSqrt2;
    terms[OccupationConfig::from_modes(all_v)] = kInvSqrt2;
    return PhotonicState(std::move(terms));
}

PhotonicState canonical_recyclable_state(const ProtocolSpec& spec) {
    std::vector<ModeLabel> branch_a{mode(Rail::primed(0), Polarization::v)};
    std::vector<ModeLabel> branch_b{mode(Rail::primed(0), Polarization::h)};
    for (int party = 1; party < spec.parties; ++party) {
        branch_a.push_back(mode(Rail::party(party), Polarization::h));
        branch_b.push_back(mode(Rail::party(party), Polarization::v));
    }
    const Complex a2 = spec.alpha * spec.alpha;
    const Complex b2 = spec.beta * spec.beta;
    const double scale = 1.0 / std::sqrt(std::norm(a2) + std::norm(b2));
    std::map<OccupationConfig, Complex> terms;
    terms[OccupationConfig::from_modes(branch_a)] = a2 * scale;
    terms[OccupationConfig::from_modes(branch_b)] = b2 * scale;
    return PhotonicState(std::move(terms));
}

PhotonicState canonical_state(OutcomeLabel label, const ProtocolSpec& spec) {
    switch (label) {
        case OutcomeLabel::success_plus:
        case OutcomeLabel::success_minus:
            return canonical_success_state(spec.parties);
        case OutcomeLabel::recyclable_plus:
        case OutcomeLabel::recyclable_minus:
            return canonical_recyclable_state(spec);
    }
    throw std::invalid_argument("unknown label");
}

std::vector<HeraldedOutcome> herald(const CircuitPlan& plan) {
    const PhotonicState state = run_to_premeasurement(plan);
    const std::vector<EnumeratedOutcome> outcomes = enumerate_outcomes(state, plan);

    const OutcomeLabel order[] = {OutcomeLabel::success_plus, OutcomeLabel::success_minus,
                                  OutcomeLabel::recyclable_plus, OutcomeLabel::recyclable_minus};
    std::vector<HeraldedOutcome> result;
    for (OutcomeLabel label : order) {
        result.push_back(HeraldedOutcome{
            label,
            (label == OutcomeLabel::success_minus || label == OutcomeLabel::recyclable_minus)
                ? FeedForward::sigma_z_on_b
                : FeedForward::none,
            0.0,
            PhotonicState{}});
    }

    std::vector<double> best(result.size(), 0.0);
    for (const EnumeratedOutcome& outcome : outcomes) {
        const Classification cls = classify(outcome.event, plan);
        for (std::size_t i = 0; i < result.size(); ++i) {
            if (result[i].label != cls.label) continue;
            result[i].probability += outcome.probability;
            if (outcome.probability > best[i]) {
                best[i] = outcome.probability;
                result[i].residual = outcome.residual;
            }
        }
    }
    return result;
}

std::vector<HeraldedOutcome> herald(const ProtocolSpec& spec) { return herald(build_plan(spec)); }

}  // namespace ecp
