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

#ifndef ECP_DETECTION_HPP
#define ECP_DETECTION_HPP

#include <span>
#include <string>
#include <vector>

#include "ecp/circuits.hpp"
#include "ecp/fock.hpp"

namespace ecp {

enum class OutcomeLabel { success_plus, success_minus, recyclable_plus, recyclable_minus };
enum class FeedForward { none, sigma_z_on_b };

std::string to_string(OutcomeLabel label);
std::string to_string(FeedForward op);

struct Click {
    int detector = 0;
    TimeBin bin = TimeBin::untagged;

    friend auto operator<=>(const Click&, const Click&) = default;
};

/// One detector firing pattern. Clicks carry only what the single-photon
/// detectors resolve: which detector fired and the relative time tag.
/// internal_counts holds the exact photon bookkeeping and is never consulted
/// by the classifier.
struct DetectionEvent {
    std::vector<Click> clicks;                            // sorted, unique
    std::vector<std::pair<Click, int>> internal_counts;   // same support as clicks

    friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

std::string to_string(const DetectionEvent& event);

struct Classification {
    OutcomeLabel label = OutcomeLabel::recyclable_plus;
    FeedForward feedforward = FeedForward::none;

    friend bool operator==(const Classification&, const Classification&) = default;
};

struct EnumeratedOutcome {
    DetectionEvent event;
    double probability = 0.0;
    PhotonicState residual;  // normalized, on the kept rails
};

/// All detector outcomes of the premeasurement state with their heralded
/// residuals. Detector configurations that differ only by a global time-bin
/// shift are the same physical signature (the delays satisfy w(t0-t1)=2n*pi),
/// so their residual amplitudes are summed coherently before squaring; the
/// enumeration then still resolves probability 1 in total.
std::vector<EnumeratedOutcome> enumerate_outcomes(const PhotonicState& premeasurement,
                                                  const CircuitPlan& plan);

/// Classifies a click pattern. Bell and three-party runs look the pattern up
/// in the golden signature tables; larger runs use the generalized rule
/// (which reproduces those tables exactly where they overlap). Patterns the
/// protocol cannot produce are a hard error.
Classification classify(const DetectionEvent& event, const CircuitPlan& plan);

/// The generalized classifier: an inter-bin interval among Alice's and Bob's
/// clicks heralds success (sign: both clicks on one party vs split across
/// them); simultaneous clicks herald the recyclable state (sign: one click
/// vs two); each remaining party's V-port click flips the sign.
Classification classify_by_rule(const DetectionEvent& event, const CircuitPlan& plan);

struct GoldenRow {
    std::vector<Click> clicks;
    OutcomeLabel label;
    FeedForward feedforward;
};

/// The transcribed detection-signature table for 2 or 3 parties.
std::span<const GoldenRow> golden_table(int parties);

PhotonicState apply_feedforward(const PhotonicState& residual, FeedForward op);

/// (|H..H> + |V..V>)/sqrt2 on the kept rails A', B, C... of an n-party run.
PhotonicState canonical_success_state(int parties);
/// alpha'|VH..H> + beta'|HV..V> on the kept rails, per the run's coefficients.
PhotonicState canonical_recyclable_state(const ProtocolSpec& spec);
/// The canonical post-feedforward target for a label under the given spec.
PhotonicState canonical_state(OutcomeLabel label, const ProtocolSpec& spec);

struct HeraldedOutcome {
    OutcomeLabel label;
    FeedForward feedforward;
    double probability = 0.0;
    PhotonicState residual;  // pre-feedforward; empty when probability is 0
};

/// Runs the full pipeline and aggregates the probability mass per label.
/// Entries come back in a fixed order: success+, success-, recyclable+,
/// recyclable-.
std::vector<HeraldedOutcome> herald(const CircuitPlan& plan);
std::vector<HeraldedOutcome> herald(const ProtocolSpec& spec);

}  // namespace ecp

#endif  // ECP_DETECTION_HPP
