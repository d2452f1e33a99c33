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

#ifndef ECP_CIRCUITS_HPP
#define ECP_CIRCUITS_HPP

#include <array>
#include <vector>

#include "ecp/elements.hpp"
#include "ecp/fock.hpp"

namespace ecp {

enum class ProtocolKind { bell, ghz };

/// Input description of one concentration run: which protocol, how many
/// parties, and the unknown decay coefficients of the less-entangled state.
struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::bell;
    int parties = 2;
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
    int recycle_rounds = 0;

    static ProtocolSpec bell(Complex alpha, Complex beta, int recycle_rounds = 0);
    static ProtocolSpec ghz(int parties, Complex alpha, Complex beta, int recycle_rounds = 0);

    void validate() const;
};

/// Which detector id sits on each party's PBS ports. Party 0 is Alice
/// (measures rail A), party 1 is Bob (rail B'), parties k >= 2 measure their
/// primed rails. The canonical wiring matches the golden signature tables:
/// Alice (D1, D2), Bob (D3, D4), and for the remaining parties the reflected
/// V port carries the odd index (Charlie: V -> D5, H -> D6).
class DetectorMap {
  public:
    static DetectorMap canonical(int parties);
    /// Canonical wiring with the H/V ports of one party exchanged. Intended
    /// as a negative control for the table verifier.
    static DetectorMap with_swapped_ports(int parties, int swapped_party);
    /// Canonical wiring with Alice's V port and Bob's H port exchanged
    /// (D2 <-> D3); a negative control that breaks every table.
    static DetectorMap with_crossed_wiring(int parties);

    int parties() const { return static_cast<int>(ports_.size()); }
    int port(int party, Polarization pol) const;
    int detector_count() const { return 2 * parties(); }
    /// Party that owns a detector id.
    int party_of(int detector_id) const;
    /// True when the id sits on a reflected V port.
    bool is_v_port(int detector_id) const;

  private:
    // ports_[party] = {id of H port, id of V port}
    std::vector<std::array<int, 2>> ports_;
};

/// A full protocol layout: ordered elements plus the rail bookkeeping.
struct CircuitPlan {
    ProtocolSpec spec;
    DetectorMap detectors;
    std::vector<Element> elements;
    std::vector<Rail> measured_rails;  // detector rails, in id order
    std::vector<Rail> kept_rails;      // A', B, C..Z
};

/// Two maximally entangled sources: the 2n-photon product state.
PhotonicState prepare_sources(const ProtocolSpec& spec);

CircuitPlan build_plan(const ProtocolSpec& spec);
CircuitPlan build_plan(const ProtocolSpec& spec, DetectorMap detectors);

/// Runs sources through every element of the plan and returns the normalized
/// state on the kept and detector rails, immediately before the detectors.
PhotonicState run_to_premeasurement(const CircuitPlan& plan);
PhotonicState run_to_premeasurement(const ProtocolSpec& spec);

/// Reads the recyclable state alpha'|VH..H> + beta'|HV..V> off the kept
/// rails, applies the HWP45 relabeling of the recycling step, and returns a
/// fresh protocol input with those coefficients. Rejects states that are not
/// of the recyclable form (residual weight above 1e-10).
ProtocolSpec recyclable_to_input(const PhotonicState& kept_state);

}  // namespace ecp

#endif  // ECP_CIRCUITS_HPP
