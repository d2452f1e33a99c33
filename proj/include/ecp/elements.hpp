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

#ifndef ECP_ELEMENTS_HPP
#define ECP_ELEMENTS_HPP

#include <string>
#include <vector>

#include "ecp/fock.hpp"

namespace ecp {

enum class ElementKind {
    beam_splitter,
    polarizing_beam_splitter,
    half_wave_plate,
    time_delay,
    attenuation,
};

/// One optical element (or channel) of a circuit, with its mode transform.
struct Element {
    ElementKind kind;
    std::string name;
    std::vector<Rail> rails;
    ModeTransform transform;
};

/// 50:50 beam splitter: |G>_a -> (|G>_a + |G>_b)/sqrt2,
/// |G>_b -> (-|G>_a + |G>_b)/sqrt2, for both polarizations and all time bins.
Element beam_splitter(Rail a, Rail b);

/// Half-wave plate. Only the three protocol angles are supported:
/// 45 swaps H and V, 22.5 is the Hadamard rotation, 0 is sigma_z.
Element half_wave_plate(Rail rail, double angle_deg);

/// sigma_z = |H><H| - |V><V| on one rail (a half-wave plate at 0 degrees).
Element sigma_z(Rail rail);

/// Tags untagged modes of one rail with arrival times: H -> t0, V -> t1.
/// Applying it to an already tagged rail is rejected at apply time.
Element time_delay(Rail rail);

/// Polarizing beam splitter, one input: H transmits to out_h, V reflects to out_v.
Element polarizing_beam_splitter(Rail in, Rail out_h, Rail out_v);

/// Two-input polarizing beam splitter: H of each input transmits straight
/// (in1 -> out1, in2 -> out2) and V reflects across.
Element polarizing_beam_splitter(Rail in1, Rail in2, Rail out1, Rail out2);

/// Amplitude-decay channel for one source pair per marker rail: scales the
/// H modes of each marker rail by alpha*sqrt2 and the V modes by beta*sqrt2.
/// Non-unitary; the caller renormalizes. Requires |alpha|^2 + |beta|^2 = 1.
Element attenuation(Complex alpha, Complex beta, std::vector<Rail> marker_rails);

}  // namespace ecp

#endif  // ECP_ELEMENTS_HPP
