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

#include "ecp/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ecp {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kRecyclableFormTolerance = 1e-10;

PhotonicState ghz_source(int parties, bool primed) {
    std::vector<ModeLabel> all_h, all_v;
    for (int p = 0; p < parties; ++p) {
        const Rail rail = primed ? Rail::primed(p) : Rail::party(p);
        all_h.push_back(mode(rail, Polarization::h));
        all_v.push_back(mode(rail, Polarization::v));
    }
    std::map<OccupationConfig, Complex> terms;
    terms[OccupationConfig::from_modes(all_h)] = kInvSqrt2;
    terms[OccupationConfig::from_modes(all_v)] = kInvSqrt2;
    return PhotonicState(std::move(terms));
}

}  // namespace

ProtocolSpec ProtocolSpec::bell(Complex alpha, Complex beta, int recycle_rounds) {
    ProtocolSpec spec{ProtocolKind::bell, 2, alpha, beta, recycle_rounds};
    spec.validate();
    return spec;
}

ProtocolSpec ProtocolSpec::ghz(int parties, Complex alpha, Complex beta, int recycle_rounds) {
    ProtocolSpec spec{ProtocolKind::ghz, parties, alpha, beta, recycle_rounds};
    spec.validate();
    return spec;
}

void ProtocolSpec::validate() const {
    if (parties < 2) throw std::invalid_argument("protocol needs at least two parties");
    if (kind == ProtocolKind::bell && parties != 2) {
        throw std::invalid_argument("the Bell protocol has exactly two parties");
    }
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
        throw std::invalid_argument("alpha, beta must satisfy |alpha|^2 + |beta|^2 = 1");
    }
    if (recycle_rounds < 0) throw std::invalid_argument("recycle_rounds must be non-negative");
}

DetectorMap DetectorMap::canonical(int parties) {
    if (parties < 2) throw std::invalid_argument("detector map needs at least two parties");
    DetectorMap map;
    map.ports_.push_back({1, 2});  // Alice
    map.ports_.push_back({3, 4});  // Bob
    for (int party = 2; party < parties; ++party) {
        map.ports_.push_back({2 * party + 2, 2 * party + 1});
    }
    return map;
}

DetectorMap DetectorMap::with_swapped_ports(int parties, int swapped_party) {
    DetectorMap map = canonical(parties);
    if (swapped_party < 0 || swapped_party >= parties) {
        throw std::invalid_argument("swapped party out of range");
    }
    std::swap(map.ports_[swapped_party][0], map.ports_[swapped_party][1]);
    return map;
}

DetectorMap DetectorMap::with_crossed_wiring(int parties) {
    DetectorMap map = canonical(parties);
    std::swap(map.ports_[0][1], map.ports_[1][0]);
    return map;
}

int DetectorMap::port(int party, Polarization pol) const {
    return ports_.at(party)[pol == Polarization::h ? 0 : 1];
}

int DetectorMap::party_of(int detector_id) const {
    for (int party = 0; party < parties(); ++party) {
        if (ports_[party][0] == detector_id || ports_[party][1] == detector_id) return party;
    }
    throw std::invalid_argument("unknown detector id " + std::to_string(detector_id));
}

bool DetectorMap::is_v_port(int detector_id) const {
    for (const auto& pair : ports_) {
        if (pair[1] == detector_id) return true;
        if (pair[0] == detector_id) return false;
    }
    throw std::invalid_argument("unknown detector id " + std::to_string(detector_id));
}

PhotonicState prepare_sources(const ProtocolSpec& spec) {
    spec.validate();
    return tensor(ghz_source(spec.parties, false), ghz_source(spec.parties, true));
}

CircuitPlan build_plan(const ProtocolSpec& spec) {
    return build_plan(spec, DetectorMap::canonical(spec.parties));
}

CircuitPlan build_plan(const ProtocolSpec& spec, DetectorMap detectors) {
    spec.validate();
    if (detectors.parties() != spec.parties) {
        throw std::invalid_argument("detector map does not match the party count");
    }

    const Rail rail_a = Rail::party(0);
    const Rail rail_b = Rail::party(1);
    const Rail rail_a_prime = Rail::primed(0);
    const Rail rail_b_prime = Rail::primed(1);

    CircuitPlan plan{spec, detectors, {}, {}, {}};

    plan.elements.push_back(beam_splitter(rail_a, rail_b_prime));
    // One marker rail per source pair; B and A' never pass the beam splitter.
    plan.elements.push_back(attenuation(spec.alpha, spec.beta, {rail_b, rail_a_prime}));
    plan.elements.push_back(half_wave_plate(rail_a_prime, 45.0));
    plan.elements.push_back(time_delay(rail_a));
    plan.elements.push_back(time_delay(rail_b_prime));
    plan.elements.push_back(half_wave_plate(rail_a, 22.5));
    plan.elements.push_back(half_wave_plate(rail_b_prime, 22.5));
    plan.elements.push_back(polarizing_beam_splitter(
        rail_a, Rail::detector(detectors.port(0, Polarization::h)),
        Rail::detector(detectors.port(0, Polarization::v))));
    plan.elements.push_back(polarizing_beam_splitter(
        rail_b_prime, Rail::detector(detectors.port(1, Polarization::h)),
        Rail::detector(detectors.port(1, Polarization::v))));
    for (int party = 2; party < spec.parties; ++party) {
        const Rail primed = Rail::primed(party);
        plan.elements.push_back(half_wave_plate(primed, 22.5));
        plan.elements.push_back(polarizing_beam_splitter(
            primed, Rail::detector(detectors.port(party, Polarization::h)),
            Rail::detector(detectors.port(party, Polarization::v))));
    }

    for (int id = 1; id <= detectors.detector_count(); ++id) {
        plan.measured_rails.push_back(Rail::detector(id));
    }
    plan.kept_rails.push_back(Rail::primed(0));
    for (int party = 1; party < spec.parties; ++party) {
        plan.kept_rails.push_back(Rail::party(party));
    }

    // Every source rail must end up measured or kept, exactly once.
    std::set<Rail> consumed(plan.kept_rails.begin(), plan.kept_rails.end());
    consumed.insert(rail_a);        // -> Alice's PBS
    consumed.insert(rail_b_prime);  // -> Bob's PBS
    for (int party = 2; party < spec.parties; ++party) consumed.insert(Rail::primed(party));
    if (static_cast<int>(consumed.size()) != 2 * spec.parties) {
        throw std::logic_error("circuit plan does not consume every rail exactly once");
    }
    return plan;
}

PhotonicState run_to_premeasurement(const CircuitPlan& plan) {
    PhotonicState state = prepare_sources(plan.spec);
    for (const Element& element : plan.elements) {
        state = apply_transform(state, element.transform);
        if (element.kind == ElementKind::attenuation) state = state.normalized();
    }
    return state;
}

PhotonicState run_to_premeasurement(const ProtocolSpec& spec) {
    return run_to_premeasurement(build_plan(spec));
}

ProtocolSpec recyclable_to_input(const PhotonicState& kept_state) {
    if (kept_state.is_zero()) throw std::invalid_argument("empty state is not recyclable");

    std::set<Rail> rail_set;
    for (const auto& [config, amplitude] : kept_state.terms()) {
        for (Rail rail : config.rails()) rail_set.insert(rail);
    }
    const int parties = static_cast<int>(rail_set.size());
    if (parties < 2 || !rail_set.count(Rail::primed(0))) {
        throw std::invalid_argument("state does not live on the kept rails of a protocol run");
    }

    // alpha' rides on |V>_{A'} |H..H>, beta' on |H>_{A'} |V..V>.
    std::vector<ModeLabel> branch_a{mode(Rail::primed(0), Polarization::v)};
    std::vector<ModeLabel> branch_b{mode(Rail::primed(0), Polarization::h)};
    for (int party = 1; party < parties; ++party) {
        branch_a.push_back(mode(Rail::party(party), Polarization::h));
        branch_b.push_back(mode(Rail::party(party), Polarization::v));
    }
    const Complex a = kept_state.amplitude(OccupationConfig::from_modes(branch_a));
    const Complex b = kept_state.amplitude(OccupationConfig::from_modes(branch_b));

    const double captured = std::norm(a) + std::norm(b);
    const double deficit = kept_state.squared_norm() - captured;
    if (std::abs(deficit) > kRecyclableFormTolerance || captured == 0.0) {
        throw std::invalid_argument("state is not of the recyclable form");
    }

    const double scale = 1.0 / std::sqrt(captured);
    const ProtocolKind kind = parties == 2 ? ProtocolKind::bell : ProtocolKind::ghz;
    ProtocolSpec next{kind, parties, a * scale, b * scale, 0};
    next.validate();
    return next;
}

}  // namespace ecp
