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

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "ecp/circuits.hpp"
#include "ecp/detection.hpp"
#include "ecp/elements.hpp"
#include "ecp/fock.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace ecp;
using namespace ecp::testing;

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

TEST_CASE("mode labels order by rail, polarization, time bin") {
    CHECK(h(kRailA) < v(kRailA));
    CHECK(v(kRailA) < h(kRailB));
    CHECK(h(kRailA, TimeBin::t0) < h(kRailA, TimeBin::t1));
    CHECK(h(kRailB) < h(kRailAPrime));       // party rails before primed rails
    CHECK(h(kRailAPrime) < h(Rail::detector(1)));
    CHECK(to_string(v(kRailBPrime, TimeBin::t1)) == "B':V@t1");
}

TEST_CASE("occupation configs canonicalize and validate") {
    const OccupationConfig twice = OccupationConfig::from_modes({h(kRailA), h(kRailA), v(kRailB)});
    CHECK(twice.total() == 3);
    CHECK(twice.count(h(kRailA)) == 2);
    CHECK(twice.count(v(kRailA)) == 0);

    const OccupationConfig same =
        OccupationConfig({{v(kRailB), 1}, {h(kRailA), 2}});
    CHECK(twice == same);

    CHECK_THROWS_AS(OccupationConfig({{h(kRailA), 0}}), std::invalid_argument);
    CHECK_THROWS_AS(OccupationConfig({{h(kRailA), -1}}), std::invalid_argument);
}

TEST_CASE("states reject mixed photon totals and non-finite amplitudes") {
    std::map<OccupationConfig, Complex> mixed;
    mixed[OccupationConfig::from_modes({h(kRailA)})] = 0.5;
    mixed[OccupationConfig::from_modes({h(kRailA), h(kRailB)})] = 0.5;
    CHECK_THROWS_AS(PhotonicState(std::move(mixed)), std::invalid_argument);

    std::map<OccupationConfig, Complex> bad;
    bad[OccupationConfig::from_modes({h(kRailA)})] = Complex{std::nan(""), 0.0};
    CHECK_THROWS_AS(PhotonicState(std::move(bad)), std::invalid_argument);
}

TEST_CASE("stored amplitudes never fall below the prune threshold") {
    std::map<OccupationConfig, Complex> terms;
    terms[OccupationConfig::from_modes({h(kRailA)})] = 1.0;
    terms[OccupationConfig::from_modes({v(kRailA)})] = 1e-16;
    const PhotonicState state(std::move(terms));
    CHECK(state.terms().size() == 1);
    for (const auto& [config, amplitude] : state.terms()) {
        CHECK(std::abs(amplitude) >= state.prune_epsilon());
    }
}

TEST_CASE("single photon through the beam splitter") {
    const auto bs = beam_splitter(kRailA, kRailBPrime);
    const PhotonicState out = apply_transform(single_photon(h(kRailA)), bs.transform);
    CHECK(out.amplitude(OccupationConfig::from_modes({h(kRailA)})).real() ==
          doctest::Approx(kInvSqrt2).epsilon(1e-14));
    CHECK(out.amplitude(OccupationConfig::from_modes({h(kRailBPrime)})).real() ==
          doctest::Approx(kInvSqrt2).epsilon(1e-14));
    CHECK(out.terms().size() == 2);
}

TEST_CASE("identity transform returns the state amplitude-exact") {
    const PhotonicState state = bell_pair(kRailA, kRailB);
    const ModeTransform identity({}, true);
    const PhotonicState out = apply_transform(state, identity);
    CHECK(out.terms() == state.terms());
}

TEST_CASE("Hong-Ou-Mandel: the coincidence term cancels exactly") {
    const PhotonicState in = tensor(single_photon(h(kRailA)), single_photon(h(kRailBPrime)));
    const PhotonicState out = apply_transform(in, beam_splitter(kRailA, kRailBPrime).transform);

    const OccupationConfig both_b = OccupationConfig({{h(kRailBPrime), 2}});
    const OccupationConfig both_a = OccupationConfig({{h(kRailA), 2}});
    const OccupationConfig coincidence = OccupationConfig::from_modes({h(kRailA), h(kRailBPrime)});

    CHECK(out.terms().size() == 2);  // the cross term must be pruned, not small
    CHECK(out.amplitude(both_b).real() == doctest::Approx(kInvSqrt2).epsilon(1e-14));
    CHECK(out.amplitude(both_a).real() == doctest::Approx(-kInvSqrt2).epsilon(1e-14));
    CHECK(out.amplitude(coincidence) == Complex{0.0, 0.0});

    // Same expansion done symbolically.
    oracle::Poly poly{{{h(kRailA), h(kRailBPrime)}, 1.0}};
    poly = oracle::substitute(poly, oracle::bs_rule(kRailA, kRailBPrime));
    const auto reference = oracle::amplitudes(poly);
    CHECK(reference.size() == 2);
    for (const auto& [config, amplitude] : reference) {
        CHECK(std::abs(out.amplitude(config) - amplitude) < 1e-14);
    }
}

TEST_CASE("tensor of the two Bell sources gives four terms of 1/2") {
    const PhotonicState product =
        tensor(bell_pair(kRailA, kRailB), bell_pair(kRailAPrime, kRailBPrime));
    CHECK(product.terms().size() == 4);
    for (const auto& [config, amplitude] : product.terms()) {
        CHECK(amplitude.real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(config.total() == 4);
    }
    CHECK(norm(product) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tensor with the empty product is the identity") {
    const PhotonicState state = bell_pair(kRailA, kRailB);
    const PhotonicState unit = PhotonicState::basis(OccupationConfig{});
    CHECK(tensor(state, unit).terms() == state.terms());
}

TEST_CASE("tensor rejects overlapping rails") {
    CHECK_THROWS_AS(tensor(bell_pair(kRailA, kRailB), bell_pair(kRailB, kRailC)),
                    std::invalid_argument);
}

TEST_CASE("six-photon source product has four terms of 1/2") {
    const PhotonicState ghz = prepare_sources(ProtocolSpec::ghz(3, 0.6, 0.8));
    CHECK(ghz.terms().size() == 4);
    for (const auto& [config, amplitude] : ghz.terms()) {
        CHECK(amplitude.real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(config.total() == 6);
    }
}

TEST_CASE("inner products of canonical Bell states") {
    const PhotonicState phi_plus = canonical_success_state(2);

    std::map<OccupationConfig, Complex> terms;
    terms[OccupationConfig::from_modes({h(kRailAPrime), h(kRailB)})] = kInvSqrt2;
    terms[OccupationConfig::from_modes({v(kRailAPrime), v(kRailB)})] = -kInvSqrt2;
    const PhotonicState phi_minus(std::move(terms));

    CHECK(inner_product(phi_plus, phi_plus).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(inner_product(phi_plus, phi_minus)) < 1e-14);
}

TEST_CASE("overlap of the relabeled recyclable state with phi+") {
    // alpha = 0.6: after the HWP45 relabeling the recyclable state reads
    // alpha'|HH> + beta'|VV>, so its overlap with phi+ is (alpha'+beta')/sqrt2.
    const double alpha = 0.6;
    const double beta = 0.8;
    const ProtocolSpec spec = ProtocolSpec::bell(alpha, beta);
    const PhotonicState relabeled =
        apply_transform(canonical_recyclable_state(spec), half_wave_plate(kRailAPrime, 45.0).transform);

    const double a2 = alpha * alpha, b2 = beta * beta;
    const double denom = std::sqrt(a2 * a2 + b2 * b2);
    const double expected = (a2 / denom + b2 / denom) * kInvSqrt2;

    const Complex overlap = inner_product(relabeled, canonical_success_state(2));
    CHECK(overlap.real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(overlap.imag()) < 1e-14);
}

TEST_CASE("project_and_collapse: Bell marginal") {
    const PhotonicState phi_plus = bell_pair(kRailAPrime, kRailB);
    const Rail measured[] = {kRailAPrime};
    const auto [residual, probability] =
        project_and_collapse(phi_plus, OccupationConfig::from_modes({h(kRailAPrime)}), measured);
    CHECK(probability == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(residual.terms().size() == 1);
    CHECK(residual.amplitude(OccupationConfig::from_modes({h(kRailB)})).real() ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("project_and_collapse: absent configuration has probability zero") {
    const PhotonicState phi_plus = bell_pair(kRailAPrime, kRailB);
    const Rail measured[] = {kRailAPrime};
    const auto [residual, probability] = project_and_collapse(
        phi_plus, OccupationConfig({{h(kRailAPrime), 2}}), measured);
    CHECK(probability == 0.0);
    CHECK(residual.is_zero());
}

TEST_CASE("project_and_collapse rejects configs that reference kept rails") {
    const PhotonicState phi_plus = bell_pair(kRailAPrime, kRailB);
    const Rail measured[] = {kRailAPrime};
    CHECK_THROWS_AS(project_and_collapse(
                        phi_plus, OccupationConfig::from_modes({h(kRailB)}), measured),
                    std::invalid_argument);
}

TEST_CASE("projecting the premeasurement state on one interval signature") {
    // Both photons in D1 with the t0-t1 interval herald phi+; the enumeration
    // oracle fixes the per-signature probability at |alpha beta|^2 / 8, and
    // the interval signatures together carry 2|alpha beta|^2.
    const double alpha = 0.6;
    const CircuitPlan plan = build_plan(ProtocolSpec::bell(alpha, 0.8));
    const PhotonicState state = run_to_premeasurement(plan);

    // D1 sits on Alice's H port, so both of its photons arrive H-polarized.
    const OccupationConfig signature = OccupationConfig::from_modes(
        {h(Rail::detector(1), TimeBin::t0), h(Rail::detector(1), TimeBin::t1)});
    const auto [residual, probability] =
        project_and_collapse(state, signature, plan.measured_rails);

    const double ab = alpha * 0.8;
    CHECK(probability == doctest::Approx(ab * ab / 8.0).epsilon(1e-12));
    CHECK(fidelity(residual, canonical_success_state(2)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // All interval signatures sum to the success mass.
    double interval_mass = 0.0;
    int interval_count = 0;
    for (const auto& outcome : oracle::enumerate(
             oracle::amplitudes(oracle::premeasurement(2, alpha)))) {
        bool has_t0 = false, has_t1 = false;
        for (const auto& [m, n] : outcome.detector_config.occupations()) {
            has_t0 |= m.bin == TimeBin::t0;
            has_t1 |= m.bin == TimeBin::t1;
        }
        if (has_t0 && has_t1) {
            interval_mass += outcome.probability;
            interval_count += 1;
        }
    }
    CHECK(interval_count == 16);
    CHECK(interval_mass == doctest::Approx(2.0 * ab * ab).epsilon(1e-12));
}

TEST_CASE("projection over a complete config set resolves probability one") {
    std::mt19937 rng(7);
    const std::vector<ModeLabel> modes = {h(kRailA), v(kRailA), h(kRailB), v(kRailB),
                                          h(kRailC), v(kRailC)};
    const Rail measured[] = {kRailA, kRailB};
    for (int trial = 0; trial < 20; ++trial) {
        const PhotonicState state = random_state(rng, modes, 4);
        std::set<OccupationConfig> restrictions;
        for (const auto& [config, amplitude] : state.terms()) {
            restrictions.insert(config.restricted_to(measured));
        }
        double total = 0.0;
        for (const OccupationConfig& fixed : restrictions) {
            total += project_and_collapse(state, fixed, measured).second;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("unitary transforms preserve the norm of random states") {
    std::mt19937 rng(11);
    const std::vector<ModeLabel> modes = {h(kRailA),      v(kRailA),      h(kRailBPrime),
                                          v(kRailBPrime), h(kRailAPrime), v(kRailAPrime)};
    for (int trial = 0; trial < 40; ++trial) {
        const PhotonicState state = random_state(rng, modes, 8);
        PhotonicState out = apply_transform(state, beam_splitter(kRailA, kRailBPrime).transform);
        out = apply_transform(out, half_wave_plate(kRailA, 22.5).transform);
        out = apply_transform(out, half_wave_plate(kRailAPrime, 45.0).transform);
        CHECK(norm(out) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("random two-mode rotations preserve the norm up to eight photons") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    const std::vector<ModeLabel> modes = {h(kRailA), v(kRailA), h(kRailB), v(kRailB)};
    for (int trial = 0; trial < 40; ++trial) {
        const double theta = angle(rng);
        const double phase = angle(rng);
        const Complex e{std::cos(phase), std::sin(phase)};
        std::map<ModeLabel, ModeTransform::Column> columns;
        columns[h(kRailA)] = {{h(kRailA), std::cos(theta)}, {v(kRailB), e * std::sin(theta)}};
        columns[v(kRailB)] = {{h(kRailA), -std::conj(e) * std::sin(theta)},
                              {v(kRailB), std::cos(theta)}};
        const ModeTransform rotation(std::move(columns), true);

        const PhotonicState state = random_state(rng, modes, 8);
        CHECK(norm(apply_transform(state, rotation)) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("applying a composition equals composing the applications") {
    std::mt19937 rng(17);
    const std::vector<ModeLabel> modes = {h(kRailA), v(kRailA), h(kRailBPrime), v(kRailBPrime)};
    const ModeTransform first = beam_splitter(kRailA, kRailBPrime).transform;
    const ModeTransform second = half_wave_plate(kRailA, 22.5).transform;
    const ModeTransform composed = compose(first, second);
    for (int trial = 0; trial < 20; ++trial) {
        const PhotonicState state = random_state(rng, modes, 5);
        const PhotonicState via_steps = apply_transform(apply_transform(state, first), second);
        const PhotonicState via_compose = apply_transform(state, composed);
        for (const auto& [config, amplitude] : via_steps.terms()) {
            CHECK(std::abs(via_compose.amplitude(config) - amplitude) < 1e-12);
        }
        CHECK(via_compose.terms().size() == via_steps.terms().size());
    }
}

TEST_CASE("self-inverse plates square to the identity") {
    std::mt19937 rng(19);
    const std::vector<ModeLabel> modes = {h(kRailA), v(kRailA)};
    for (const double angle : {45.0, 0.0}) {
        const ModeTransform plate = half_wave_plate(kRailA, angle).transform;
        for (int trial = 0; trial < 10; ++trial) {
            const PhotonicState state = random_state(rng, modes, 4);
            const PhotonicState back = apply_transform(apply_transform(state, plate), plate);
            for (const auto& [config, amplitude] : state.terms()) {
                CHECK(std::abs(back.amplitude(config) - amplitude) < 1e-12);
            }
        }
    }
}

TEST_CASE("transforms with non-finite coefficients are rejected") {
    std::map<ModeLabel, ModeTransform::Column> columns;
    columns[h(kRailA)] = {{h(kRailA), Complex{std::nan(""), 0.0}}};
    CHECK_THROWS_AS(ModeTransform(std::move(columns), false), std::invalid_argument);
}

TEST_CASE("a transform marked unitary must have orthonormal columns") {
    std::map<ModeLabel, ModeTransform::Column> columns;
    columns[h(kRailA)] = {{h(kRailA), 0.9}};
    CHECK_THROWS_AS(ModeTransform(std::move(columns), true), std::invalid_argument);
}
