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
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ecp/analysis.hpp"
#include "ecp/circuits.hpp"
#include "ecp/detection.hpp"
#include "ecp/elements.hpp"
#include "ecp/fock.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace ecp;
using namespace ecp::testing;

namespace {

struct Checker {
    std::vector<std::string> failures;

    void require(bool condition, const std::string& message) {
        if (!condition) failures.push_back(message);
    }
    void within(double actual, double expected, double tolerance, const std::string& message) {
        if (!(std::abs(actual - expected) <= tolerance)) {
            std::ostringstream s;
            s << message << " (got " << actual << ", want " << expected << " +- " << tolerance
              << ")";
            failures.push_back(s.str());
        }
    }
};

ProtocolSpec spec_at(int parties, double alpha) {
    const double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
    return parties == 2 ? ProtocolSpec::bell(alpha, beta)
                        : ProtocolSpec::ghz(parties, alpha, beta);
}

double success_mass(const std::vector<HeraldedOutcome>& outcomes) {
    double mass = 0.0;
    for (const auto& outcome : outcomes) {
        if (outcome.label == OutcomeLabel::success_plus ||
            outcome.label == OutcomeLabel::success_minus) {
            mass += outcome.probability;
        }
    }
    return mass;
}

// 1. Simulated success mass equals 2 a^2 (1 - a^2) over 99 grid points.
void criterion_success_curve(Checker& check) {
    double peak = 0.0, peak_alpha = 0.0;
    for (double alpha : alpha_grid(99)) {
        const double mass = success_mass(herald(spec_at(2, alpha)));
        check.within(mass, 2.0 * alpha * alpha * (1.0 - alpha * alpha), 1e-10,
                     "success mass at alpha=" + std::to_string(alpha));
        if (mass > peak) {
            peak = mass;
            peak_alpha = alpha;
        }
    }
    const double at_symmetric = success_mass(herald(spec_at(2, 1.0 / std::sqrt(2.0))));
    check.within(at_symmetric, 0.5, 1e-10, "peak success mass at alpha=1/sqrt2");
    check.require(peak <= 0.5 + 1e-10, "success mass stays below 0.5");
    check.require(std::abs(peak_alpha - 0.71) < 0.015, "grid peak sits next to 1/sqrt2");
}

// 2. One recycle round: total equals 2|ab|^2 + 2|ab|^4/(|a|^4+|b|^4).
void criterion_recycling_total(Checker& check) {
    for (double alpha : alpha_grid(99)) {
        const double a2 = alpha * alpha;
        const double b2 = 1.0 - a2;
        const double expected = 2.0 * a2 * b2 + 2.0 * std::pow(a2 * b2, 2) / (a2 * a2 + b2 * b2);
        check.within(total_probability(alpha, 1), expected, 1e-10,
                     "recycled total at alpha=" + std::to_string(alpha));
    }
    check.within(total_probability(1.0 / std::sqrt(2.0), 1), 0.75, 1e-10,
                 "recycled total peaks at 0.75");
    for (double alpha : {0.3, 0.5, 0.65, 0.9}) {
        check.require(total_probability(alpha, 1) < 0.75, "0.75 is attained only at 1/sqrt2");
    }
}

// 3. Every row of both signature tables reproduced at 9 grid points,
//    with post-feedforward residual fidelity >= 1 - 1e-10.
void criterion_golden_tables(Checker& check) {
    for (int parties : {2, 3}) {
        const VerifyReport report = verify_tables(parties);
        check.require(report.errors.empty(), "no unreachable or missing patterns");
        check.require(static_cast<int>(report.rows.size()) == (parties == 2 ? 22 : 44),
                      "row count for " + std::to_string(parties) + " parties");
        for (const auto& row : report.rows) {
            check.require(row.observed, row.signature + " observed");
            check.require(row.min_fidelity >= 1.0 - 1e-10,
                          row.signature + " residual fidelity");
            check.require(row.detail.empty(), row.signature + ": " + row.detail);
        }
        check.within(report.worst_mass_error, 0.0, 1e-10, "class masses match closed forms");
    }
}

// 4. Outcome completeness for n in {2..5}; GHZ(2) == Bell; GHZ(8) runs.
void criterion_completeness(Checker& check) {
    for (int parties : {2, 3, 4, 5}) {
        for (double alpha : alpha_grid(9)) {
            const CircuitPlan plan = build_plan(spec_at(parties, alpha));
            double total = 0.0;
            for (const auto& outcome : enumerate_outcomes(run_to_premeasurement(plan), plan)) {
                total += outcome.probability;
                try {
                    classify(outcome.event, plan);
                } catch (const std::exception& e) {
                    check.require(false, e.what());
                }
            }
            check.within(total, 1.0, 1e-10,
                         "probability sum, parties=" + std::to_string(parties));
        }
    }

    const PhotonicState bell = run_to_premeasurement(ProtocolSpec::bell(0.6, 0.8));
    const PhotonicState ghz2 = run_to_premeasurement(ProtocolSpec::ghz(2, 0.6, 0.8));
    check.require(bell.terms().size() == ghz2.terms().size(), "GHZ(2) config count");
    for (const auto& [config, amplitude] : bell.terms()) {
        check.require(std::abs(ghz2.amplitude(config) - amplitude) < 1e-14,
                      "GHZ(2) equals Bell config-for-config");
    }

    const CircuitPlan plan8 = build_plan(spec_at(8, 0.6));
    double total8 = 0.0;
    for (const auto& outcome : enumerate_outcomes(run_to_premeasurement(plan8), plan8)) {
        total8 += outcome.probability;
        classify(outcome.event, plan8);
    }
    check.within(total8, 1.0, 1e-10, "probability sum for GHZ(8)");
}

// 5. No click pattern is shared by two differently labeled events.
void criterion_click_sufficiency(Checker& check) {
    for (int parties : {2, 3, 4, 5}) {
        std::map<std::vector<Click>, OutcomeLabel> seen;
        for (double alpha : alpha_grid(9)) {
            const CircuitPlan plan = build_plan(spec_at(parties, alpha));
            for (const auto& outcome : enumerate_outcomes(run_to_premeasurement(plan), plan)) {
                const Classification cls = classify(outcome.event, plan);
                auto [it, inserted] = seen.emplace(outcome.event.clicks, cls.label);
                if (!inserted) {
                    check.require(it->second == cls.label,
                                  "pattern " + to_string(outcome.event) + " has one label");
                }
            }
        }
    }
}

// 6. Engine properties: catalog unitarity, HOM cancellation, norm
//    preservation on random 8-photon states.
void criterion_engine_properties(Checker& check) {
    const Rail a = Rail::party(0), b = Rail::party(1);
    try {
        beam_splitter(a, b);
        half_wave_plate(a, 45.0);
        half_wave_plate(a, 22.5);
        sigma_z(a);
        time_delay(a);
        polarizing_beam_splitter(a, Rail::detector(1), Rail::detector(2));
    } catch (const std::exception& e) {
        check.require(false, std::string("catalog unitarity (1e-12 check): ") + e.what());
    }

    const PhotonicState pair = tensor(single_photon(mode(a, Polarization::h)),
                                      single_photon(mode(b, Polarization::h)));
    const PhotonicState bunched = apply_transform(pair, beam_splitter(a, b).transform);
    check.require(bunched.terms().size() == 2, "HOM leaves two bunched terms");
    check.require(
        bunched.amplitude(OccupationConfig::from_modes(
            {mode(a, Polarization::h), mode(b, Polarization::h)})) == Complex{0.0, 0.0},
        "HOM coincidence term cancels exactly");

    std::mt19937 rng(31);
    const std::vector<ModeLabel> modes = {
        mode(a, Polarization::h), mode(a, Polarization::v),
        mode(b, Polarization::h), mode(b, Polarization::v)};
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<ModeLabel> chosen;
        for (int p = 0; p < 8; ++p) chosen.push_back(modes[rng() % modes.size()]);
        std::map<OccupationConfig, Complex> terms;
        std::normal_distribution<double> gauss;
        terms[OccupationConfig::from_modes(chosen)] = Complex{gauss(rng), gauss(rng)};
        std::vector<ModeLabel> chosen2;
        for (int p = 0; p < 8; ++p) chosen2.push_back(modes[rng() % modes.size()]);
        terms[OccupationConfig::from_modes(chosen2)] += Complex{gauss(rng), gauss(rng)};
        const PhotonicState state = PhotonicState(std::move(terms)).normalized();

        PhotonicState out = apply_transform(state, beam_splitter(a, b).transform);
        out = apply_transform(out, half_wave_plate(a, 22.5).transform);
        out = apply_transform(out, half_wave_plate(b, 45.0).transform);
        check.within(norm(out), 1.0, 1e-10, "norm preserved on a random 8-photon state");
    }
}

// 7. The engine premeasurement state equals the brute-force expansion,
//    amplitude by amplitude, at 9 alpha values.
void criterion_oracle_equivalence(Checker& check) {
    for (double alpha : alpha_grid(9)) {
        const PhotonicState engine = run_to_premeasurement(spec_at(2, alpha));
        const auto reference = oracle::amplitudes(oracle::premeasurement(2, alpha));
        check.require(engine.terms().size() == reference.size(),
                      "config count at alpha=" + std::to_string(alpha));
        for (const auto& [config, amplitude] : reference) {
            check.require(std::abs(engine.amplitude(config) - amplitude) <= 1e-12,
                          "amplitude of " + to_string(config) +
                              " at alpha=" + std::to_string(alpha));
        }
        for (const auto& [config, amplitude] : engine.terms()) {
            check.require(reference.count(config) == 1,
                          "engine-only config " + to_string(config));
        }
    }
}

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<void(Checker&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"1. success-probability curve (99 alphas, < 1 s)", 1.0, criterion_success_curve},
        {"2. recycling total (99 alphas, < 1 s)", 1.0, criterion_recycling_total},
        {"3. golden signature tables (9 alphas, < 5 s)", 5.0, criterion_golden_tables},
        {"4. outcome completeness, GHZ(2..5, 8) (< 10 s)", 10.0, criterion_completeness},
        {"5. click-pattern sufficiency (n = 2..5)", 0.0, criterion_click_sufficiency},
        {"6. engine properties (unitarity, HOM, norms)", 0.0, criterion_engine_properties},
        {"7. oracle equivalence (9 alphas, 1e-12)", 0.0, criterion_oracle_equivalence},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        Checker check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.body(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_seconds > 0.0 && seconds > criterion.budget_seconds) {
            std::ostringstream s;
            s << "runtime " << seconds << " s exceeds " << criterion.budget_seconds << " s";
            check.failures.push_back(s.str());
        }

        if (check.failures.empty()) {
            std::printf("[PASS] %s  (%.3f s)\n", criterion.name.c_str(), seconds);
        } else {
            failed += 1;
            std::printf("[FAIL] %s  (%.3f s)\n", criterion.name.c_str(), seconds);
            std::size_t shown = 0;
            for (const auto& failure : check.failures) {
                if (shown++ == 8) {
                    std::printf("         ... %zu more\n", check.failures.size() - 8);
                    break;
                }
                std::printf("         %s\n", failure.c_str());
            }
        }
    }
    std::printf("%d/%zu acceptance criteria passed\n",
                static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
