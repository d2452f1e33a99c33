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

#include "ecp/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ecp {

namespace {

constexpr double kUnitaryTolerance = 1e-12;

bool is_finite(Complex value) {
    return std::isfinite(value.real()) && std::isfinite(value.imag());
}

double sqrt_factorial(int n) {
    double result = 1.0;
    for (int k = 2; k <= n; ++k) result *= std::sqrt(static_cast<double>(k));
    return result;
}

double config_normalization(const OccupationConfig& config) {
    double result = 1.0;
    for (const auto& [mode, count] : config.occupations()) result *= sqrt_factorial(count);
    return result;
}

}  // namespace

Rail Rail::party(int i) {
    if (i < 0 || i > 25) throw std::invalid_argument("party rail index out of range");
    return Rail{RailKind::party, static_cast<std::uint8_t>(i)};
}

Rail Rail::primed(int i) {
    if (i < 0 || i > 25) throw std::invalid_argument("primed rail index out of range");
    return Rail{RailKind::party_prime, static_cast<std::uint8_t>(i)};
}

Rail Rail::detector(int id) {
    if (id < 1 || id > 255) throw std::invalid_argument("detector id out of range");
    return Rail{RailKind::detector, static_cast<std::uint8_t>(id)};
}

std::string to_string(Rail rail) {
    switch (rail.kind) {
        case RailKind::party:
            return std::string(1, static_cast<char>('A' + rail.index));
        case RailKind::party_prime:
            return std::string(1, static_cast<char>('A' + rail.index)) + "'";
        case RailKind::detector:
            return "D" + std::to_string(static_cast<int>(rail.index));
    }
    return "?";
}

std::string to_string(const ModeLabel& mode) {
    std::string s = to_string(mode.rail);
    s += ':';
    s += mode.pol == Polarization::h ? 'H' : 'V';
    if (mode.bin == TimeBin::t0) s += "@t0";
    if (mode.bin == TimeBin::t1) s += "@t1";
    return s;
}

OccupationConfig::OccupationConfig(std::vector<std::pair<ModeLabel, int>> occupations) {
    std::sort(occupations.begin(), occupations.end());
    for (const auto& [mode, count] : occupations) {
        if (count < 1) throw std::invalid_argument("occupation counts must be positive");
        if (!occupations_.empty() && occupations_.back().first == mode) {
            occupations_.back().second += count;
        } else {
            occupations_.emplace_back(mode, count);
        }
        total_ += count;
    }
}

OccupationConfig OccupationConfig::from_modes(std::initializer_list<ModeLabel> modes) {
    return from_modes(std::span<const ModeLabel>(modes.begin(), modes.size()));
}

OccupationConfig OccupationConfig::from_modes(std::span<const ModeLabel> modes) {
    std::vector<std::pair<ModeLabel, int>> occupations;
    occupations.reserve(modes.size());
    for (const ModeLabel& mode : modes) occupations.emplace_back(mode, 1);
    return OccupationConfig(std::move(occupations));
}

int OccupationConfig::count(const ModeLabel& mode) const {
    auto it = std::lower_bound(occupations_.begin(), occupations_.end(), mode,
                               [](const auto& entry, const ModeLabel& m) { return entry.first < m; });
    if (it != occupations_.end() && it->first == mode) return it->second;
    return 0;
}

bool OccupationConfig::touches_rail(Rail rail) const {
    return std::any_of(occupations_.begin(), occupations_.end(),
                       [rail](const auto& entry) { return entry.first.rail == rail; });
}

OccupationConfig OccupationConfig::restricted_to(std::span<const Rail> rails) const {
    std::vector<std::pair<ModeLabel, int>> kept;
    for (const auto& entry : occupations_) {
        if (std::find(rails.begin(), rails.end(), entry.first.rail) != rails.end()) {
            kept.push_back(entry);
        }
    }
    return OccupationConfig(std::move(kept));
}

OccupationConfig OccupationConfig::without(std::span<const Rail> rails) const {
    std::vector<std::pair<ModeLabel, int>> kept;
    for (const auto& entry : occupations_) {
        if (std::find(rails.begin(), rails.end(), entry.first.rail) == rails.end()) {
            kept.push_back(entry);
        }
    }
    return OccupationConfig(std::move(kept));
}

std::vector<Rail> OccupationConfig::rails() const {
    std::vector<Rail> result;
    for (const auto& [mode, count] : occupations_) {
        if (result.empty() || !(result.back() == mode.rail)) result.push_back(mode.rail);
    }
    return result;
}

std::string to_string(const OccupationConfig& config) {
    if (config.is_vacuum()) return "|vac>";
    std::string s = "|";
    bool first = true;
    for (const auto& [mode, count] : config.occupations()) {
        if (!first) s += ' ';
        first = false;
        s += to_string(mode);
        if (count > 1) s += "x" + std::to_string(count);
    }
    s += ">";
    return s;
}

PhotonicState::PhotonicState(std::map<OccupationConfig, Complex> terms, double prune_epsilon)
    : prune_epsilon_(prune_epsilon) {
    int total = -1;
    for (auto& [config, amplitude] : terms) {
        if (!is_finite(amplitude)) throw std::invalid_argument("non-finite amplitude");
        if (std::abs(amplitude) < prune_epsilon_) continue;
        if (total < 0) {
            total = config.total();
        } else if (config.total() != total) {
            throw std::invalid_argument("mixed photon totals in one state");
        }
        terms_.emplace(config, amplitude);
    }
}

PhotonicState PhotonicState::basis(OccupationConfig config, double prune_epsilon) {
    std::map<OccupationConfig, Complex> terms;
    terms.emplace(std::move(config), Complex{1.0, 0.0});
    return PhotonicState(std::move(terms), prune_epsilon);
}

int PhotonicState::total_photons() const {
    if (terms_.empty()) return -1;
    return terms_.begin()->first.total();
}

Complex PhotonicState::amplitude(const OccupationConfig& config) const {
    auto it = terms_.find(config);
    return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

double PhotonicState::squared_norm() const {
    double sum = 0.0;
    for (const auto& [config, amplitude] : terms_) sum += std::norm(amplitude);
    return sum;
}

PhotonicState PhotonicState::scaled(Complex factor) const {
    std::map<OccupationConfig, Complex> terms;
    for (const auto& [config, amplitude] : terms_) terms.emplace(config, amplitude * factor);
    return PhotonicState(std::move(terms), prune_epsilon_);
}

PhotonicState PhotonicState::normalized() const {
    const double n = norm(*this);
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero state");
    return scaled(Complex{1.0 / n, 0.0});
}

std::string to_string(const PhotonicState& state) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [config, amplitude] : state.terms()) {
        if (!first) out << " + ";
        first = false;
        out << "(" << amplitude.real();
        if (amplitude.imag() != 0.0) out << (amplitude.imag() > 0 ? "+" : "") << amplitude.imag() << "i";
        out << ")" << to_string(config);
    }
    if (first) out << "0";
    return out.str();
}

double norm(const PhotonicState& state) { return std::sqrt(state.squared_norm()); }

Complex inner_product(const PhotonicState& lhs, const PhotonicState& rhs) {
    // Configs from different photon-number sectors are orthogonal.
    const auto& a = lhs.terms();
    const auto& b = rhs.terms();
    Complex sum{0.0, 0.0};
    auto it = a.begin();
    auto jt = b.begin();
    while (it != a.end() && jt != b.end()) {
        if (it->first < jt->first) {
            ++it;
        } else if (jt->first < it->first) {
            ++jt;
        } else {
            sum += std::conj(it->second) * jt->second;
            ++it;
            ++jt;
        }
    }
    return sum;
}

double fidelity(const PhotonicState& lhs, const PhotonicState& rhs) {
    const double nl = lhs.squared_norm();
    const double nr = rhs.squared_norm();
    if (nl == 0.0 || nr == 0.0) return 0.0;
    return std::norm(inner_product(lhs, rhs)) / (nl * nr);
}

PhotonicState add(const PhotonicState& lhs, const PhotonicState& rhs) {
    std::map<OccupationConfig, Complex> terms = lhs.terms();
    for (const auto& [config, amplitude] : rhs.terms()) terms[config] += amplitude;
    return PhotonicState(std::move(terms), std::min(lhs.prune_epsilon(), rhs.prune_epsilon()));
}

ModeTransform::ModeTransform(std::map<ModeLabel, Column> columns, bool unitary)
    : columns_(std::move(columns)), unitary_(unitary) {
    for (const auto& [input, column] : columns_) {
        std::set<ModeLabel> seen;
        for (const auto& [output, coefficient] : column) {
            if (!is_finite(coefficient)) throw std::invalid_argument("non-finite transform coefficient");
            if (!seen.insert(output).second) {
                throw std::invalid_argument("duplicate output mode in transform column");
            }
        }
    }
    if (unitary_) {
        // Orthonormal columns on the listed support.
        for (auto it = columns_.begin(); it != columns_.end(); ++it) {
            for (auto jt = it; jt != columns_.end(); ++jt) {
                Complex dot{0.0, 0.0};
                for (const auto& [out_i, c_i] : it->second) {
                    for (const auto& [out_j, c_j] : jt->second) {
                        if (out_i == out_j) dot += std::conj(c_i) * c_j;
                    }
                }
                const Complex expected = (it == jt) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
                if (std::abs(dot - expected) > kUnitaryTolerance) {
                    throw std::invalid_argument("transform marked unitary has non-orthonormal columns");
                }
            }
        }
    }
}

bool ModeTransform::has_column(const ModeLabel& mode) const { return columns_.count(mode) != 0; }

std::vector<ModeLabel> ModeTransform::output_modes() const {
    std::set<ModeLabel> outputs;
    for (const auto& [input, column] : columns_) {
        for (const auto& [output, coefficient] : column) outputs.insert(output);
    }
    return std::vector<ModeLabel>(outputs.begin(), outputs.end());
}

PhotonicState apply_transform(const PhotonicState& state, const ModeTransform& transform) {
    if (state.is_zero()) return state;

    const std::vector<ModeLabel> outputs = transform.output_modes();
    const double input_norm = norm(state);

    std::map<OccupationConfig, Complex> result;
    for (const auto& [config, amplitude] : state.terms()) {
        // A pass-through mode that is also an output of a listed column would
        // collide with transformed photons; the map is not unitary there.
        for (const auto& [mode, count] : config.occupations()) {
            if (!transform.has_column(mode) &&
                std::binary_search(outputs.begin(), outputs.end(), mode)) {
                throw std::invalid_argument("transform output collides with pass-through mode " +
                                            to_string(mode));
            }
        }

        // Expand prod_m (sum_i c_i b_i^dag)^{n_m} one photon factor at a time.
        std::map<OccupationConfig, Complex> partial;
        partial.emplace(OccupationConfig{}, amplitude / config_normalization(config));
        for (const auto& [mode, count] : config.occupations()) {
            ModeTransform::Column identity{{mode, Complex{1.0, 0.0}}};
            const ModeTransform::Column& column =
                transform.has_column(mode) ? transform.columns().at(mode) : identity;
            for (int k = 0; k < count; ++k) {
                std::map<OccupationConfig, Complex> next;
                for (const auto& [partial_config, coefficient] : partial) {
                    for (const auto& [output, weight] : column) {
                        std::vector<std::pair<ModeLabel, int>> occupations =
                            partial_config.occupations();
                        occupations.emplace_back(output, 1);
                        next[OccupationConfig(std::move(occupations))] += coefficient * weight;
                    }
                }
                partial = std::move(next);
            }
        }
        for (const auto& [out_config, coefficient] : partial) {
            result[out_config] += coefficient * config_normalization(out_config);
        }
    }

    PhotonicState output(std::move(result), state.prune_epsilon());
    if (transform.unitary()) {
        const double drift = std::abs(norm(output) - input_norm);
        if (drift > 1e-8 * std::max(1.0, input_norm)) {
            throw std::logic_error("unitary transform failed to preserve the norm");
        }
    }
    return output;
}

ModeTransform compose(const ModeTransform& first, const ModeTransform& second) {
    auto through_second = [&second](const ModeLabel& mode) -> ModeTransform::Column {
        if (second.has_column(mode)) return second.columns().at(mode);
        return {{mode, Complex{1.0, 0.0}}};
    };

    std::map<ModeLabel, ModeTransform::Column> columns;
    for (const auto& [input, column] : first.columns()) {
        std::map<ModeLabel, Complex> combined;
        for (const auto& [middle, c1] : column) {
            for (const auto& [output, c2] : through_second(middle)) combined[output] += c1 * c2;
        }
        ModeTransform::Column out(combined.begin(), combined.end());
        columns.emplace(input, std::move(out));
    }
    for (const auto& [input, column] : second.columns()) {
        if (!columns.count(input)) columns.emplace(input, column);
    }
    return ModeTransform(std::move(columns), first.unitary() && second.unitary());
}

ModeTransform adjoint(const ModeTransform& transform) {
    std::map<ModeLabel, ModeTransform::Column> columns;
    for (const auto& [input, column] : transform.columns()) {
        for (const auto& [output, coefficient] : column) {
            columns[output].emplace_back(input, std::conj(coefficient));
        }
    }
    return ModeTransform(std::move(columns), transform.unitary());
}

PhotonicState tensor(const PhotonicState& lhs, const PhotonicState& rhs) {
    std::set<Rail> lhs_rails;
    for (const auto& [config, amplitude] : lhs.terms()) {
        for (Rail rail : config.rails()) lhs_rails.insert(rail);
    }
    for (const auto& [config, amplitude] : rhs.terms()) {
        for (Rail rail : config.rails()) {
            if (lhs_rails.count(rail)) {
                throw std::invalid_argument("tensor factors overlap on rail " + to_string(rail));
            }
        }
    }

    std::map<OccupationConfig, Complex> result;
    for (const auto& [config_a, amp_a] : lhs.terms()) {
        for (const auto& [config_b, amp_b] : rhs.terms()) {
            std::vector<std::pair<ModeLabel, int>> occupations = config_a.occupations();
            const auto& more = config_b.occupations();
            occupations.insert(occupations.end(), more.begin(), more.end());
            result[OccupationConfig(std::move(occupations))] += amp_a * amp_b;
        }
    }
    return PhotonicState(std::move(result), std::min(lhs.prune_epsilon(), rhs.prune_epsilon()));
}

std::pair<PhotonicState, double> project_and_collapse(const PhotonicState& state,
                                                      const OccupationConfig& fixed,
                                                      std::span<const Rail> measured_rails) {
    for (const auto& [mode, count] : fixed.occupations()) {
        if (std::find(measured_rails.begin(), measured_rails.end(), mode.rail) ==
            measured_rails.end()) {
            throw std::invalid_argument("projection config references unmeasured rail " +
                                        to_string(mode.rail));
        }
    }

    std::map<OccupationConfig, Complex> residual_terms;
    double probability = 0.0;
    for (const auto& [config, amplitude] : state.terms()) {
        if (config.restricted_to(measured_rails) != fixed) continue;
        probability += std::norm(amplitude);
        residual_terms[config.without(measured_rails)] += amplitude;
    }
    if (probability == 0.0) return {PhotonicState{}, 0.0};

    PhotonicState residual(std::move(residual_terms), state.prune_epsilon());
    return {residual.scaled(Complex{1.0 / std::sqrt(probability), 0.0}), probability};
}

}  // namespace ecp
