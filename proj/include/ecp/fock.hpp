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

#ifndef ECP_FOCK_HPP
#define ECP_FOCK_HPP

#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ecp {

using Complex = std::complex<double>;

/// Amplitudes with magnitude below this are dropped from states.
inline constexpr double kDefaultPruneEpsilon = 1e-14;

enum class Polarization : std::uint8_t { h = 0, v = 1 };
enum class TimeBin : std::uint8_t { untagged = 0, t0 = 1, t1 = 2 };
enum class RailKind : std::uint8_t { party = 0, party_prime = 1, detector = 2 };

/// A spatial path: party rails A..Z, primed rails A'..Z', or a detector rail Dk.
struct Rail {
    RailKind kind{RailKind::party};
    std::uint8_t index{0};

    friend auto operator<=>(const Rail&, const Rail&) = default;

    static Rail party(int i);
    static Rail primed(int i);
    static Rail detector(int id);  // id is 1-based (D1, D2, ...)
};

std::string to_string(Rail rail);

/// One optical mode: spatial rail x polarization x time bin.
/// The declaration order of the fields defines the canonical total order.
struct ModeLabel {
    Rail rail{};
    Polarization pol{Polarization::h};
    TimeBin bin{TimeBin::untagged};

    friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

std::string to_string(const ModeLabel& mode);

inline ModeLabel mode(Rail rail, Polarization pol, TimeBin bin = TimeBin::untagged) {
    return ModeLabel{rail, pol, bin};
}

/// A multi-photon basis state: occupation count per mode, canonically sorted.
/// The default-constructed config is the vacuum (zero photons).
class OccupationConfig {
  public:
    OccupationConfig() = default;
    explicit OccupationConfig(std::vector<std::pair<ModeLabel, int>> occupations);

    /// Builds a config from a list of single-photon modes; duplicates merge into counts.
    static OccupationConfig from_modes(std::initializer_list<ModeLabel> modes);
    static OccupationConfig from_modes(std::span<const ModeLabel> modes);

    const std::vector<std::pair<ModeLabel, int>>& occupations() const { return occupations_; }
    int total() const { return total_; }
    bool is_vacuum() const { return occupations_.empty(); }
    int count(const ModeLabel& mode) const;
    bool touches_rail(Rail rail) const;

    /// New config keeping only modes on the given rails.
    OccupationConfig restricted_to(std::span<const Rail> rails) const;
    /// New config with all modes on the given rails removed.
    OccupationConfig without(std::span<const Rail> rails) const;

    std::vector<Rail> rails() const;

    friend auto operator<=>(const OccupationConfig&, const OccupationConfig&) = default;

  private:
    std::vector<std::pair<ModeLabel, int>> occupations_;
    int total_ = 0;
};

std::string to_string(const OccupationConfig& config);

/// Sparse complex superposition over occupation configs. All configs in a
/// nonempty state carry the same total photon count; terms below the prune
/// threshold are never stored. Immutable after construction.
class PhotonicState {
  public:
    PhotonicState() = default;  // the zero vector
    explicit PhotonicState(std::map<OccupationConfig, Complex> terms,
                           double prune_epsilon = kDefaultPruneEpsilon);

    static PhotonicState basis(OccupationConfig config,
                               double prune_epsilon = kDefaultPruneEpsilon);

    const std::map<OccupationConfig, Complex>& terms() const { return terms_; }
    double prune_epsilon() const { return prune_epsilon_; }
    bool is_zero() const { return terms_.empty(); }
    /// Photon count shared by every config; -1 for the zero state.
    int total_photons() const;

    Complex amplitude(const OccupationConfig& config) const;
    double squared_norm() const;
    PhotonicState scaled(Complex factor) const;
    PhotonicState normalized() const;

  private:
    std::map<OccupationConfig, Complex> terms_;
    double prune_epsilon_ = kDefaultPruneEpsilon;
};

std::string to_string(const PhotonicState& state);

double norm(const PhotonicState& state);
Complex inner_product(const PhotonicState& lhs, const PhotonicState& rhs);
/// |<a|b>|^2 on the normalized states; insensitive to global phase.
double fidelity(const PhotonicState& lhs, const PhotonicState& rhs);
PhotonicState add(const PhotonicState& lhs, const PhotonicState& rhs);

/// Linear map on creation operators. Inputs not listed pass through unchanged.
/// With unitary=true the column set must be orthonormal (checked to 1e-12).
class ModeTransform {
  public:
    using Column = std::vector<std::pair<ModeLabel, Complex>>;

    ModeTransform(std::map<ModeLabel, Column> columns, bool unitary);

    const std::map<ModeLabel, Column>& columns() const { return columns_; }
    bool unitary() const { return unitary_; }
    bool has_column(const ModeLabel& mode) const;
    /// Every mode appearing on the output side of a listed column.
    std::vector<ModeLabel> output_modes() const;

  private:
    std::map<ModeLabel, Column> columns_;
    bool unitary_ = false;
};

/// Substitutes each creation operator through the transform, expands the
/// products with bosonic normalization, merges like configs, and prunes.
PhotonicState apply_transform(const PhotonicState& state, const ModeTransform& transform);

/// `second` applied after `first`, as a single transform.
ModeTransform compose(const ModeTransform& first, const ModeTransform& second);
/// Hermitian adjoint; meaningful for unitary transforms.
ModeTransform adjoint(const ModeTransform& transform);

/// Product state of two states on disjoint rail sets.
PhotonicState tensor(const PhotonicState& lhs, const PhotonicState& rhs);

/// Projects the modes on `measured_rails` onto the exact occupation `fixed`
/// (rails in the set but absent from `fixed` must be empty). Returns the
/// renormalized residual on the remaining rails and the outcome probability.
/// The residual keeps the phase of the matched amplitudes.
std::pair<PhotonicState, double> project_and_collapse(const PhotonicState& state,
                                                      const OccupationConfig& fixed,
                                                      std::span<const Rail> measured_rails);

}  // namespace ecp

#endif  // ECP_FOCK_HPP
