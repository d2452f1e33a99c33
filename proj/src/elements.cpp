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

#include "ecp/elements.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ecp {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr TimeBin kAllBins[] = {TimeBin::untagged, TimeBin::t0, TimeBin::t1};
constexpr Polarization kBothPols[] = {Polarization::h, Polarization::v};

}  // namespace

Element beam_splitter(Rail a, Rail b) {
    if (a == b) throw std::invalid_argument("beam splitter needs two distinct rails");
    std::map<ModeLabel, ModeTransform::Column> columns;
    for (Polarization pol : kBothPols) {
        for (TimeBin bin : kAllBins) {
            const ModeLabel in_a = mode(a, pol, bin);
            const ModeLabel in_b = mode(b, pol, bin);
            columns[in_a] = {{in_a, kInvSqrt2}, {in_b, kInvSqrt2}};
            columns[in_b] = {{in_a, -kInvSqrt2}, {in_b, kInvSqrt2}};
        }
    }
    return Element{ElementKind::beam_splitter,
                   "BS(" + to_string(a) + "," + to_string(b) + ")",
                   {a, b},
                   ModeTransform(std::move(columns), true)};
}

Element half_wave_plate(Rail rail, double angle_deg) {
    // Jones matrix [[cos 2t, sin 2t], [sin 2t, -cos 2t]] at the protocol angles.
    double hh, hv, vh, vv;
    if (std::abs(angle_deg - 45.0) < 1e-9) {
        hh = 0.0, hv = 1.0, vh = 1.0, vv = 0.0;
    } else if (std::abs(angle_deg - 22.5) < 1e-9) {
        hh = kInvSqrt2, hv = kInvSqrt2, vh = kInvSqrt2, vv = -kInvSqrt2;
    } else if (std::abs(angle_deg) < 1e-9) {
        hh = 1.0, hv = 0.0, vh = 0.0, vv = -1.0;
    } else {
        throw std::invalid_argument("unsupported half-wave plate angle");
    }

    std::map<ModeLabel, ModeTransform::Column> columns;
    for (TimeBin bin : kAllBins) {
        const ModeLabel in_h = mode(rail, Polarization::h, bin);
        const ModeLabel in_v = mode(rail, Polarization::v, bin);
        ModeTransform::Column col_h, col_v;
        if (hh != 0.0) col_h.emplace_back(in_h, hh);
        if (vh != 0.0) col_h.emplace_back(in_v, vh);
        if (hv != 0.0) col_v.emplace_back(in_h, hv);
        if (vv != 0.0) col_v.emplace_back(in_v, vv);
        columns[in_h] = std::move(col_h);
        columns[in_v] = std::move(col_v);
    }
    const char* angle_name = angle_deg > 30.0 ? "45" : (angle_deg > 1.0 ? "22.5" : "0");
    return Element{ElementKind::half_wave_plate,
                   std::string("HWP") + angle_name + "(" + to_string(rail) + ")",
                   {rail},
                   ModeTransform(std::move(columns), true)};
}

Element sigma_z(Rail rail) {
    Element element = half_wave_plate(rail, 0.0);
    element.name = "sigma_z(" + to_string(rail) + ")";
    return element;
}

Element time_delay(Rail rail) {
    std::map<ModeLabel, ModeTransform::Column> columns;
    columns[mode(rail, Polarization::h, TimeBin::untagged)] = {
        {mode(rail, Polarization::h, TimeBin::t0), Complex{1.0, 0.0}}};
    columns[mode(rail, Polarization::v, TimeBin::untagged)] = {
        {mode(rail, Polarization::v, TimeBin::t1), Complex{1.0, 0.0}}};
    return Element{ElementKind::time_delay,
                   "TD(" + to_string(rail) + ")",
                   {rail},
                   ModeTransform(std::move(columns), true)};
}

Element polarizing_beam_splitter(Rail in, Rail out_h, Rail out_v) {
    if (out_h == out_v) throw std::invalid_argument("PBS output rails must differ");
    std::map<ModeLabel, ModeTransform::Column> columns;
    for (TimeBin bin : kAllBins) {
        columns[mode(in, Polarization::h, bin)] = {
            {mode(out_h, Polarization::h, bin), Complex{1.0, 0.0}}};
        columns[mode(in, Polarization::v, bin)] = {
            {mode(out_v, Polarization::v, bin), Complex{1.0, 0.0}}};
    }
    return Element{ElementKind::polarizing_beam_splitter,
                   "PBS(" + to_string(in) + "->" + to_string(out_h) + "," + to_string(out_v) + ")",
                   {in, out_h, out_v},
                   ModeTransform(std::move(columns), true)};
}

Element polarizing_beam_splitter(Rail in1, Rail in2, Rail out1, Rail out2) {
    if (in1 == in2 || out1 == out2) {
        throw std::invalid_argument("PBS rails must be pairwise distinct per side");
    }
    std::map<ModeLabel, ModeTransform::Column> columns;
    for (TimeBin bin : kAllBins) {
        columns[mode(in1, Polarization::h, bin)] = {
            {mode(out1, Polarization::h, bin), Complex{1.0, 0.0}}};
        columns[mode(in2, Polarization::h, bin)] = {
            {mode(out2, Polarization::h, bin), Complex{1.0, 0.0}}};
        columns[mode(in1, Polarization::v, bin)] = {
            {mode(out2, Polarization::v, bin), Complex{1.0, 0.0}}};
        columns[mode(in2, Polarization::v, bin)] = {
            {mode(out1, Polarization::v, bin), Complex{1.0, 0.0}}};
    }
    return Element{ElementKind::polarizing_beam_splitter,
                   "PBS(" + to_string(in1) + "," + to_string(in2) + "->" + to_string(out1) + "," +
                       to_string(out2) + ")",
                   {in1, in2, out1, out2},
                   ModeTransform(std::move(columns), true)};
}

Element attenuation(Complex alpha, Complex beta, std::vector<Rail> marker_rails) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
        throw std::invalid_argument("attenuation requires |alpha|^2 + |beta|^2 = 1");
    }
    if (marker_rails.empty()) throw std::invalid_argument("attenuation needs marker rails");

    const double sqrt2 = std::sqrt(2.0);
    std::map<ModeLabel, ModeTransform::Column> columns;
    for (Rail rail : marker_rails) {
        for (TimeBin bin : kAllBins) {
            const ModeLabel in_h = mode(rail, Polarization::h, bin);
            const ModeLabel in_v = mode(rail, Polarization::v, bin);
            columns[in_h] = {{in_h, alpha * sqrt2}};
            columns[in_v] = {{in_v, beta * sqrt2}};
        }
    }
    std::string name = "ATT(";
    for (std::size_t i = 0; i < marker_rails.size(); ++i) {
        if (i) name += ",";
        name += to_string(marker_rails[i]);
    }
    name += ")";
    return Element{ElementKind::attenuation, std::move(name), std::move(marker_rails),
                   ModeTransform(std::move(columns), false)};
}

}  // namespace ecp
