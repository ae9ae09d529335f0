/**
 * Copyright 2026 The homsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hom/fock.hpp"

#include <cmath>
#include <locale>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "hom/errors.hpp"

namespace hom::fock {

namespace {

int total_photons(const Occupation& occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

void accumulate(Terms& into, const Occupation& occ, Amplitude amp) {
  auto [it, inserted] = into.emplace(occ, amp);
  if (!inserted) it->second += amp;
}

void check_truncation(const Occupation& occ, int max_photons) {
  const int n = total_photons(occ);
  if (n > max_photons) {
    throw TruncationError(fmt::format("state would hold {} photons, truncation is {}", n, max_photons));
  }
}

Terms linear_creation(const Terms& terms, std::span<const std::pair<std::size_t, Amplitude>> combination,
                      int max_photons) {
  Terms out;
  for (const auto& [occ, amp] : terms) {
    for (const auto& [idx, coeff] : combination) {
      Occupation raised = occ;
      const double ladder = std::sqrt(static_cast<double>(raised[idx] + 1));
      raised[idx] += 1;
      check_truncation(raised, max_photons);
      accumulate(out, raised, amp * coeff * ladder);
    }
  }
  return out;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

std::string to_string(Spatial s) {
  switch (s) {
    case Spatial::a: return "a";
    case Spatial::b: return "b";
    case Spatial::c: return "c";
    case Spatial::d: return "d";
    case Spatial::herald1: return "herald1";
    case Spatial::herald2: return "herald2";
  }
  return "?";
}

std::string to_string(const ModeLabel& label) {
  return fmt::format("{}[{},{}]", to_string(label.spatial),
                     label.temporal == Temporal::matched ? "matched" : "orthogonal",
                     label.polarization == Polarization::H ? "H" : "V");
}

ModeRegistry::ModeRegistry(std::vector<ModeLabel> modes) : modes_(std::move(modes)) {
  std::set<ModeLabel> seen;
  for (const auto& m : modes_) {
    if (!seen.insert(m).second) {
      throw PreconditionError("duplicate mode label " + to_string(m));
    }
  }
}

ModeRegistry ModeRegistry::standard() {
  std::vector<ModeLabel> modes;
  for (Spatial s : {Spatial::a, Spatial::b, Spatial::c, Spatial::d}) {
    modes.push_back({s, Temporal::matched, Polarization::H});
    modes.push_back({s, Temporal::orthogonal, Polarization::H});
  }
  modes.push_back({Spatial::herald1, Temporal::matched, Polarization::H});
  modes.push_back({Spatial::herald2, Temporal::matched, Polarization::H});
  return ModeRegistry(std::move(modes));
}

std::optional<std::size_t> ModeRegistry::find(const ModeLabel& label) const {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i] == label) return i;
  }
  return std::nullopt;
}

std::size_t ModeRegistry::index(const ModeLabel& label) const {
  if (auto i = find(label)) return *i;
  throw PreconditionError("mode " + to_string(label) + " is not registered");
}

PureState::PureState(ModeRegistry registry, Terms terms, StateOptions options)
    : registry_(std::move(registry)), options_(options) {
  if (options_.max_photons < 0) throw PreconditionError("max_photons must be non-negative");
  for (auto& [occ, amp] : terms) {
    if (occ.size() != registry_.size()) {
      throw PreconditionError(
          fmt::format("occupation has {} entries, registry has {} modes", occ.size(), registry_.size()));
    }
    for (int n : occ) {
      if (n < 0) throw PreconditionError("negative occupation number");
    }
    check_truncation(occ, options_.max_photons);
    if (std::abs(amp) >= options_.prune_threshold) terms_.emplace(occ, amp);
  }
}

PureState PureState::vacuum(ModeRegistry registry, StateOptions options) {
  Occupation zero(registry.size(), 0);
  Terms terms{{std::move(zero), Amplitude{1.0, 0.0}}};
  return PureState(std::move(registry), std::move(terms), options);
}

Amplitude PureState::amplitude(const Occupation& occupation) const {
  auto it = terms_.find(occupation);
  return it == terms_.end() ? Amplitude{} : it->second;
}

double PureState::norm() const {
  double sum = 0.0;
  for (const auto& [occ, amp] : terms_) sum += std::norm(amp);
  return std::sqrt(sum);
}

PureState PureState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw PreconditionError("cannot normalize the zero vector");
  return scaled(1.0 / n);
}

PureState PureState::scaled(Amplitude factor) const {
  Terms out;
  for (const auto& [occ, amp] : terms_) out.emplace(occ, amp * factor);
  return PureState(registry_, std::move(out), options_);
}

std::string PureState::to_text() const {
  std::string out;
  for (const auto& [occ, amp] : terms_) {
    // adding +0.0 folds negative zero so goldens stay sign-stable
    out += fmt::format("{:.17g} {:.17g} |", amp.real() + 0.0, amp.imag() + 0.0);
    for (int n : occ) out += fmt::format(" {}", n);
    out += '\n';
  }
  return out;
}

PureState PureState::from_text(ModeRegistry registry, std::string_view text, StateOptions options) {
  std::istringstream in{std::string(text)};
  in.imbue(std::locale::classic());
  Terms terms;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    row.imbue(std::locale::classic());
    double re = 0.0, im = 0.0;
    std::string bar;
    if (!(row >> re >> im >> bar) || bar != "|") {
      throw ValidationError(fmt::format("state text line {}: expected `re im | n...`", line_no));
    }
    Occupation occ;
    int n = 0;
    while (row >> n) occ.push_back(n);
    if (!row.eof()) throw ValidationError(fmt::format("state text line {}: bad occupation", line_no));
    accumulate(terms, occ, Amplitude{re, im});
  }
  return PureState(std::move(registry), std::move(terms), options);
}

PureState apply_creation(const PureState& state, const ModeLabel& mode, int power) {
  if (power < 1) throw PreconditionError("creation power must be positive");
  const std::size_t idx = state.registry().index(mode);
  Terms out;
  for (const auto& [occ, amp] : state.terms()) {
    Occupation raised = occ;
    double factor = 1.0;
    for (int k = 1; k <= power; ++k) factor *= std::sqrt(static_cast<double>(occ[idx] + k));
    raised[idx] += power;
    check_truncation(raised, state.options().max_photons);
    accumulate(out, raised, amp * factor);
  }
  return PureState(state.registry(), std::move(out), state.options());
}

PureState apply_linear_creation(const PureState& state,
                                std::span<const std::pair<ModeLabel, Amplitude>> combination) {
  std::vector<std::pair<std::size_t, Amplitude>> indexed;
  indexed.reserve(combination.size());
  for (const auto& [label, coeff] : combination) indexed.emplace_back(state.registry().index(label), coeff);
  return PureState(state.registry(), linear_creation(state.terms(), indexed, state.options().max_photons),
                   state.options());
}

PureState apply_beamsplitter(const PureState& state, SplitterPorts ports, double reflectivity) {
  if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
    throw PreconditionError("splitter reflectivity must lie in [0, 1]");
  }
  const ModeRegistry& reg = state.registry();
  const double r = std::sqrt(reflectivity);
  const double t = std::sqrt(1.0 - reflectivity);
  const Amplitude ir{0.0, r};

  Terms out;
  for (const auto& [occ, amp] : state.terms()) {
    Occupation spectators = occ;
    std::vector<std::pair<std::size_t, int>> inputs;
    for (std::size_t i = 0; i < reg.size(); ++i) {
      const Spatial s = reg[i].spatial;
      if ((s == ports.out1 || s == ports.out2) && occ[i] > 0) {
        throw PreconditionError("photons already present in splitter output mode " + to_string(reg[i]));
      }
      if ((s == ports.in1 || s == ports.in2) && occ[i] > 0) {
        inputs.emplace_back(i, occ[i]);
        spectators[i] = 0;
      }
    }

    Terms partial{{spectators, amp}};
    for (const auto& [i, n] : inputs) {
      ModeLabel to1 = reg[i];
      ModeLabel to2 = reg[i];
      to1.spatial = ports.out1;
      to2.spatial = ports.out2;
      const bool first = reg[i].spatial == ports.in1;
      const std::pair<std::size_t, Amplitude> combo[2] = {
          {reg.index(to1), first ? Amplitude{t} : ir},
          {reg.index(to2), first ? ir : Amplitude{t}},
      };
      for (int k = 0; k < n; ++k) partial = linear_creation(partial, combo, state.options().max_photons);
      const double inv = 1.0 / std::sqrt(factorial(n));
      for (auto& [o, a] : partial) a *= inv;
    }
    for (const auto& [o, a] : partial) accumulate(out, o, a);
  }
  return PureState(reg, std::move(out), state.options());
}

PureState relabel_spatial(const PureState& state, Spatial from, Spatial to) {
  if (from == to) return state;
  const ModeRegistry& reg = state.registry();
  std::vector<std::pair<std::size_t, std::size_t>> moves;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    if (reg[i].spatial != from) continue;
    ModeLabel target = reg[i];
    target.spatial = to;
    moves.emplace_back(i, reg.index(target));
  }
  Terms out;
  for (const auto& [occ, amp] : state.terms()) {
    Occupation moved = occ;
    for (const auto& [src, dst] : moves) {
      if (occ[dst] > 0) throw PreconditionError("relabel target mode " + to_string(reg[dst]) + " is occupied");
      moved[dst] = occ[src];
      moved[src] = 0;
    }
    accumulate(out, moved, amp);
  }
  return PureState(reg, std::move(out), state.options());
}

Grouping group_by_spatial(const ModeRegistry& registry, std::span<const Spatial> spatial) {
  Grouping groups;
  groups.reserve(spatial.size());
  for (Spatial s : spatial) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < registry.size(); ++i) {
      if (registry[i].spatial == s) members.push_back(i);
    }
    groups.push_back(std::move(members));
  }
  return groups;
}

PatternDistribution mode_probabilities(const PureState& state, const Grouping& grouping) {
  PatternDistribution dist;
  std::vector<int> pattern(grouping.size());
  for (const auto& [occ, amp] : state.terms()) {
    for (std::size_t g = 0; g < grouping.size(); ++g) {
      int n = 0;
      for (std::size_t idx : grouping[g]) n += occ.at(idx);
      pattern[g] = n;
    }
    dist[pattern] += std::norm(amp);
  }
  return dist;
}

}  // namespace hom::fock
