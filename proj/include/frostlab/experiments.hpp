#pragma once

#include <array>

#include "frostlab/fourier.hpp"
#include "frostlab/harness.hpp"
#include "frostlab/incidence.hpp"
#include "frostlab/parabola.hpp"
#include "frostlab/sumprod.hpp"

namespace frostlab {

// Named 1D set constructors used by experiment configs. kind: grid | cantor | ap | geometric.
// interval: unit (default, [0,1]) or half ([1/2,1]).
DiscreteSet1D make_set(const std::string& kind, Scale sc, double s, u64 seed,
                       const std::string& interval = "unit");

// Three Cantor subsets of pairwise separated intervals of [-1,1], lifted inputs for the
// trilinear energy experiments.
std::array<DiscreteSet1D, 3> trilinear_inputs(Scale sc, double s, u64 seed);

struct RunOutput {
    std::string name;  // file stem, e.g. "incidence.csv"
    std::string text;
};

struct RunResult {
    std::vector<RunOutput> outputs;
    std::vector<std::string> flags;  // resource-cap truncations etc.
};

// Dispatch on cfg.experiment in {incidence, heavy, energy, fourier, sumprod, projection}.
RunResult run_experiment(const ExperimentConfig& cfg);

TubeFamily family_from_config(const ExperimentConfig& cfg, Scale sc, u64 seed);

}  // namespace frostlab
