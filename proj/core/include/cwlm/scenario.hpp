#pragma once

#include <array>
#include <string>

#include "cwlm/detector.hpp"
#include "cwlm/qubit.hpp"

namespace cwlm {

/// Which master equation generates the dynamics.
enum class EquationKind {
    Ideal,         // all decoherence from detector back action, D[O_i] with rate S_QQ^(i,i)
    Experimental,  // environmental D[sigma_z], D[sigma_+/-] with rates gamma_d, gamma_up, gamma_down
};

const char* to_string(EquationKind k);

/// Environmental rates of the experimental equation (unused for Ideal).
struct DissipationRates {
    double gamma_d = 0.0;
    double gamma_up = 0.0;
    double gamma_down = 0.0;
};

/// Complete measurement configuration consumed by the evolution engine:
/// correlators, Hamiltonian, dissipation rates, and the Pauli axis each
/// detector couples to (sigma_x and sigma_y by default).
struct ScenarioConfig {
    std::string name = "custom";
    EquationKind kind = EquationKind::Ideal;
    DetectorCorrelators correlators;
    HamiltonianParams hamiltonian;
    DissipationRates rates;
    std::array<Axis, 2> axes{Axis::X, Axis::Y};

    DerivedDetectorQuantities derived() const { return derived_quantities(correlators); }
};

enum class ScenarioTag { Ideal, Experimental, ExperimentalDetuned };

ScenarioTag scenario_tag_from_string(const std::string& s);

/// Built-in presets.
///
/// ideal:                identical independent detectors at the Cauchy-Schwarz
///                       bound (K = gamma_i t_a = 1): S_QQ = S_VV = 1, a_VQ = 2,
///                       t_a = 1, H = (Omega/2) sigma_x with Omega = 1.
/// experimental:         resonance-fluorescence rates gamma_down = 1/22.5,
///                       gamma_up = 1/56, gamma_d = 1/15.6 [1/us], measurement
///                       rate 2/t_a = 1/92 [1/us] (t_a = 184 us, gamma_d t_a ~ 11.8).
/// experimental_detuned: same with detuning Delta = 1.7 Omega, the value that
///                       maximizes the stationary <sigma_x>.
ScenarioConfig scenario(ScenarioTag tag);

/// Rabi frequency of the experimental presets [1/us]. Fixed by requiring that
/// the <sigma_x>-maximizing detuning of the stationary state equals 1.7 Omega
/// for the preset rates.
double experimental_rabi_frequency();

} // namespace cwlm
