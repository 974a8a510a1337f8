#pragma once

#include <array>
#include <numbers>

namespace trapqm::constants {

inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double amu = 1.66053906660e-27;  // kg

// Default trap of the caesium reproduction table.
inline constexpr double cs_mass_amu = 133.0;
inline constexpr double cs_omega = 20.0 * std::numbers::pi;  // rad/s
inline constexpr double cs_scattering_length = 3e-9;         // m

inline constexpr std::array<long, 13> table1_atom_counts = {200,   600,   1000,  2000,  4000,  6000, 8000,
                                                            10000, 12000, 14000, 16000, 18000, 20000};

}  // namespace trapqm::constants
