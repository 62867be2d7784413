#pragma once

#include <numbers>

namespace nanowave::constants {

// SI defining constants (2019 redefinition; h, k_B, c are exact).
inline constexpr double pi = std::numbers::pi;
inline constexpr double h = 6.62607015e-34;          // J s
inline constexpr double hbar = h / (2.0 * pi);       // J s
inline constexpr double k_B = 1.380649e-23;          // J/K
inline constexpr double c = 299792458.0;             // m/s
inline constexpr double eps0 = 8.8541878128e-12;     // F/m

// CODATA 2018 mass units.
inline constexpr double amu = 1.66053906660e-27;     // kg
inline constexpr double m_proton = 1.67262192369e-27; // kg

inline constexpr double year = 365.25 * 86400.0;     // s (Julian year)

}  // namespace nanowave::constants

namespace nanowave {

// I/O-boundary conversions. Everything internal is SI.
inline constexpr double amu_to_kg(double m_amu) { return m_amu * constants::amu; }
inline constexpr double kg_to_amu(double m_kg) { return m_kg / constants::amu; }

}  // namespace nanowave
