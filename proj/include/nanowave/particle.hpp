#pragma once

#include "nanowave/material.hpp"

namespace nanowave {

// Homogeneous spherical test particle. "Size" always means radius here.
struct Particle {
  double radius;  // m
  Material material;

  Particle(double radius_m, Material mat);

  double mass() const;            // kg
  double mass_amu() const;        // amu
  // Rayleigh-regime static polarizability, 4 pi eps0 r^3 (eps-1)/(eps+2).
  double polarizability() const;  // F m^2 (SI alpha, no 1/4pi-eps0 folded in)
};

// Inverse of Particle::mass at fixed material.
Particle particle_from_mass(double mass_kg, const Material& mat);
Particle particle_from_mass_amu(double mass_amu, const Material& mat);

}  // namespace nanowave
