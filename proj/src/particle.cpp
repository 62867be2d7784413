#include "nanowave/particle.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "nanowave/constants.hpp"

namespace nanowave {

Particle::Particle(double radius_m, Material mat) : radius(radius_m), material(std::move(mat)) {
  if (!(radius > 0.0)) throw std::domain_error("particle radius must be positive");
  if (material.density <= 0.0) throw std::domain_error("material density must be positive");
}

double Particle::mass() const {
  return 4.0 / 3.0 * constants::pi * radius * radius * radius * material.density;
}

double Particle::mass_amu() const { return kg_to_amu(mass()); }

double Particle::polarizability() const {
  double r3 = radius * radius * radius;
  return 4.0 * constants::pi * constants::eps0 * r3 * material.cm_factor();
}

Particle particle_from_mass(double mass_kg, const Material& mat) {
  if (!(mass_kg > 0.0)) throw std::domain_error("particle mass must be positive");
  double r = std::cbrt(3.0 * mass_kg / (4.0 * constants::pi * mat.density));
  return Particle(r, mat);
}

Particle particle_from_mass_amu(double mass_amu, const Material& mat) {
  return particle_from_mass(amu_to_kg(mass_amu), mat);
}

}  // namespace nanowave
