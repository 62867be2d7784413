#pragma once

#include <string>
#include <vector>

namespace nanowave {

// Bulk optical material for the test particles. rel_permittivity is the value
// at the working optical wavelength; it comes from config, not from code.
struct Material {
  std::string name;
  double density;           // kg/m^3
  double rel_permittivity;  // dimensionless, > 1 for dielectrics

  // Clausius-Mossotti factor (eps-1)/(eps+2).
  double cm_factor() const;
};

// Built-ins mirrored by data/materials.cfg.
const Material& fused_silica();
const Material& hafnia();

// Lookup among built-ins; throws std::invalid_argument for unknown names.
const Material& builtin_material(const std::string& name);

// Load [material] sections from a key-value config file.
std::vector<Material> load_materials(const std::string& path);

// Pick a material by name from a loaded list, falling back to built-ins.
Material resolve_material(const std::vector<Material>& loaded, const std::string& name);

}  // namespace nanowave
