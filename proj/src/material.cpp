#include "nanowave/material.hpp"

#include <stdexcept>

#include "nanowave/config.hpp"
#include "nanowave/errors.hpp"

namespace nanowave {

double Material::cm_factor() const {
  return (rel_permittivity - 1.0) / (rel_permittivity + 2.0);
}

const Material& fused_silica() {
  // eps at ~200 nm (n ~ 1.55); density of bulk fused silica.
  static const Material m{"fused_silica", 2200.0, 2.4};
  return m;
}

const Material& hafnia() {
  // eps for HfO2 films near 1064 nm (n ~ 2.1).
  static const Material m{"hafnia", 9700.0, 4.4};
  return m;
}

const Material& builtin_material(const std::string& name) {
  if (name == "fused_silica") return fused_silica();
  if (name == "hafnia") return hafnia();
  throw std::invalid_argument("unknown built-in material: " + name);
}

std::vector<Material> load_materials(const std::string& path) {
  KeyValueFile file = KeyValueFile::parse_file(path);
  std::vector<Material> out;
  for (const ConfigSection* s : file.all("material")) {
    Material m;
    m.name = s->text("name");
    m.density = s->number_in("density", "kg/m^3");
    m.rel_permittivity = s->number("rel_permittivity");
    if (m.density <= 0.0)
      throw parse_error(path, s->line, "material density must be positive");
    if (m.rel_permittivity <= 1.0)
      throw parse_error(path, s->line, "rel_permittivity must exceed 1 for a dielectric");
    out.push_back(std::move(m));
  }
  return out;
}

Material resolve_material(const std::vector<Material>& loaded, const std::string& name) {
  for (const auto& m : loaded)
    if (m.name == name) return m;
  return builtin_material(name);
}

}  // namespace nanowave
