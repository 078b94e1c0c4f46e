#include "yigbell/thermal.hpp"

namespace yigbell {

double free_space_impedance() {
  return std::sqrt(Constants::vacuum_permeability_mu0 / Constants::vacuum_permittivity_eps0);
}

namespace core {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::RayleighJeans:
      return "rayleigh-jeans";
    case Regime::Quantum:
      return "quantum";
    case Regime::Boundary:
      return "boundary";
  }
  return "unknown";
}

}  // namespace core
}  // namespace yigbell
