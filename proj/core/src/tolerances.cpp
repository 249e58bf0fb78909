#include "hjnet/tolerances.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "hjnet/error.hpp"

namespace hjnet {

std::vector<std::pair<std::string, double>> Tolerances::entries() const {
  return {
      {"tol_a", level},
      {"tol_p", momentum},
      {"tol_H", hamiltonian},
      {"tol_q", quadrature},
      {"tol_zero", zero},
      {"tol_branch", branch},
      {"grid", static_cast<double>(grid)},
      {"max_cells", static_cast<double>(max_cells)},
      {"enumeration_cap", static_cast<double>(enumeration_cap)},
  };
}

void Tolerances::set(const std::string& name, double value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ValidationError("tolerance '" + name + "' must be a positive finite number");
  }
  if (name == "tol_a") {
    level = value;
  } else if (name == "tol_p") {
    momentum = value;
  } else if (name == "tol_H") {
    hamiltonian = value;
  } else if (name == "tol_q") {
    quadrature = value;
  } else if (name == "tol_zero") {
    zero = value;
  } else if (name == "tol_branch") {
    branch = value;
  } else if (name == "grid" || name == "max_cells" || name == "enumeration_cap") {
    if (value != std::floor(value) || value < 3.0) {
      throw ValidationError("'" + name + "' must be an integer >= 3");
    }
    auto n = static_cast<std::size_t>(value);
    if (name == "grid") {
      if (n % 2 == 0) throw ValidationError("'grid' must be odd (Simpson pairs)");
      grid = n;
    } else if (name == "max_cells") {
      max_cells = n;
    } else {
      enumeration_cap = n;
    }
  } else {
    throw ValidationError("unknown tolerance '" + name + "'");
  }
}

Tolerances Tolerances::with_environment() const {
  Tolerances out = *this;
  for (const auto& [name, current] : entries()) {
    std::string env = "HJNET_";
    if (name.rfind("tol_", 0) == 0) {
      env += "TOL_";
      for (char c : name.substr(4)) env += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    } else {
      env += "TOL_";
      for (char c : name) env += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    const char* raw = std::getenv(env.c_str());
    if (raw == nullptr) continue;
    char* end = nullptr;
    double value = std::strtod(raw, &end);
    if (end == raw || *end != '\0') {
      throw ValidationError("environment variable " + env + " is not a number: '" + raw + "'");
    }
    out.set(name, value);
  }
  return out;
}

}  // namespace hjnet
