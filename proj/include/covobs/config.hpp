#pragma once

#include <cstdint>
#include <string>

#include "covobs/errors.hpp"
#include "covobs/povm.hpp"

namespace covobs {

/// Run-wide knobs shared by the CLI subcommands.
struct RunConfig {
  double tolerance = 1e-9;  // overrides the verification tolerance
  std::uint64_t seed = 0;
  std::string format = "csv";  // csv | json
  int oracle_bound = 16;
  std::string out;  // empty = stdout

  void validate() const {
    if (!(tolerance > 0.0 && tolerance < 1e-3))
      throw SchemaError("tolerance must lie in (0, 1e-3)");
    if (oracle_bound < 1 || oracle_bound > 64)
      throw SchemaError("oracle bound must lie in [1, 64]");
    if (format != "csv" && format != "json")
      throw SchemaError("format must be csv or json");
  }

  Tolerances tolerances() const {
    Tolerances t;
    t.verify = tolerance;
    return t;
  }
};

}  // namespace covobs
