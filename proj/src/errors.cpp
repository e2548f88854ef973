#include "scalocal/errors.hpp"

#include <cmath>

namespace scalocal {

UnsupportedRank::UnsupportedRank(double q)
    : Error("unsupported rank q=" + std::to_string(q) +
            " (require q >= 0 and q != 1)"),
      rank_(q) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

void validate_rank(double q) {
  if (!std::isfinite(q) || q < 0.0 || q == 1.0) throw UnsupportedRank(q);
}

}  // namespace scalocal
