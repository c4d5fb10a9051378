#include "penmean/errors.hpp"

#include <sstream>

namespace penmean {

PenaltyDomainError::PenaltyDomainError(double order, double scaled_variance)
    : Error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "penalty undefined: 1 +/- p*S~^2 <= 0 (p=" << order
           << ", S~^2=" << scaled_variance << ")";
        return os.str();
      }()),
      order_(order),
      scaled_variance_(scaled_variance) {}

DegenerateIndicator::DegenerateIndicator(std::size_t indicator, const std::string& name)
    : Error("indicator '" + name + "' has max == min; min-max scaling is undefined"),
      indicator_(indicator) {}

ParseError::ParseError(std::size_t row, std::size_t column, const std::string& what)
    : Error("row " + std::to_string(row) + ", column " + std::to_string(column) + ": " +
            what),
      row_(row),
      column_(column) {}

MissingCell::MissingCell(std::size_t row, std::size_t column, const std::string& indicator)
    : ParseError(row, column, "missing value for '" + indicator + "'") {}

DuplicateUnitId::DuplicateUnitId(const std::string& id)
    : Error("duplicate unit id '" + id + "'") {}

}  // namespace penmean
