#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace penmean {

// All library failures derive from Error so callers can catch once.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of the transform or mean for the given order.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Operation has no branch for the requested order (e.g. Box-Cox at +/-inf).
class UnsupportedOrder : public Error {
public:
  using Error::Error;
};

class EmptyVector : public Error {
public:
  EmptyVector() : Error("indicator vector is empty") {}
};

/// 1 +/- p * scaled_variance <= 0, so the penalization factor is undefined.
class PenaltyDomainError : public Error {
public:
  PenaltyDomainError(double order, double scaled_variance);

  double order() const noexcept { return order_; }
  double scaled_variance() const noexcept { return scaled_variance_; }

private:
  double order_;
  double scaled_variance_;
};

/// A mean that must be divided by evaluated to zero.
class DegenerateMean : public Error {
public:
  using Error::Error;
};

class IndexError : public Error {
public:
  using Error::Error;
};

class BracketError : public Error {
public:
  using Error::Error;
};

class DegenerateIndicator : public Error {
public:
  DegenerateIndicator(std::size_t indicator, const std::string& name);
  std::size_t indicator() const noexcept { return indicator_; }

private:
  std::size_t indicator_;
};

class PositivityError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

/// Input file problem. Rows and columns are 1-based file coordinates.
class ParseError : public Error {
public:
  ParseError(std::size_t row, std::size_t column, const std::string& what);
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t row_;
  std::size_t column_;
};

class MissingCell : public ParseError {
public:
  MissingCell(std::size_t row, std::size_t column, const std::string& indicator);
};

class DuplicateUnitId : public Error {
public:
  explicit DuplicateUnitId(const std::string& id);
};

}  // namespace penmean
