#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace penmean {

/// Orders closer to zero than this are evaluated on the logarithmic branch.
inline constexpr double kZeroOrderEps = 1e-8;

/// Exponent of a power mean: a finite real, or one of the distinguished
/// values zero (geometric branch), -inf (minimum) and +inf (maximum).
///
/// Construction canonicalizes, so two Orders compare equal exactly when they
/// select the same formula with the same exponent.
class Order {
public:
  enum class Kind { NegInf, Zero, Finite, PosInf };

  /// Defaults to the arithmetic mean.
  constexpr Order() = default;

  /// Throws DomainError for NaN. Infinite doubles map to NegInf/PosInf.
  static Order of(double p);
  static constexpr Order zero() { return Order(Kind::Zero, 0.0); }
  static Order neg_inf();
  static Order pos_inf();

  /// Accepts decimal numbers and the tokens "-inf", "+inf", "inf".
  /// Throws ConfigError on anything else.
  static Order parse(std::string_view token);

  constexpr Kind kind() const noexcept { return kind_; }

  /// Exponent as a double: 0 for Zero, +/-infinity for the extremes.
  double value() const noexcept;

  constexpr bool is_zero() const noexcept { return kind_ == Kind::Zero; }
  constexpr bool is_infinite() const noexcept {
    return kind_ == Kind::NegInf || kind_ == Kind::PosInf;
  }
  /// True for finite orders and Zero.
  constexpr bool is_finite() const noexcept { return !is_infinite(); }
  constexpr bool is_one() const noexcept { return kind_ == Kind::Finite && p_ == 1.0; }

  /// Short label used in column names: "1", "0.5", "0", "-inf", "+inf".
  std::string label() const;

  friend bool operator==(const Order& a, const Order& b) noexcept {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }
  friend std::partial_ordering operator<=>(const Order& a, const Order& b) noexcept {
    return a.value() <=> b.value();
  }

private:
  constexpr Order(Kind k, double p) : kind_(k), p_(p) {}

  Kind kind_ = Kind::Finite;
  double p_ = 1.0;
};

}  // namespace penmean
