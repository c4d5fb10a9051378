#include "penmean/order.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "penmean/errors.hpp"

namespace penmean {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}
}  // namespace

Order Order::of(double p) {
  if (std::isnan(p)) throw DomainError("order must not be NaN");
  if (p == kInf) return pos_inf();
  if (p == -kInf) return neg_inf();
  if (std::abs(p) < kZeroOrderEps) return zero();
  return Order(Kind::Finite, p);
}

Order Order::neg_inf() { return Order(Kind::NegInf, -kInf); }
Order Order::pos_inf() { return Order(Kind::PosInf, kInf); }

Order Order::parse(std::string_view token) {
  token = trim(token);
  if (token == "-inf") return neg_inf();
  if (token == "+inf" || token == "inf") return pos_inf();
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double p = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), p);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() ||
      !std::isfinite(p)) {
    throw ConfigError("invalid order token '" + std::string(token) + "'");
  }
  return of(p);
}

double Order::value() const noexcept {
  switch (kind_) {
    case Kind::NegInf: return -kInf;
    case Kind::PosInf: return kInf;
    case Kind::Zero: return 0.0;
    case Kind::Finite: break;
  }
  return p_;
}

std::string Order::label() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    case Kind::Zero: return "0";
    case Kind::Finite: break;
  }
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, p_);
  return std::string(buf, res.ptr);
}

}  // namespace penmean
