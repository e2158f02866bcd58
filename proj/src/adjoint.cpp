#include "smooth/adjoint.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "smooth/errors.hpp"

namespace smooth {

namespace {

void require_finite(double value, const char* op) {
  if (!std::isfinite(value)) throw NumericError(std::string(op) + " produced a non-finite value");
}

Tape* common_tape(const Active& a, const Active& b) {
  if (a.tape() && b.tape() && a.tape() != b.tape()) throw std::logic_error("operands recorded on different tapes");
  return a.tape() ? a.tape() : b.tape();
}

}  // namespace

Active Tape::push(double value, const Entry& entry) {
  if (entries_.size() >= max_entries_) {
    throw BudgetError("tape exceeded " + std::to_string(max_entries_) + " entries", 0, 0.0);
  }
  entries_.push_back(entry);
  return Active(value, this, static_cast<std::int64_t>(entries_.size() - 1));
}

Active Tape::variable(double value) {
  require_finite(value, "input");
  return push(value, Entry{});
}

Active Tape::record_unary(const Active& a, double value, double partial) {
  require_finite(value, "unary operation");
  if (!a.is_active()) return Active(value);
  return push(value, Entry{a.slot(), -1, partial, 0.0});
}

Active Tape::record_binary(const Active& a, const Active& b, double value, double partial_a, double partial_b) {
  require_finite(value, "binary operation");
  Entry e;
  if (a.tape() == this) {
    e.operand_a = a.slot();
    e.partial_a = partial_a;
  }
  if (b.tape() == this) {
    e.operand_b = b.slot();
    e.partial_b = partial_b;
  }
  if (e.operand_a < 0 && e.operand_b < 0) return Active(value);
  return push(value, e);
}

const std::vector<double>& Tape::interpret(std::span<const Seed> seeds) {
  if (interpreted_) throw std::logic_error("tape already interpreted; call reset_adjoints() first");
  adjoints_.assign(entries_.size(), 0.0);
  for (const auto& seed : seeds) {
    if (!seed.output.is_active()) continue;
    if (seed.output.tape() != this) throw std::logic_error("seed refers to a different tape");
    adjoints_[static_cast<std::size_t>(seed.output.slot())] += seed.adjoint;
  }
  for (std::size_t i = entries_.size(); i-- > 0;) {
    const double bar = adjoints_[i];
    if (bar == 0.0) continue;
    const Entry& e = entries_[i];
    if (e.operand_a >= 0) adjoints_[static_cast<std::size_t>(e.operand_a)] += bar * e.partial_a;
    if (e.operand_b >= 0) adjoints_[static_cast<std::size_t>(e.operand_b)] += bar * e.partial_b;
  }
  interpreted_ = true;
  return adjoints_;
}

void Tape::reset_adjoints() {
  adjoints_.clear();
  interpreted_ = false;
}

double Tape::adjoint(const Active& x) const {
  if (!x.is_active()) return 0.0;
  if (x.tape() != this) throw std::logic_error("adjoint requested for a slot of a different tape");
  if (!interpreted_) throw std::logic_error("tape has not been interpreted");
  return adjoints_[static_cast<std::size_t>(x.slot())];
}

Active record_binary(BinaryOp op, const Active& a, const Active& b) {
  const double x = a.value();
  const double y = b.value();
  double value = 0.0;
  double da = 0.0;
  double db = 0.0;
  switch (op) {
    case BinaryOp::Add:
      value = x + y;
      da = 1.0;
      db = 1.0;
      break;
    case BinaryOp::Sub:
      value = x - y;
      da = 1.0;
      db = -1.0;
      break;
    case BinaryOp::Mul:
      value = x * y;
      da = y;
      db = x;
      break;
    case BinaryOp::Div:
      if (y == 0.0) throw NumericError("division by zero");
      value = x / y;
      da = 1.0 / y;
      db = -x / (y * y);
      break;
    case BinaryOp::Pow:
      if (x < 0.0 && y != std::floor(y)) throw NumericError("pow of negative base with non-integer exponent");
      if (b.is_active() && x <= 0.0) throw NumericError("pow with active exponent requires a positive base");
      value = std::pow(x, y);
      da = y == 0.0 ? 0.0 : y * std::pow(x, y - 1.0);
      db = b.is_active() ? value * std::log(x) : 0.0;
      break;
  }
  Tape* tape = common_tape(a, b);
  if (!tape) {
    require_finite(value, "binary operation");
    return Active(value);
  }
  return tape->record_binary(a, b, value, da, db);
}

Active record_unary(UnaryOp op, const Active& a) {
  const double x = a.value();
  double value = 0.0;
  double d = 0.0;
  switch (op) {
    case UnaryOp::Neg:
      value = -x;
      d = -1.0;
      break;
    case UnaryOp::Exp:
      value = std::exp(x);
      d = value;
      break;
    case UnaryOp::Log:
      if (!(x > 0.0)) throw NumericError("log of non-positive value");
      value = std::log(x);
      d = 1.0 / x;
      break;
    case UnaryOp::Sqrt:
      if (x < 0.0) throw NumericError("sqrt of negative value");
      value = std::sqrt(x);
      if (value == 0.0 && a.is_active()) throw NumericError("sqrt is not differentiable at 0");
      d = value == 0.0 ? 0.0 : 0.5 / value;
      break;
  }
  if (!a.is_active()) {
    require_finite(value, "unary operation");
    return Active(value);
  }
  return a.tape()->record_unary(a, value, d);
}

Active lift(const Active& x, double value, double derivative) {
  if (!x.is_active()) {
    require_finite(value, "elementary function");
    return Active(value);
  }
  return x.tape()->record_unary(x, value, derivative);
}

Active& Active::operator+=(const Active& rhs) { return *this = *this + rhs; }
Active& Active::operator-=(const Active& rhs) { return *this = *this - rhs; }
Active& Active::operator*=(const Active& rhs) { return *this = *this * rhs; }
Active& Active::operator/=(const Active& rhs) { return *this = *this / rhs; }

}  // namespace smooth
