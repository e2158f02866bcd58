#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smooth/scalar.hpp"

namespace smooth {

class Tape;

/// Scalar that records every elementary operation on a Tape. Constants
/// (including values converted from double) carry no tape handle.
///
/// No ordering operators are provided: comparisons must go through the
/// smoothing logic so that every branch is interpolated.
class Active {
 public:
  Active() noexcept = default;
  Active(double value) noexcept : value_(value) {}  // NOLINT: implicit constant

  double value() const noexcept { return value_; }
  bool is_active() const noexcept { return tape_ != nullptr; }
  std::int64_t slot() const noexcept { return slot_; }
  Tape* tape() const noexcept { return tape_; }

  Active& operator+=(const Active& rhs);
  Active& operator-=(const Active& rhs);
  Active& operator*=(const Active& rhs);
  Active& operator/=(const Active& rhs);

 private:
  friend class Tape;
  Active(double value, Tape* tape, std::int64_t slot) noexcept : value_(value), tape_(tape), slot_(slot) {}

  double value_ = 0.0;
  Tape* tape_ = nullptr;
  std::int64_t slot_ = -1;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class UnaryOp { Neg, Exp, Log, Sqrt };

struct Seed {
  Active output;
  double adjoint = 1.0;
};

/// Append-only record of elementary operations with their local partials.
/// Operands always precede results, so one reverse sweep accumulates all
/// adjoints.
class Tape {
 public:
  static constexpr std::size_t kDefaultMaxEntries = 100'000'000;

  explicit Tape(std::size_t max_entries = kDefaultMaxEntries) : max_entries_(max_entries) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Registers an independent input.
  Active variable(double value);

  /// Records an elementary function of one operand whose value and partial
  /// are already known.
  Active record_unary(const Active& a, double value, double partial);
  Active record_binary(const Active& a, const Active& b, double value, double partial_a, double partial_b);

  /// Reverse sweep. Seeds must refer to slots on this tape. A second call
  /// without reset_adjoints() throws std::logic_error.
  const std::vector<double>& interpret(std::span<const Seed> seeds);
  void reset_adjoints();

  /// Adjoint of a slot after interpret(); 0 for constants.
  double adjoint(const Active& x) const;
  const std::vector<double>& adjoints() const noexcept { return adjoints_; }

  std::size_t size() const noexcept { return entries_.size(); }
  bool interpreted() const noexcept { return interpreted_; }

  struct Entry {
    std::int64_t operand_a = -1;
    std::int64_t operand_b = -1;
    double partial_a = 0.0;
    double partial_b = 0.0;
  };
  std::span<const Entry> entries() const noexcept { return entries_; }

 private:
  Active push(double value, const Entry& entry);

  std::vector<Entry> entries_;
  std::vector<double> adjoints_;
  std::size_t max_entries_;
  bool interpreted_ = false;
};

Active record_binary(BinaryOp op, const Active& a, const Active& b);
Active record_unary(UnaryOp op, const Active& a);

inline double primal(const Active& x) noexcept { return x.value(); }
Active lift(const Active& x, double value, double derivative);

inline Active operator+(const Active& a, const Active& b) { return record_binary(BinaryOp::Add, a, b); }
inline Active operator-(const Active& a, const Active& b) { return record_binary(BinaryOp::Sub, a, b); }
inline Active operator*(const Active& a, const Active& b) { return record_binary(BinaryOp::Mul, a, b); }
inline Active operator/(const Active& a, const Active& b) { return record_binary(BinaryOp::Div, a, b); }
inline Active operator+(const Active& a) { return a; }
inline Active operator-(const Active& a) { return record_unary(UnaryOp::Neg, a); }

inline Active pow(const Active& a, const Active& b) { return record_binary(BinaryOp::Pow, a, b); }
inline Active exp(const Active& a) { return record_unary(UnaryOp::Exp, a); }
inline Active log(const Active& a) { return record_unary(UnaryOp::Log, a); }
inline Active sqrt(const Active& a) { return record_unary(UnaryOp::Sqrt, a); }

}  // namespace smooth
