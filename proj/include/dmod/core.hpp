#pragma once

#include <gmpxx.h>

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace dmod {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational &q);
Rational parse_rational(const std::string &text);

/// Maximum number of exponent slots in one monomial (x's, d's and parameters).
inline constexpr std::size_t kMaxSlots = 16;

/// Exponent vector over a fixed slot layout.  The meaning of each slot is
/// owned by the context that created it.
struct Exponent {
  std::array<std::uint16_t, kMaxSlots> e{};

  std::uint16_t &operator[](std::size_t i) { return e[i]; }
  std::uint16_t operator[](std::size_t i) const { return e[i]; }

  unsigned total() const {
    unsigned s = 0;
    for (auto v : e) s += v;
    return s;
  }
  bool is_zero() const {
    for (auto v : e)
      if (v) return false;
    return true;
  }
  bool divides(const Exponent &o) const {
    for (std::size_t i = 0; i < kMaxSlots; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  Exponent operator+(const Exponent &o) const {
    Exponent r;
    for (std::size_t i = 0; i < kMaxSlots; ++i) r.e[i] = e[i] + o.e[i];
    return r;
  }
  /// Caller guarantees `o` divides `*this`.
  Exponent operator-(const Exponent &o) const {
    Exponent r;
    for (std::size_t i = 0; i < kMaxSlots; ++i) r.e[i] = e[i] - o.e[i];
    return r;
  }
  static Exponent lcm(const Exponent &a, const Exponent &b) {
    Exponent r;
    for (std::size_t i = 0; i < kMaxSlots; ++i) r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
    return r;
  }
  static Exponent unit(std::size_t slot, std::uint16_t power = 1) {
    Exponent r;
    r.e[slot] = power;
    return r;
  }
  friend bool operator==(const Exponent &, const Exponent &) = default;
};

struct ExponentHash {
  std::size_t operator()(const Exponent &x) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : x.e) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

/// Thrown by parsers; `position` is a 0-based character offset.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

class ContextMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a Groebner computation runs past its step or time allowance.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Step and wall-clock allowance shared by one top-level computation.
class Budget {
public:
  using Clock = std::chrono::steady_clock;

  Budget() = default;
  Budget(std::optional<double> seconds, std::optional<std::uint64_t> steps)
      : steps_left_(steps) {
    if (seconds)
      deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(*seconds));
  }
  static Budget unlimited() { return {}; }

  void charge(std::uint64_t steps = 1) {
    if (steps_left_) {
      if (*steps_left_ < steps) throw BudgetExceeded("groebner step budget exhausted");
      *steps_left_ -= steps;
    }
    if (deadline_ && (++ticks_ & 0x3f) == 0 && Clock::now() > *deadline_)
      throw BudgetExceeded("groebner time budget exhausted");
  }
  void check_time() const {
    if (deadline_ && Clock::now() > *deadline_)
      throw BudgetExceeded("groebner time budget exhausted");
  }

  /// Wall-clock cap applied to each Groebner basis call on top of the
  /// overall deadline.
  void set_per_call_seconds(std::optional<double> s) { per_call_ = s; }

private:
  friend class BudgetCallScope;
  std::optional<std::uint64_t> steps_left_;
  std::optional<Clock::time_point> deadline_;
  std::optional<double> per_call_;
  std::uint64_t ticks_ = 0;
};

/// Tightens the deadline of `b` by the per-call cap for its lifetime.
class BudgetCallScope {
public:
  explicit BudgetCallScope(Budget &b) : b_(b), saved_(b.deadline_) {
    if (b.per_call_) {
      auto d = Budget::Clock::now() + std::chrono::duration_cast<Budget::Clock::duration>(
                                          std::chrono::duration<double>(*b.per_call_));
      if (!b.deadline_ || d < *b.deadline_) b.deadline_ = d;
    }
  }
  ~BudgetCallScope() { b_.deadline_ = saved_; }
  BudgetCallScope(const BudgetCallScope &) = delete;
  BudgetCallScope &operator=(const BudgetCallScope &) = delete;

private:
  Budget &b_;
  std::optional<Budget::Clock::time_point> saved_;
};

} // namespace dmod
