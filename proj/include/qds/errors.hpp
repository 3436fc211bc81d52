#pragma once

#include <stdexcept>
#include <string>

namespace qds {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A qandy handle was used after it had been measured or transferred.
class AlreadyConsumed : public Error {
 public:
  AlreadyConsumed() : Error("qandy handle already consumed") {}
};

class PadExhausted : public Error {
 public:
  PadExhausted(std::size_t wanted, std::size_t left)
      : Error("one-time pad exhausted: wanted " + std::to_string(wanted) +
              " bits, " + std::to_string(left) + " left") {}
};

class KeyAlreadyUsed : public Error {
 public:
  KeyAlreadyUsed() : Error("one-time signing key already used") {}
};

/// Rejected configuration (threshold ordering, odd key length, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A TEST had no matching-basis samples to estimate the noise rate from.
class InsufficientSample : public Error {
 public:
  InsufficientSample() : Error("TEST sample contains no matching-basis records") {}
};

class QkdAbort : public Error {
 public:
  explicit QkdAbort(double qber)
      : Error("QKD aborted: estimated QBER " + std::to_string(qber)), qber_(qber) {}
  double qber() const noexcept { return qber_; }

 private:
  double qber_;
};

class KeyTooShort : public Error {
 public:
  using Error::Error;
};

class BudgetOutOfRange : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class InvalidGap : public Error {
 public:
  using Error::Error;
};

}  // namespace qds
