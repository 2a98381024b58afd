#pragma once

#include <stdexcept>
#include <string>

namespace fewn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The search bracket does not enclose a sign change.
class BracketError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A caller violated an operation's usage contract (e.g. a conjunction
/// analysis run without an a-priori direction).
class ContractError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Too few observations for the requested test.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// All differences identical: the t statistic is undefined.
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

}  // namespace fewn
