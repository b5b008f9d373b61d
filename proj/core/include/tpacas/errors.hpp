#pragma once

#include <stdexcept>
#include <string>

namespace tpacas {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value lies outside the domain an operation accepts.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Group parameters failed validation or could not be generated.
class InvalidGroup : public Error {
 public:
  using Error::Error;
};

/// A party was asked to act on state it does not hold.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// A message names an endpoint that is not registered on the net.
class RoutingError : public Error {
 public:
  using Error::Error;
};

class SetupError : public Error {
 public:
  using Error::Error;
};

/// Input text could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A bid failed a local check and was never published.
class BidRejected : public Error {
 public:
  BidRejected(std::string agent, const std::string& why)
      : Error("bid of " + agent + " rejected: " + why), agent_(std::move(agent)) {}

  const std::string& agent() const noexcept { return agent_; }

 private:
  std::string agent_;
};

/// An auction stopped because a comparison proof or an opening did not check
/// out. `culprit()` names the comparison tag or the agent.
class AuctionAborted : public Error {
 public:
  AuctionAborted(std::string culprit, const std::string& why)
      : Error(why + " (" + culprit + ")"), culprit_(std::move(culprit)) {}

  const std::string& culprit() const noexcept { return culprit_; }

 private:
  std::string culprit_;
};

}  // namespace tpacas
