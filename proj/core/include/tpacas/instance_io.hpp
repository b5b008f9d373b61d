#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tpacas/auction.hpp"
#include "tpacas/oracle.hpp"

namespace tpacas::io {

/// An auction instance as written by hand:
///
///   items: 4
///   seed: 7          # optional
///   precision: 2     # optional
///   bits: 256        # optional, size of p
///   agents:
///     - {name: A, valuation: 10, bundle: [1, 2]}
struct InstanceFile {
  unsigned items = 0;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> precision;
  std::optional<unsigned> bits;
  std::vector<auction::AgentSpec> agents;
};

/// Throws ParseError carrying the offending line.
InstanceFile parse_instance(std::istream& in);
InstanceFile load_instance(const std::string& path);

void write_instance(std::ostream& out, const InstanceFile& instance);

/// The same bids in the reference solver's form.
oracle::Instance to_oracle(const std::vector<auction::AgentSpec>& agents, unsigned items);

/// Agents named "a1", "a2", ... for a generated instance.
std::vector<auction::AgentSpec> to_agents(const oracle::Instance& instance);

}  // namespace tpacas::io
