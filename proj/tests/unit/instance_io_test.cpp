#include <gtest/gtest.h>

#include <sstream>

#include "tpacas/errors.hpp"
#include "tpacas/instance_io.hpp"

using namespace tpacas;
using namespace tpacas::io;

namespace {

InstanceFile parse(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(InstanceIo, ParsesTheExample) {
  const InstanceFile f = load_instance(TPACAS_TEST_DATA "/three_agents.yaml");
  EXPECT_EQ(f.items, 4u);
  EXPECT_EQ(f.seed, 7u);
  EXPECT_FALSE(f.precision.has_value());
  EXPECT_FALSE(f.bits.has_value());
  ASSERT_EQ(f.agents.size(), 3u);
  EXPECT_EQ(f.agents[1].name, "B");
  EXPECT_EQ(f.agents[1].valuation, 8);
  EXPECT_EQ(f.agents[1].bundle, (std::vector<unsigned>{2, 3}));
}

TEST(InstanceIo, OptionalFields) {
  const InstanceFile f = parse(
      "items: 3\nprecision: 4\nbits: 256\nagents:\n"
      "  - name: X\n    valuation: 123456789012345678901234567890\n    bundle: [1, 3]\n");
  EXPECT_EQ(f.precision, 4u);
  EXPECT_EQ(f.bits, 256u);
  EXPECT_EQ(f.agents[0].valuation, from_decimal("123456789012345678901234567890"));
}

TEST(InstanceIo, EmptyAgentListParses) {
  EXPECT_TRUE(parse("items: 3\nagents: []\n").agents.empty());
}

TEST(InstanceIo, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("items: 3\nagents:\n  - {name: A, valuation: 10, bundle: [1, 2]}\n"
                       "  - {name: B, valuation: lots, bundle: [2, 3]}\n"),
            4u);
  EXPECT_EQ(error_line("items: 3\ncolour: red\nagents: []\n"), 2u);
  EXPECT_EQ(error_line("items: 3\nagents:\n  - {name: A, valuation: 1, bundle: [1, 9]}\n"), 3u);
  EXPECT_EQ(error_line("items: 3\nagents:\n  - {name: A, bundle: [1, 2]}\n"), 3u);
  EXPECT_EQ(error_line("items: 3\nagents:\n  - {name: A, valuation: 1, bundle: [1, 2]}\n"
                       "  - {name: A, valuation: 2, bundle: [2, 3]}\n"),
            4u);
  EXPECT_GT(error_line("items: [\n"), 0u);
  EXPECT_THROW(parse("agents: []\n"), ParseError);
  EXPECT_THROW(parse("items: 0\nagents: []\n"), ParseError);
  EXPECT_THROW(load_instance("/nonexistent/instance.yaml"), ParseError);
}

TEST(InstanceIo, WriteThenParse) {
  InstanceFile f;
  f.items = 5;
  f.seed = 99;
  f.precision = 3;
  f.agents = {{"a1", 12, {1, 4}}, {"a2", 3, {2, 3, 5}}};
  std::ostringstream out;
  write_instance(out, f);
  const InstanceFile back = parse(out.str());
  EXPECT_EQ(back.items, f.items);
  EXPECT_EQ(back.seed, f.seed);
  EXPECT_EQ(back.precision, f.precision);
  ASSERT_EQ(back.agents.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back.agents[i].name, f.agents[i].name);
    EXPECT_EQ(back.agents[i].valuation, f.agents[i].valuation);
    EXPECT_EQ(back.agents[i].bundle, f.agents[i].bundle);
  }
}

TEST(InstanceIo, OracleConversions) {
  const std::vector<auction::AgentSpec> agents{{"A", 10, {1, 2}}, {"B", 8, {2, 3}}};
  const oracle::Instance inst = to_oracle(agents, 4);
  EXPECT_EQ(inst.items, 4u);
  EXPECT_EQ(inst.bids[1].bundle, (std::set<unsigned>{2, 3}));
  const auto back = to_agents(inst);
  EXPECT_EQ(back[0].name, "a1");
  EXPECT_EQ(back[1].valuation, 8);
}
