#include <gtest/gtest.h>

#include <sstream>

#include "tpacas/errors.hpp"
#include "tpacas/simnet.hpp"

using namespace tpacas;
using namespace tpacas::net;

namespace {

Net two_party_net() {
  Net net;
  net.register_endpoint("alice");
  net.register_endpoint("bob");
  return net;
}

Message msg(std::string step, Payload payload, PayloadClass cls = PayloadClass::kSum) {
  return Message{0, "alice", "bob", std::move(step), cls, std::move(payload)};
}

}  // namespace

TEST(Simnet, SendThenReceiveIsIdentity) {
  Net net = two_party_net();
  net.send(msg("v", {{"X", 300}, {"Y", 299}}));
  const Message m = net.receive("bob");
  EXPECT_EQ(m.payload, (Payload{{"X", 300}, {"Y", 299}}));
  EXPECT_EQ(m.from, "alice");
  EXPECT_EQ(net.log().size(), 1u);
  EXPECT_FALSE(net.log()[0].tampered);
}

TEST(Simnet, DeliveryIsFifoWithIncreasingSeq) {
  Net net = two_party_net();
  for (int i = 0; i < 5; ++i) net.send(msg("v", {{"n", i}}));
  for (int i = 0; i < 5; ++i) EXPECT_EQ(field(net.receive("bob").payload, "n"), i);
  for (std::size_t i = 1; i < net.log().size(); ++i) {
    EXPECT_LT(net.log()[i - 1].message.seq, net.log()[i].message.seq);
  }
}

TEST(Simnet, UnregisteredEndpointIsARoutingError) {
  Net net = two_party_net();
  Message m = msg("v", {});
  m.to = "carol";
  EXPECT_THROW(net.send(m), RoutingError);
  EXPECT_TRUE(net.log().empty());
  EXPECT_THROW(net.receive("carol"), RoutingError);
}

TEST(Simnet, EmptyMailboxAndWrongStep) {
  Net net = two_party_net();
  EXPECT_THROW(net.receive("bob"), ProtocolError);
  net.send(msg("iv", {}));
  EXPECT_THROW(net.receive("bob", "v", "alice"), ProtocolError);
}

TEST(Simnet, HookMutatesDeliveryAndLogsBoth) {
  Net net = two_party_net();
  net.add_hook({"flip-x", [](const Message& m) { return m.step == "v"; },
                [](Payload& p) { p[0].value += 1; }});
  net.send(msg("v", {{"X", 300}}));
  net.send(msg("v", {{"X", 300}}));
  EXPECT_EQ(field(net.receive("bob").payload, "X"), 301);
  EXPECT_EQ(field(net.receive("bob").payload, "X"), 300);  // fires once
  ASSERT_TRUE(net.log()[0].tampered);
  EXPECT_EQ(field(net.log()[0].message.payload, "X"), 300);
  EXPECT_EQ(field(net.log()[0].delivered(), "X"), 301);
  EXPECT_EQ(net.log()[0].hook, "flip-x");
  EXPECT_TRUE(net.hooks()[0].fired);
}

TEST(Simnet, StepAllowancesAreEnforced) {
  Net net = two_party_net();
  net.allow("v", {PayloadClass::kSum});
  EXPECT_NO_THROW(net.send(msg("v", {})));
  EXPECT_THROW(net.send(msg("v", {}, PayloadClass::kShare)), ProtocolError);
  EXPECT_THROW(net.send(msg("unknown", {})), ProtocolError);
}

TEST(Simnet, AuditMergesReceivedViews) {
  Net net;
  for (const char* n : {"a", "b", "c"}) net.register_endpoint(n);
  net.send(Message{0, "a", "b", "s", PayloadClass::kShare, {{"u", 1}}});
  net.send(Message{0, "a", "c", "s", PayloadClass::kShare, {{"v", 2}}});
  net.send(Message{0, "b", "a", "s", PayloadClass::kSum, {{"w", 3}}});
  EXPECT_EQ(audit_views(net.log(), {"b"}).labels(), (std::set<std::string>{"u"}));
  EXPECT_EQ(audit_views(net.log(), {"b", "c"}).labels(), (std::set<std::string>{"u", "v"}));
  const Knowledge a = audit_views(net.log(), {"a"});
  EXPECT_EQ(a.value("w"), BigInt(3));
  EXPECT_EQ(a.classes(), (std::set<PayloadClass>{PayloadClass::kSum}));
  EXPECT_TRUE(audit_views(net.log(), {"b"}, 1).observations().empty());
}

TEST(Simnet, PayloadClassNamesRoundTrip) {
  for (auto cls : {PayloadClass::kCommitment, PayloadClass::kShare, PayloadClass::kScaledRelay,
                   PayloadClass::kSum, PayloadClass::kHelpRelay, PayloadClass::kLift,
                   PayloadClass::kOpening, PayloadClass::kControl}) {
    EXPECT_EQ(payload_class_from_string(to_string(cls)), cls);
  }
  EXPECT_THROW(payload_class_from_string("gossip"), ParseError);
}

TEST(Simnet, ExportWritesHeaderAndOneLinePerMessage) {
  Net net = two_party_net();
  net.add_hook({"h", [](const Message&) { return true; }, [](Payload& p) { p[0].value = 5; }});
  net.send(msg("v", {{"X", 1}}));
  net.send(msg("v", {{"X", 2}}));
  std::ostringstream out;
  export_log(out, {{"kind", "test"}}, net.log());
  std::istringstream lines(out.str());
  std::string line;
  std::vector<nlohmann::json> rows;
  while (std::getline(lines, line)) rows.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0]["kind"], "test");
  EXPECT_EQ(rows[1]["class"], "sum");
  EXPECT_EQ(rows[1]["payload"][0][1], "1");
  EXPECT_EQ(rows[1]["delivered"][0][1], "5");
  EXPECT_FALSE(rows[2].contains("delivered"));
}

TEST(Simnet, TamperScenarioFile) {
  std::istringstream in(
      "# comment\n"
      "\n"
      "step=v label=X add=-1\n"
      "to=bob class=share set=9\n");
  auto hooks = parse_tamper_scenario(in, 593);
  ASSERT_EQ(hooks.size(), 2u);
  Net net = two_party_net();
  for (auto& h : hooks) net.add_hook(std::move(h));
  net.send(msg("v", {{"Y", 4}, {"X", 0}}));
  net.send(msg("ii", {{"u", 4}}, PayloadClass::kShare));
  EXPECT_EQ(net.receive("bob").payload, (Payload{{"Y", 4}, {"X", 592}}));
  EXPECT_EQ(field(net.receive("bob").payload, "u"), 9);
}

TEST(Simnet, TamperScenarioErrorsCarryLines) {
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_tamper_scenario(in, 0);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("step=v add=1\nstep=v\n"), 2u);
  EXPECT_EQ(line_of("bogus=1 add=1\n"), 1u);
  EXPECT_EQ(line_of("\nclass=gossip add=1\n"), 2u);
  EXPECT_EQ(line_of("add=x\n"), 1u);
  EXPECT_EQ(line_of("step v add=1\n"), 1u);
}
