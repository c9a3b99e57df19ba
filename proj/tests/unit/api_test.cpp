/*
 * Copyright 2026 The oshi-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>
#include <httplib.h>

#include "oshi/api/server.hpp"
#include "oshi/flow/flow_json.hpp"
#include "support/doc_builder.hpp"
#include "support/errors.hpp"

namespace oshi::api {
namespace {

using nlohmann::json;
using oshi::testing::error_code;

topo::DeployOptions quiet() {
  topo::DeployOptions o;
  o.log_events = false;
  return o;
}

// CE1 - PE1 - CR1 - PE2 - CE2, links L1..L4 in that order.
std::unique_ptr<topo::Deployment> chain() {
  return topo::Deployment::deploy(oshi::testing::chain(1).doc(), quiet());
}

Request req(std::string method, std::string path, std::string body = {}) {
  return Request{std::move(method), std::move(path), {}, std::move(body)};
}

const json kVll = {{"id", "v1"}, {"end_a", "PE1:1:100"}, {"end_b", "PE2:2:200"}};

class Api : public ::testing::Test {
 protected:
  ApiCore core_{chain(), quiet()};
};

TEST(ApiStatus, CodesFollowErrorClass) {
  EXPECT_EQ(http_status(Errc::UnknownNode), 404);
  EXPECT_EQ(http_status(Errc::UnknownVll), 404);
  EXPECT_EQ(http_status(Errc::UnknownLink), 404);
  EXPECT_EQ(http_status(Errc::NoPath), 409);
  EXPECT_EQ(http_status(Errc::EndpointConflict), 409);
  EXPECT_EQ(http_status(Errc::Timeout), 504);
  EXPECT_EQ(http_status(Errc::InvalidArgument), 400);
  EXPECT_EQ(http_status(Errc::Malformed), 400);
}

TEST_F(Api, TopologyAndStats) {
  const auto t = core_.handle(req("GET", "/topology"));
  EXPECT_EQ(t.status, 200);
  EXPECT_EQ(t.body["nodes"].size(), 5u);
  EXPECT_EQ(t.body["links"].size(), 4u);
  // Discovery has found both core links.
  EXPECT_EQ(t.body["discovered"].size(), 2u);

  core_.deployment().sim().run_for(std::chrono::seconds(3));
  core_.sample_load(std::chrono::seconds(2));
  const auto s = core_.handle(req("GET", "/stats"));
  EXPECT_EQ(s.status, 200);
  EXPECT_TRUE(s.body["nodes"]["CR1"].contains("recent_load"));
  EXPECT_GT(s.body["nodes"]["CR1"]["recent_load"].get<double>(), 0.0);
}

TEST_F(Api, RouteQueries) {
  Request r = req("GET", "/route");
  r.query = {{"src", "PE1"}, {"dst", "PE2"}};
  const auto ok = core_.handle(r);
  ASSERT_EQ(ok.status, 200);
  EXPECT_EQ(ok.body["nodes"], json({"PE1", "CR1", "PE2"}));
  r.query = {{"src", "PE1"}};
  EXPECT_EQ(core_.handle(r).status, 400);
  r.query = {{"src", "PE1"}, {"dst", "PE9"}};
  const auto unknown = core_.handle(r);
  EXPECT_EQ(unknown.status, 404);
  EXPECT_EQ(unknown.body["error"], "UnknownNode");
}

TEST_F(Api, VllLifecycle) {
  const auto created = core_.handle(req("POST", "/vll", kVll.dump()));
  ASSERT_EQ(created.status, 201) << created.body.dump();
  EXPECT_EQ(created.body["id"], "v1");
  EXPECT_EQ(created.body["path"]["nodes"], json({"PE1", "CR1", "PE2"}));
  EXPECT_EQ(core_.handle(req("GET", "/vll")).body.size(), 1u);

  const auto dup = core_.handle(req("POST", "/vll", kVll.dump()));
  EXPECT_EQ(dup.status, 409);
  EXPECT_EQ(dup.body["error"], "EndpointConflict");
  EXPECT_EQ(core_.handle(req("POST", "/vll", "{not json")).status, 400);
  EXPECT_EQ(core_.handle(req("POST", "/vll", R"({"end_a": "PE1:1"})")).status, 400);

  EXPECT_EQ(core_.handle(req("DELETE", "/vll/v1")).status, 200);
  EXPECT_TRUE(core_.handle(req("GET", "/vll")).body.empty());
  EXPECT_EQ(core_.handle(req("DELETE", "/vll/v1")).status, 404);
}

TEST_F(Api, StaticFlowPush) {
  flow::FlowEntry e;
  e.table_id = 1;
  e.priority = 10;
  e.match.in_port = net::PortId(1);
  e.actions = {flow::action::Drop{}};
  json body{{"dpid", "PE1"}, {"entry", flow::to_json(e)}};
  const auto ok = core_.handle(req("POST", "/flow", body.dump()));
  ASSERT_EQ(ok.status, 200) << ok.body.dump();
  EXPECT_EQ(ok.body["table"], 1);
  body["dpid"] = "CE1";  // not a switch
  EXPECT_EQ(core_.handle(req("POST", "/flow", body.dump())).status, 404);
  body["dpid"] = true;
  EXPECT_EQ(core_.handle(req("POST", "/flow", body.dump())).status, 400);
  body["dpid"] = "PE1";
  body["entry"]["table"] = 9;
  EXPECT_EQ(core_.handle(req("POST", "/flow", body.dump())).status, 400);
}

TEST_F(Api, LinkFailureRemovesRoute) {
  const auto down = core_.handle(req("POST", "/link/L2", R"({"up": false})"));
  ASSERT_EQ(down.status, 200) << down.body.dump();
  EXPECT_EQ(down.body["up"], false);
  Request r = req("GET", "/route");
  r.query = {{"src", "PE1"}, {"dst", "PE2"}};
  EXPECT_EQ(core_.handle(r).status, 409);
  EXPECT_EQ(core_.handle(req("POST", "/link/L2", R"({"up": true})")).status, 200);
  // The controller sees the link again after the next probe round.
  core_.deployment().sim().run_for(std::chrono::seconds(10));
  EXPECT_EQ(core_.handle(r).status, 200);
  EXPECT_EQ(core_.handle(req("POST", "/link/L9", R"({"up": true})")).status, 404);
  EXPECT_EQ(core_.handle(req("POST", "/link/L2", "{}")).status, 400);
}

TEST_F(Api, RedeployAndRouting) {
  auto doc = topo::to_json(oshi::testing::chain(2).doc());
  const auto r = core_.handle(req("POST", "/topology", doc.dump()));
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["nodes"].size(), 6u);
  doc["version"] = 7;
  const auto bad = core_.handle(req("POST", "/topology", doc.dump()));
  EXPECT_EQ(bad.status, 400);
  EXPECT_EQ(bad.body["error"], "Schema");
  EXPECT_EQ(core_.handle(req("GET", "/topology")).body["nodes"].size(), 6u);

  EXPECT_EQ(core_.handle(req("GET", "/nowhere")).status, 404);
  EXPECT_EQ(core_.handle(req("PUT", "/vll")).status, 405);
  EXPECT_EQ(core_.handle(req("DELETE", "/topology")).status, 405);
}

TEST(ApiServer, ServesOverHttp) {
  ServerOptions o;
  o.port = 0;
  o.speed = 50;
  Server server(chain(), quiet(), o);
  const int port = server.start();
  ASSERT_GT(port, 0);
  httplib::Client c("127.0.0.1", port);
  const auto topo = c.Get("/topology");
  ASSERT_TRUE(topo);
  EXPECT_EQ(topo->status, 200);
  EXPECT_EQ(json::parse(topo->body)["nodes"].size(), 5u);
  const auto vll = c.Post("/vll", kVll.dump(), "application/json");
  ASSERT_TRUE(vll);
  EXPECT_EQ(vll->status, 201);
  const auto route = c.Get("/route?src=CE1&dst=PE2");
  ASSERT_TRUE(route);
  EXPECT_EQ(route->status, 404);  // a CE is not a switch
  const auto del = c.Delete("/vll/v1");
  ASSERT_TRUE(del);
  EXPECT_EQ(del->status, 200);
  server.stop();
  EXPECT_EQ(server.call(req("GET", "/topology")).status, 503);
}

TEST(ApiServer, RejectsBadOptions) {
  ServerOptions o;
  o.speed = 0;
  EXPECT_EQ(error_code([&] { Server s(chain(), quiet(), o); }), Errc::InvalidArgument);
}

}  // namespace
}  // namespace oshi::api
