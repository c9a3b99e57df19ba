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

#include "oshi/api/server.hpp"

#include <future>

#include <httplib.h>

#include "oshi/common/error.hpp"
#include "oshi/flow/flow_json.hpp"

namespace oshi::api {

using nlohmann::json;

int http_status(Errc code) {
  switch (code) {
    case Errc::UnknownVll:
    case Errc::UnknownNode:
    case Errc::UnknownLink:
    case Errc::UnknownPort: return 404;
    case Errc::NoPath:
    case Errc::TagExhausted:
    case Errc::EndpointConflict:
    case Errc::Unreachable:
    case Errc::Infeasible: return 409;
    case Errc::Timeout: return 504;
    default: return 400;
  }
}

namespace {

Response error(int status, std::string_view code, const std::string& message) {
  return Response{status, json{{"error", code}, {"message", message}}};
}

json parse_body(const Request& r) {
  if (r.body.empty()) return json::object();
  try {
    return json::parse(r.body);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Malformed, std::string("request body is not JSON: ") + e.what());
  }
}

net::Dpid dpid_from(const topo::Deployment& d, const json& j) {
  if (j.is_string()) return d.dpid(j.get<std::string>());
  if (j.is_number_unsigned()) return net::Dpid(j.get<std::uint64_t>());
  throw Error(Errc::InvalidArgument, "dpid must be a number or a node id");
}

const std::string& query(const Request& r, const std::string& key) {
  const auto it = r.query.find(key);
  if (it == r.query.end() || it->second.empty()) {
    throw Error(Errc::InvalidArgument, "missing query parameter '" + key + "'");
  }
  return it->second;
}

}  // namespace

ApiCore::ApiCore(std::unique_ptr<topo::Deployment> deployment, topo::DeployOptions options)
    : deployment_(std::move(deployment)), options_(std::move(options)) {
  last_sample_ = deployment_->now();
  for (const auto& n : deployment_->doc().nodes) {
    last_units_[n.id] = deployment_->node(n.id).meter().units(measure::kDefaultCostModel);
  }
}

void ApiCore::sample_load(SimTime interval) {
  const SimTime now = deployment_->now();
  if (now - last_sample_ < interval || now <= last_sample_) return;
  const double secs = to_seconds(now - last_sample_);
  for (const auto& n : deployment_->doc().nodes) {
    const double u = deployment_->node(n.id).meter().units(measure::kDefaultCostModel);
    recent_load_[n.id] = (u - last_units_[n.id]) / secs;
    last_units_[n.id] = u;
  }
  last_sample_ = now;
}

Response ApiCore::handle(const Request& request) {
  try {
    return route(request);
  } catch (const Error& e) {
    return error(http_status(e.code()), errc_name(e.code()), e.what());
  } catch (const json::exception& e) {
    return error(400, errc_name(Errc::Malformed), e.what());
  }
}

Response ApiCore::route(const Request& r) {
  auto& d = *deployment_;
  const std::string& p = r.path;
  const auto tail = [&](std::string_view prefix) { return p.substr(prefix.size()); };

  if (p == "/topology") {
    if (r.method == "GET") return {200, d.topology_json()};
    if (r.method == "POST") {
      auto doc = topo::load_topology(parse_body(r));
      auto next = topo::Deployment::deploy(doc, options_);
      deployment_ = std::move(next);
      last_units_.clear();
      recent_load_.clear();
      last_sample_ = deployment_->now();
      return {200, deployment_->topology_json()};
    }
  } else if (p == "/route" && r.method == "GET") {
    return {200, ctrl::to_json(d.get_route(query(r, "src"), query(r, "dst")))};
  } else if (p == "/vll") {
    if (r.method == "GET") {
      json out = json::array();
      for (const auto& [id, v] : d.controller().vlls()) out.push_back(ctrl::to_json(v));
      return {200, out};
    }
    if (r.method == "POST") {
      const auto body = parse_body(r);
      ctrl::VllRequest req;
      req.id = body.value("id", "");
      req.end_a = ctrl::endpoint_from_json(body.at("end_a"));
      req.end_b = ctrl::endpoint_from_json(body.at("end_b"));
      return {201, ctrl::to_json(d.push_vll(req))};
    }
  } else if (p.starts_with("/vll/") && r.method == "DELETE") {
    const auto id = tail("/vll/");
    d.delete_vll(id);
    return {200, json{{"deleted", id}}};
  } else if (p == "/flow" && r.method == "POST") {
    const auto body = parse_body(r);
    const auto dpid = dpid_from(d, body.at("dpid"));
    const auto result = d.static_flow_push(dpid, flow::entry_from_json(body.at("entry")));
    if (!result.ok) return error(http_status(result.errc), errc_name(result.errc), result.error);
    return {200, json{{"ok", true},
                      {"dpid", dpid.value()},
                      {"table", result.handle.table_id},
                      {"id", result.handle.id},
                      {"deleted", result.deleted}}};
  } else if (p.starts_with("/link/") && r.method == "POST") {
    const auto id = tail("/link/");
    const auto body = parse_body(r);
    const bool up = body.at("up").get<bool>();
    const auto settle = d.set_link_state(id, up);
    return {200, json{{"link", id}, {"up", up}, {"settle_s", to_seconds(settle)}}};
  } else if (p == "/stats" && r.method == "GET") {
    auto out = d.stats_json();
    for (const auto& [node, load] : recent_load_) out["nodes"][node]["recent_load"] = load;
    return {200, out};
  } else {
    return error(404, "NotFound", "no route for " + p);
  }
  return error(405, "MethodNotAllowed", r.method + " is not allowed on " + p);
}

struct Server::Http {
  httplib::Server server;
  int port = 0;
};

Server::Server(std::unique_ptr<topo::Deployment> deployment, topo::DeployOptions deploy_options,
               ServerOptions options)
    : core_(std::move(deployment), std::move(deploy_options)),
      options_(std::move(options)),
      http_(std::make_unique<Http>()) {
  if (!(options_.speed > 0)) throw Error(Errc::InvalidArgument, "speed must be > 0");
  if (options_.tick <= SimTime::zero()) throw Error(Errc::InvalidArgument, "tick must be > 0");
}

Server::~Server() { stop(); }

Response Server::call(const Request& request) {
  auto task = std::make_shared<std::packaged_task<Response()>>(
      [this, request] { return core_.handle(request); });
  auto result = task->get_future();
  {
    std::lock_guard lock(mu_);
    if (!running_) return error(503, "Unavailable", "server is stopping");
    queue_.emplace_back([task] { (*task)(); });
  }
  cv_.notify_one();
  return result.get();
}

void Server::sim_loop() {
  using Clock = std::chrono::steady_clock;
  const auto wall_tick = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(to_seconds(options_.tick) / options_.speed));
  auto next = Clock::now() + wall_tick;
  std::unique_lock lock(mu_);
  while (running_) {
    cv_.wait_until(lock, next, [&] { return !running_ || !queue_.empty(); });
    while (!queue_.empty()) {
      auto cmd = std::move(queue_.front());
      queue_.pop_front();
      lock.unlock();
      cmd();
      lock.lock();
    }
    if (!running_) break;
    if (Clock::now() < next) continue;
    next += wall_tick;
    lock.unlock();
    core_.deployment().sim().run_for(options_.tick);
    core_.sample_load(options_.load_interval);
    lock.lock();
  }
  // Answer anything still queued so no caller waits forever.
  while (!queue_.empty()) {
    auto cmd = std::move(queue_.front());
    queue_.pop_front();
    cmd();
  }
}

int Server::start() {
  auto& s = http_->server;
  const auto adapt = [this](const httplib::Request& req, httplib::Response& res) {
    Request r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.query[k] = v;
    const auto out = call(r);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  s.Get("/topology", adapt);
  s.Post("/topology", adapt);
  s.Get("/route", adapt);
  s.Get("/vll", adapt);
  s.Post("/vll", adapt);
  s.Delete(R"(/vll/([^/]+))", adapt);
  s.Post("/flow", adapt);
  s.Post(R"(/link/([^/]+))", adapt);
  s.Get("/stats", adapt);
  if (!options_.static_dir.empty() && !s.set_mount_point("/", options_.static_dir)) {
    throw Error(Errc::InvalidArgument, "cannot serve " + options_.static_dir);
  }

  if (options_.port == 0) {
    http_->port = s.bind_to_any_port(options_.host);
  } else if (s.bind_to_port(options_.host, options_.port)) {
    http_->port = options_.port;
  } else {
    http_->port = -1;
  }
  if (http_->port <= 0) {
    throw Error(Errc::InvalidArgument,
                "cannot bind " + options_.host + ":" + std::to_string(options_.port));
  }
  {
    std::lock_guard lock(mu_);
    running_ = true;
  }
  sim_thread_ = std::thread([this] { sim_loop(); });
  http_thread_ = std::thread([this] { http_->server.listen_after_bind(); });
  http_->server.wait_until_ready();
  return http_->port;
}

void Server::wait() {
  if (http_thread_.joinable()) http_thread_.join();
}

void Server::stop() {
  http_->server.stop();
  if (http_thread_.joinable()) http_thread_.join();
  {
    std::lock_guard lock(mu_);
    running_ = false;
  }
  cv_.notify_all();
  if (sim_thread_.joinable()) sim_thread_.join();
}

}  // namespace oshi::api
