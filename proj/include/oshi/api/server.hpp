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

#pragma once

#include <condition_variable>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "oshi/measure/cost_model.hpp"
#include "oshi/topo/deployment.hpp"

namespace oshi::api {

struct Request {
  std::string method;  // GET, POST, DELETE
  std::string path;    // without query string
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  nlohmann::json body;
};

/// HTTP status for an error code: 400 for bad input, 404 for unknown
/// entities, 409 for conflicts with network state, 504 for timeouts.
int http_status(Errc code);

/// The API routes over one deployment. Not thread-safe: the server calls
/// it only from the simulation thread.
///
///   GET    /topology            nodes, links, discovered links
///   POST   /topology            redeploy from a topology document
///   GET    /route?src=&dst=     controller route
///   GET    /vll                 every VLL descriptor
///   POST   /vll                 {id?, end_a, end_b} -> descriptor
///   DELETE /vll/{id}
///   POST   /flow                {dpid, entry} -> flow_mod result
///   POST   /link/{id}           {up} -> settle time
///   GET    /stats               per-node counters and load
///
/// Errors answer {"error": <code name>, "message": <text>}.
class ApiCore {
 public:
  ApiCore(std::unique_ptr<topo::Deployment> deployment, topo::DeployOptions options);

  Response handle(const Request& request);

  topo::Deployment& deployment() { return *deployment_; }
  /// Once `interval` has passed since the previous sample, records each
  /// node's load over that span; GET /stats reports it as "recent_load".
  void sample_load(SimTime interval);

 private:
  Response route(const Request& request);

  std::unique_ptr<topo::Deployment> deployment_;
  topo::DeployOptions options_;
  std::map<std::string, double> last_units_;
  std::map<std::string, double> recent_load_;
  SimTime last_sample_{};
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  /// Simulated seconds advanced per wall-clock second while idle.
  double speed = 1.0;
  SimTime tick = std::chrono::milliseconds(100);
  SimTime load_interval = std::chrono::seconds(2);
  /// Directory served at "/" for the browser front-end; empty disables it.
  std::string static_dir;
};

/// Runs the simulation on its own thread and serves ApiCore over HTTP.
/// Every request, read or write, becomes a command on one queue that the
/// simulation thread drains between ticks, so each sees a consistent state
/// and mutations are serialized.
class Server {
 public:
  Server(std::unique_ptr<topo::Deployment> deployment, topo::DeployOptions deploy_options,
         ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and starts both threads; returns the bound port. Throws
  /// InvalidArgument when the address cannot be bound.
  int start();
  /// Blocks until stop() is called from another thread.
  void wait();
  void stop();

  /// Runs `request` on the simulation thread and waits for the answer.
  Response call(const Request& request);

 private:
  void sim_loop();

  ApiCore core_;
  ServerOptions options_;
  struct Http;
  std::unique_ptr<Http> http_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::function<void()>> queue_;
  bool running_ = false;
  std::thread sim_thread_;
  std::thread http_thread_;
};

}  // namespace oshi::api
