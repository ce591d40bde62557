#pragma once

#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>

#include <json.hpp>

#include "webpredict/predictor.hpp"
#include "webpredict/update_engine.hpp"

namespace webpredict {

/// `{source, window:[...], candidates:[{url,level,rank,class,class_match}]}`
nlohmann::json prediction_to_json(const Prediction& p);

/**
 * Message-level front end over one Engine.
 *
 * Requests are JSON objects with a `kind` of predict, observe or snapshot.
 * Predictions and snapshots run under a shared lock; observations take the
 * lock exclusively, so every read sees the model either before or after a
 * whole update. Errors come back as `{"error": "..."}` and leave the model
 * untouched.
 */
class Service {
public:
    Service(Model model, UpdateConfig cfg, std::size_t default_window = 2);

    nlohmann::json handle(const nlohmann::json& request);
    /// One request line in, one compact JSON response line out (no newline).
    std::string handle_line(std::string_view line);

    std::string snapshot() const;

private:
    nlohmann::json do_predict(const nlohmann::json& request) const;
    nlohmann::json do_observe(const nlohmann::json& request);

    mutable std::shared_mutex mutex_;
    Engine engine_;
    std::size_t default_window_;
};

/**
 * HTTP transport for Service.
 *   POST /rpc       body: request lines; reply: one response line each
 *   GET  /snapshot  the model dump as CSV
 *   GET  /health    "ok"
 */
class HttpFrontend {
public:
    explicit HttpFrontend(Service& service);
    ~HttpFrontend();
    HttpFrontend(const HttpFrontend&) = delete;
    HttpFrontend& operator=(const HttpFrontend&) = delete;

    /// Binds to `host:port` (port 0 picks a free one) and returns the port.
    int bind(const std::string& host, int port);
    /// Serves until stop() is called. Requires a successful bind().
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace webpredict
