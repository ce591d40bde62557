#include "webpredict/service.hpp"

#include <mutex>
#include <sstream>

#include <httplib.h>

#include "text_util.hpp"

namespace webpredict {

using nlohmann::json;

json prediction_to_json(const Prediction& p) {
    json candidates = json::array();
    for (const auto& c : p.candidates)
        candidates.push_back({{"url", c.url},
                              {"level", c.pvalue.level},
                              {"rank", c.pvalue.rank},
                              {"class", c.class_no},
                              {"class_match", c.class_match}});
    return {{"source", p.source}, {"window", p.window}, {"candidates", std::move(candidates)}};
}

Service::Service(Model model, UpdateConfig cfg, std::size_t default_window)
    : engine_(std::move(model), cfg), default_window_(default_window) {}

std::string Service::snapshot() const {
    std::shared_lock lock(mutex_);
    return dump_model(engine_.model());
}

json Service::do_predict(const json& request) const {
    if (!request.contains("url") || !request["url"].is_string())
        return {{"error", "predict needs a string 'url'"}};
    std::size_t window = default_window_;
    if (request.contains("window")) {
        if (!request["window"].is_number_integer() || request["window"].get<long long>() < 0)
            return {{"error", "'window' must be a non-negative integer"}};
        window = request["window"].get<std::size_t>();
    }
    std::shared_lock lock(mutex_);
    const auto p = predict(engine_.model(), request["url"].get<std::string>(), window);
    return {{"window", p.window}, {"level", p.level}, {"class", p.class_no}};
}

json Service::do_observe(const json& request) {
    if (!request.contains("url") || !request["url"].is_string())
        return {{"error", "observe needs a string 'url'"}};
    if (request.contains("session") && !request["session"].is_string())
        return {{"error", "'session' must be a string"}};
    const auto url = request["url"].get<std::string>();
    std::unique_lock lock(mutex_);
    const PageId id = engine_.model().id_of(url);
    engine_.access(url);
    engine_.sweep_if_due();
    const auto& r = engine_.model().record(id);
    return {{"ok", true}, {"level", r.level}, {"class", r.class_no}};
}

json Service::handle(const json& request) {
    try {
        if (!request.is_object() || !request.contains("kind") || !request["kind"].is_string())
            return {{"error", "request must be an object with a string 'kind'"}};
        const auto kind = request["kind"].get<std::string>();
        if (kind == "predict") return do_predict(request);
        if (kind == "observe") return do_observe(request);
        if (kind == "snapshot") return {{"snapshot", snapshot()}};
        return {{"error", "unknown kind '" + kind + "'"}};
    } catch (const Error& e) {
        return {{"error", e.what()}};
    }
}

std::string Service::handle_line(std::string_view line) {
    json request;
    try {
        request = json::parse(line);
    } catch (const json::parse_error& e) {
        return json{{"error", std::string("malformed request: ") + e.what()}}.dump();
    }
    return handle(request).dump();
}

struct HttpFrontend::Impl {
    explicit Impl(Service& s) : service(s) {}
    Service& service;
    httplib::Server server;
};

HttpFrontend::HttpFrontend(Service& service) : impl_(std::make_unique<Impl>(service)) {
    auto& svc = impl_->service;
    impl_->server.Post("/rpc", [&svc](const httplib::Request& req, httplib::Response& res) {
        std::string out;
        for (auto line : detail::split_lines(req.body)) {
            if (detail::trim(line).empty()) continue;
            out += svc.handle_line(line);
            out += '\n';
        }
        res.set_content(out, "application/x-ndjson");
    });
    impl_->server.Get("/snapshot", [&svc](const httplib::Request&, httplib::Response& res) {
        res.set_content(svc.snapshot(), "text/csv");
    });
    impl_->server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("ok\n", "text/plain");
    });
}

HttpFrontend::~HttpFrontend() = default;

int HttpFrontend::bind(const std::string& host, int port) {
    int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void HttpFrontend::listen() { impl_->server.listen_after_bind(); }

void HttpFrontend::stop() { impl_->server.stop(); }

}  // namespace webpredict
