// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/server.hpp"

#include <httplib.h>

#include "geosearch/api.hpp"
#include "geosearch/error.hpp"

namespace geosearch {

struct ApiServer::Impl {
    Impl(const Engine& e, ServerOptions o) : engine(e), options(std::move(o)) {}

    const Engine& engine;
    ServerOptions options;
    httplib::Server http;
    int port = -1;
};

namespace {

ApiParams params_of(const httplib::Request& req) {
    ApiParams out;
    for (const auto& [key, value] : req.params) {
        out.emplace(key, value);  // first occurrence wins
    }
    return out;
}

void reply(httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body, "application/json");
}

}  // namespace

ApiServer::ApiServer(const Engine& engine, ServerOptions options)
    : impl_(std::make_unique<Impl>(engine, std::move(options))) {
    auto& http = impl_->http;
    const Engine& eng = impl_->engine;
    http.set_default_headers({{"Access-Control-Allow-Origin", impl_->options.cors_origin},
                              {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
    http.Get("/api/search", [&eng](const httplib::Request& req, httplib::Response& res) {
        reply(res, handle_search(eng, params_of(req)));
    });
    http.Get("/api/explain", [&eng](const httplib::Request& req, httplib::Response& res) {
        reply(res, handle_explain(eng, params_of(req)));
    });
    http.Get(R"(/api/item/([^/]+))", [&eng](const httplib::Request& req, httplib::Response& res) {
        reply(res, handle_item(eng, req.matches[1].str()));
    });
    http.Get("/api/health", [&eng](const httplib::Request&, httplib::Response& res) {
        reply(res, handle_health(eng));
    });
    http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) {
            res.set_content(R"({"error":"not found"})", "application/json");
        }
    });
}

ApiServer::~ApiServer() {
    stop();
}

int ApiServer::bind() {
    auto& impl = *impl_;
    if (impl.options.port == 0) {
        impl.port = impl.http.bind_to_any_port(impl.options.host);
    } else if (impl.http.bind_to_port(impl.options.host, impl.options.port)) {
        impl.port = impl.options.port;
    } else {
        impl.port = -1;
    }
    if (impl.port < 0) {
        throw Error("cannot bind " + impl.options.host + ":" + std::to_string(impl.options.port));
    }
    return impl.port;
}

void ApiServer::run() {
    if (impl_->port < 0) {
        throw Error("server is not bound");
    }
    impl_->http.listen_after_bind();
}

void ApiServer::stop() {
    if (impl_) {
        impl_->http.stop();
    }
}

void ApiServer::wait_until_ready() const {
    impl_->http.wait_until_ready();
}

}  // namespace geosearch
