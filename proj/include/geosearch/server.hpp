// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <memory>
#include <string>

#include "geosearch/engine.hpp"

namespace geosearch {

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8080;  // 0 picks a free port
    std::string cors_origin = "*";
};

/// HTTP front end for the JSON handlers:
///   GET /api/search?q&model&k, GET /api/explain?q&k, GET /api/item/{id}, GET /api/health
class ApiServer {
public:
    ApiServer(const Engine& engine, ServerOptions options);
    ~ApiServer();
    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Binds the socket; returns the bound port. Throws Error on failure.
    int bind();
    /// Serves until stop(). Requires bind().
    void run();
    /// Stops accepting; in-flight requests complete. Safe from any thread.
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace geosearch
