// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

// Command line front end: index, search, explain, run, eval, serve, enrich.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "geosearch/api.hpp"
#include "geosearch/enrichment.hpp"
#include "geosearch/engine.hpp"
#include "geosearch/error.hpp"
#include "geosearch/eval.hpp"
#include "geosearch/server.hpp"

namespace {

using namespace geosearch;

geosearch::ApiServer* g_server = nullptr;

void on_signal(int) {
    if (g_server != nullptr) {
        g_server->stop();
    }
}

int print_response(const ApiResponse& r) {
    (r.status == 200 ? std::cout : std::cerr) << r.body << '\n';
    return r.status == 200 ? 0 : 1;
}

int cmd_index(const std::string& config_path) {
    const Engine engine = assemble_engine(load_config(config_path));
    fmt::print("items\t{}\nterms\t{}\nplaces\t{}\nembeddings\t{}\ndimension\t{}\n", engine.catalog().size(),
               engine.index().n_terms(), engine.gazetteer().size(), engine.table().size(),
               engine.table().dimension());
    return 0;
}

int cmd_search(const std::string& config_path, const std::string& q, const std::string& model, std::size_t k,
               bool json) {
    const Engine engine = assemble_engine(load_config(config_path));
    if (json) {
        return print_response(handle_search(engine, {{"q", q}, {"model", model}, {"k", std::to_string(k)}}));
    }
    if (model == kLuceneModel) {
        std::size_t rank = 0;
        for (const auto& hit : engine.search_lucene(q, k)) {
            fmt::print("{}\t{}\t{:.6f}\t{}\n", ++rank, hit.id, hit.score, engine.catalog()[hit.doc].title);
        }
        return 0;
    }
    if (model != kSemanticModel) {
        throw CLI::ValidationError("--model", "must be semantic or lucene");
    }
    const SemanticResult result = engine.search_semantic(q, k);
    std::size_t rank = 0;
    for (const auto& hit : result.hits) {
        fmt::print("{}\t{}\t{:.6f}\tp={:.3f} s={:.3f} c={:.3f} d={:.3f}\t{}\n", ++rank, hit.item_id, hit.combined,
                   hit.platial_n, hit.spatial_n, hit.concepts_n, hit.doc_n, engine.catalog()[hit.ordinal].title);
    }
    return 0;
}

int cmd_explain(const std::string& config_path, const std::string& q, std::size_t k) {
    const Engine engine = assemble_engine(load_config(config_path));
    return print_response(handle_explain(engine, {{"q", q}, {"k", std::to_string(k)}}));
}

int cmd_run(const std::string& config_path, const std::string& queries_path, std::size_t k, const std::string& out) {
    const Engine engine = assemble_engine(load_config(config_path));
    const auto queries = load_queries(queries_path);
    const auto runs = run_benchmark(engine, queries, k);
    if (out.empty()) {
        write_runs(std::cout, runs);
        return 0;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        throw IoError(out);
    }
    write_runs(f, runs);
    return 0;
}

int cmd_eval(const std::string& runs_path, const std::string& judgments_path, const std::string& ks_text,
             const std::string& out, bool strict) {
    const auto runs = load_runs(runs_path);
    const auto judgments = load_judgments(judgments_path);
    const auto report = comparison_report(runs, judgments, parse_ks(ks_text), strict);
    if (out.empty()) {
        write_report(std::cout, report);
        return 0;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        throw IoError(out);
    }
    write_report(f, report);
    return 0;
}

int cmd_serve(const std::string& config_path, const std::string& host, int port) {
    const EngineConfig config = load_config(config_path);
    const Engine engine = assemble_engine(config);
    ServerOptions options{host.empty() ? config.host : host, port >= 0 ? port : config.port, config.cors_origin};
    ApiServer server(engine, options);
    const int bound = server.bind();
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::fprintf(stderr, "geosearch: serving on http://%s:%d\n", options.host.c_str(), bound);
    server.run();
    g_server = nullptr;
    return 0;
}

int cmd_enrich(const std::string& config_path, const std::string& endpoint, const std::string& out) {
    const EngineConfig config = load_config(config_path);
    std::vector<Place> places = load_gazetteer(config.gazetteer).places();
    const EnrichmentClient client(endpoint);
    for (auto& place : places) {
        auto iri = place.external_ids.find("dbpedia");
        if (iri == place.external_ids.end()) {
            continue;
        }
        try {
            apply_enrichment(place, client.fetch(iri->second));
        } catch (const Error& e) {
            std::fprintf(stderr, "geosearch: %s: %s\n", place.place_id.c_str(), e.what());
        }
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        throw IoError(out);
    }
    write_places(f, places);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geographic search with semantic query expansion"};
    app.require_subcommand(1);

    std::string config;
    std::string q;
    std::string model = kSemanticModel;
    std::size_t k = kDefaultResultCount;
    bool json = false;

    auto* index = app.add_subcommand("index", "Build the engine and print its statistics");
    index->add_option("--config", config, "Engine config file")->required();

    auto* search = app.add_subcommand("search", "Run one query");
    search->add_option("--config", config, "Engine config file")->required();
    search->add_option("--q", q, "Query text")->required();
    search->add_option("--model", model, "semantic or lucene")->check(CLI::IsMember({"semantic", "lucene"}));
    search->add_option("--k", k, "Number of results")->check(CLI::Range(1, 100));
    search->add_flag("--json", json, "Print the API response body");

    auto* explain = app.add_subcommand("explain", "Show the parsed query, expansions and per-item scoring");
    explain->add_option("--config", config, "Engine config file")->required();
    explain->add_option("--q", q, "Query text")->required();
    explain->add_option("--k", k, "Number of explained results")->check(CLI::Range(1, 100));

    std::string queries;
    std::string out;
    auto* run = app.add_subcommand("run", "Rank a query file with both models and write a runs file");
    run->add_option("--config", config, "Engine config file")->required();
    run->add_option("--queries", queries, "Queries file")->required();
    run->add_option("--k", k, "Ranking depth")->check(CLI::Range(1, 100));
    run->add_option("--out", out, "Output path (default stdout)");

    std::string runs;
    std::string judgments;
    std::string ks = "3,5,10";
    bool strict = false;
    auto* eval = app.add_subcommand("eval", "Compare two models' runs by DCG@k");
    eval->add_option("--config", config, "Engine config file (unused by eval)");
    eval->add_option("--runs", runs, "Runs file")->required();
    eval->add_option("--judgments", judgments, "Judgments file")->required();
    eval->add_option("--k", ks, "Comma-separated cutoffs");
    eval->add_option("--out", out, "Output path (default stdout)");
    eval->add_flag("--strict", strict, "Fail on queries without judgments");

    std::string host;
    int port = -1;
    auto* serve = app.add_subcommand("serve", "Serve the HTTP JSON API");
    serve->add_option("--config", config, "Engine config file")->required();
    serve->add_option("--host", host, "Override the configured host");
    serve->add_option("--port", port, "Override the configured port (0 picks one)")->check(CLI::Range(0, 65535));

    std::string endpoint = "https://dbpedia.org/sparql";
    auto* enrich = app.add_subcommand("enrich", "Fill place attributes from a SPARQL endpoint");
    enrich->add_option("--config", config, "Engine config file")->required();
    enrich->add_option("--endpoint", endpoint, "SPARQL endpoint URL");
    enrich->add_option("--out", out, "Output gazetteer path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (index->parsed()) {
            return cmd_index(config);
        }
        if (search->parsed()) {
            return cmd_search(config, q, model, k, json);
        }
        if (explain->parsed()) {
            return cmd_explain(config, q, k);
        }
        if (run->parsed()) {
            return cmd_run(config, queries, k, out);
        }
        if (eval->parsed()) {
            return cmd_eval(runs, judgments, ks, out, strict);
        }
        if (serve->parsed()) {
            return cmd_serve(config, host, port);
        }
        if (enrich->parsed()) {
            return cmd_enrich(config, endpoint, out);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "geosearch: %s\n", e.what());
        return 1;
    }
    return 0;
}
