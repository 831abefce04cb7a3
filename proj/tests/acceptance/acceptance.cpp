// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "geosearch/engine.hpp"
#include "geosearch/error.hpp"
#include "geosearch/eval.hpp"
#include "geosearch/scoring.hpp"
#include "oracles.hpp"

using namespace geosearch;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

const Engine& fixture_engine() {
    static const Engine e = assemble_engine(load_config(oracle::fixture_path("engine.conf")));
    return e;
}

Outcome dcg_correctness() {
    std::vector<double> r = {4, 3, 2};
    const double v = dcg_at_k(r, 3);
    if (std::abs(v - 8.26186) > 1e-5) {
        return {false, fmt::format("dcg([4,3,2],3) = {:.8f}", v)};
    }
    std::mt19937_64 rng(20240607);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        std::vector<double> g(1 + rng() % 12);
        for (double& x : g) {
            x = static_cast<double>(rng() % 5);
        }
        const std::size_t k = 1 + rng() % 12;
        worst = std::max(worst, std::abs(dcg_at_k(g, k) - oracle::dcg_spreadsheet(g, k)));
    }
    return {worst <= 1e-9, fmt::format("dcg([4,3,2],3) = {:.6f}; max deviation over 10 random vectors {:.2e}", v, worst)};
}

Outcome recall_scenario() {
    const auto& e = fixture_engine();
    const std::string q = "Natural disaster in California";
    const auto ord = e.catalog().ordinal_of("item01");
    if (!ord) {
        return {false, "fixture item01 missing"};
    }
    const auto doc = static_cast<DocId>(*ord);
    const double lucene = lucene_baseline_score(e.index(), analyze(q, e.index().analyzer()), doc,
                                                e.settings().field_weights);
    const auto r = e.search_semantic(q, 5);
    std::size_t rank = 0;
    double combined = 0.0;
    for (std::size_t i = 0; i < r.hits.size(); ++i) {
        if (r.hits[i].item_id == "item01") {
            rank = i + 1;
            combined = r.hits[i].combined;
        }
    }
    const bool pass = lucene == 0.0 && combined > 0.0 && rank >= 1 && rank <= 5;
    return {pass, fmt::format("lucene = {}, semantic combined = {:.6f}, semantic rank = {}", lucene, combined,
                              rank == 0 ? std::string("absent") : std::to_string(rank))};
}

Outcome decay_scenario() {
    const auto& e = fixture_engine();
    const auto pq = e.parse("Weather in Los Angeles");
    const CatalogItem* oxnard = e.catalog().find("item04");
    const CatalogItem* africa = e.catalog().find("item05");
    if (pq.places.size() != 1 || pq.places[0].place->place_id != "los_angeles" || !oxnard || !africa ||
        !oxnard->bbox || !africa->bbox || !pq.places[0].place->bbox) {
        return {false, "fixture does not set up the scenario"};
    }
    const auto& s = e.settings();
    const double so = sim_spatial(pq, *oxnard, s.bandwidth_scale, s.default_radius_km);
    const double sa = sim_spatial(pq, *africa, s.bandwidth_scale, s.default_radius_km);
    const auto& la = *pq.places[0].place->bbox;
    const double oo = sim_spatial_overlap(la, *oxnard->bbox);
    const double oa = sim_spatial_overlap(la, *africa->bbox);
    return {so > sa && oo == 0.0 && oa == 0.0,
            fmt::format("spatial Oxnard = {:.6g}, Southern Africa = {:.6g}; overlap {} and {}", so, sa, oo, oa)};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(424242);
    const auto& gaz = oracle::fixture_gazetteer();
    const AnalyzerConfig analyzer = AnalyzerConfig::english();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_platial = 0.0, worst_concept = 0.0, worst_doc = 0.0, worst_lucene = 0.0;
    std::size_t order_mismatches = 0, queries = 0;
    for (int world = 0; world < 100; ++world) {
        auto w = oracle::random_world(rng, 30, 5, 8);
        InvertedIndex index(w.catalog, analyzer);
        FieldWeights wf(u(rng) + 0.05, u(rng), u(rng), u(rng));
        ExpansionSettings s;
        s.k_subdiv = 1 + rng() % 4;
        s.self_mass = 0.2 + 0.8 * u(rng);
        s.k_neighbors = rng() % 6;
        s.min_cos = u(rng) - 0.5;

        for (DocId d = 0; d < w.catalog.size(); ++d) {
            const auto mine = doc_embedding(w.table, index, d);
            const auto ref = oracle::doc_vector(w.catalog, d, w.table, analyzer);
            for (std::size_t i = 0; i < ref.size(); ++i) {
                worst_doc = std::max(worst_doc, std::abs(mine.vector[i] - ref[i]));
            }
        }
        for (const auto& q : w.queries) {
            ++queries;
            const auto hits = baseline_search(index, q, w.catalog.size(), wf);
            const auto ref = oracle::lucene_ranking(w.catalog, q, w.catalog.size(), analyzer, wf);
            if (hits.size() != ref.size()) {
                ++order_mismatches;
            } else {
                for (std::size_t i = 0; i < hits.size(); ++i) {
                    order_mismatches += hits[i].id != ref[i].id ? 1 : 0;
                    worst_lucene = std::max(worst_lucene, std::abs(hits[i].score - ref[i].score));
                }
            }
            ParsedQuery pq;
            try {
                pq = parse_query(q, gaz, analyzer);
            } catch (const EmptyQuery&) {
                continue;
            }
            const auto ex = expand_query(pq, gaz, w.table, s);
            for (DocId d = 0; d < w.catalog.size(); ++d) {
                worst_platial = std::max(worst_platial, std::abs(sim_platial(pq, ex.platial, index, d, wf) -
                                                                 oracle::platial(pq, ex, w.catalog, d, analyzer, wf)));
                worst_concept =
                    std::max(worst_concept, std::abs(sim_concept(pq, ex.thematic, index, d, wf) -
                                                     oracle::concept_score(pq, ex, w.catalog, d, analyzer, wf)));
            }
        }
    }
    const bool pass = worst_platial <= 1e-9 && worst_concept <= 1e-9 && worst_doc <= 1e-9 && worst_lucene <= 1e-9 &&
                      order_mismatches == 0;
    return {pass, fmt::format("100 corpora, {} queries; max |diff| platial {:.1e}, concept {:.1e}, doc vector {:.1e}, "
                              "baseline {:.1e}; baseline order mismatches {}",
                              queries, worst_platial, worst_concept, worst_doc, worst_lucene, order_mismatches)};
}

Outcome normalization_invariants() {
    std::mt19937_64 rng(777);
    const auto& e = fixture_engine();
    const auto& gaz = e.gazetteer();
    const auto& analyzer = e.index().analyzer();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    auto track = [&](double sum) { worst = std::max(worst, std::abs(sum - 1.0)); };
    std::size_t checked = 0, order_changes = 0;

    const std::vector<std::string> words = {"chicago", "traffic", "fire",    "disaster", "california", "the",
                                            "in",      "new",     "york",    "city",     "flood",     "sonoma",
                                            "county",  "weather", "la",      "hurricane", "miami",    "zzz",
                                            "school",  "crime",   "orleans", "park",     "road",      "census"};
    for (int trial = 0; trial < 300; ++trial) {
        std::string q;
        for (std::size_t i = 0, n = 1 + rng() % 8; i < n; ++i) {
            q += words[rng() % words.size()] + " ";
        }
        ParsedQuery pq;
        try {
            pq = parse_query(q, gaz, analyzer);
        } catch (const EmptyQuery&) {
            continue;
        }
        ++checked;
        double geo = 0.0, them = 0.0;
        for (const auto& p : pq.places) {
            geo += p.weight;
        }
        for (const auto& t : pq.thematic_terms) {
            them += t.weight;
        }
        if (!pq.places.empty()) {
            track(geo);
        }
        if (!pq.thematic_terms.empty()) {
            track(them);
        }
        ExpansionSettings s;
        s.k_subdiv = 1 + rng() % 5;
        s.self_mass = 0.05 + 0.95 * u(rng);
        s.k_neighbors = rng() % 8;
        s.min_cos = u(rng) - 0.3;
        const auto ex = expand_query(pq, gaz, e.table(), s);
        for (const auto& pe : ex.platial) {
            double sum = 0.0;
            for (const auto& t : pe.terms) {
                sum += t.weight;
            }
            track(sum);
        }
        for (const auto& te : ex.thematic) {
            double sum = 0.0;
            for (const auto& t : te.terms) {
                sum += t.weight;
            }
            track(sum);
        }
        FieldWeights wf(u(rng) + 0.01, u(rng), u(rng), u(rng));
        double fsum = 0.0;
        for (Field f : kAllFields) {
            fsum += wf[f];
        }
        track(fsum);

        SearchSettings base = e.settings();
        base.lambdas = Lambdas(u(rng) + 0.01, u(rng), u(rng), u(rng));
        const double c = std::exp(6.0 * u(rng) - 3.0);
        SearchSettings scaled = base;
        scaled.lambdas = Lambdas(base.lambdas.platial() * c, base.lambdas.spatial() * c, base.lambdas.concepts() * c,
                                 base.lambdas.doc() * c);
        const auto a = semantic_search(e.context(), pq, base, 30);
        const auto b = semantic_search(e.context(), pq, scaled, 30);
        if (a.hits.size() != b.hits.size()) {
            ++order_changes;
            continue;
        }
        for (std::size_t i = 0; i < a.hits.size(); ++i) {
            order_changes += a.hits[i].item_id != b.hits[i].item_id ? 1 : 0;
        }
    }
    return {worst <= 1e-12 && order_changes == 0 && checked > 0,
            fmt::format("{} queries; max |sum - 1| = {:.1e}; ordering changes under lambda scaling: {}", checked, worst,
                        order_changes)};
}

Outcome mini_benchmark() {
    const auto& e = fixture_engine();
    const auto queries = load_queries(oracle::benchmark_path("queries.tsv"));
    const auto judgments = load_judgments(oracle::benchmark_path("judgments.tsv"));
    const auto runs = run_benchmark(e, queries, 10);
    const std::vector<std::size_t> ks = {10};
    const auto report = comparison_report(runs, judgments, ks, true);
    const auto& [first, second] = report.models;
    const double lucene = first == kLuceneModel ? report.averages.first.at(10) : report.averages.second.at(10);
    const double semantic = first == kSemanticModel ? report.averages.first.at(10) : report.averages.second.at(10);
    return {semantic > lucene && report.rows.size() == 20,
            fmt::format("{} queries; average DCG@10 semantic {:.6f}, lucene {:.6f}", report.rows.size(), semantic,
                        lucene)};
}

Outcome dcg_ordering() {
    std::mt19937_64 rng(99);
    std::size_t perms = 0, violations = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> g(n);
            for (double& x : g) {
                x = static_cast<double>(rng() % 5);
            }
            auto best = g;
            std::sort(best.begin(), best.end(), std::greater<>());
            std::sort(g.begin(), g.end());
            for (std::size_t k = 1; k <= n; ++k) {
                const double top = dcg_at_k(best, k);
                auto perm = g;
                do {
                    ++perms;
                    violations += dcg_at_k(perm, k) > top + 1e-12 ? 1 : 0;
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
        }
    }
    return {violations == 0, fmt::format("{} permutations checked, {} beat the descending order", perms, violations)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> checks = {
        {"dcg-correctness", dcg_correctness},
        {"recall-scenario", recall_scenario},
        {"distance-decay-scenario", decay_scenario},
        {"oracle-equivalence", oracle_equivalence},
        {"normalization-invariants", normalization_invariants},
        {"mini-benchmark-direction", mini_benchmark},
        {"dcg-ordering", dcg_ordering},
    };
    int failed = 0;
    for (const auto& [name, check] : checks) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& ex) {
            o = {false, std::string("threw: ") + ex.what()};
        }
        const auto ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        fmt::print("{} {} ({:.0f} ms): {}\n", o.pass ? "PASS" : "FAIL", name, ms, o.detail);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
