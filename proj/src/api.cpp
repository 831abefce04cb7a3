// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/api.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>

#include <json.hpp>

#include "geosearch/error.hpp"
#include "geosearch/text.hpp"

namespace geosearch {

using Json = nlohmann::ordered_json;

double round6(double v) {
    const double r = std::round(v * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;
}

namespace {

class BadRequest : public Error {
public:
    using Error::Error;
};

ApiResponse ok(const Json& body) {
    return {200, body.dump()};
}

ApiResponse error_response(int status, const std::string& message) {
    return {status, Json{{"error", message}}.dump()};
}

// Runs a handler body, mapping client errors to 400 and anything else to 500.
template <class F>
ApiResponse guarded(const char* endpoint, F&& f) {
    try {
        return f();
    } catch (const BadRequest& e) {
        return error_response(400, e.what());
    } catch (const EmptyQuery& e) {
        return error_response(400, e.what());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "geosearch: %s failed: %s\n", endpoint, e.what());
        return error_response(500, "internal error");
    }
}

std::string required_query(const ApiParams& params) {
    auto it = params.find("q");
    if (it == params.end() || normalize_phrase(it->second).empty()) {
        throw BadRequest("parameter q must be non-empty");
    }
    return it->second;
}

std::size_t result_count(const ApiParams& params) {
    auto it = params.find("k");
    if (it == params.end()) {
        return kDefaultResultCount;
    }
    const std::string& s = it->second;
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
    if (ec != std::errc{} || ptr != s.data() + s.size() || k == 0 || k > kMaxResultCount) {
        throw BadRequest("parameter k must be an integer in [1, 100]");
    }
    return k;
}

Json bbox_json(const std::optional<BoundingBox>& box) {
    if (!box) {
        return nullptr;
    }
    return Json::array({round6(box->west), round6(box->south), round6(box->east), round6(box->north)});
}

Json point_json(const std::optional<GeoPoint>& p) {
    if (!p) {
        return nullptr;
    }
    return Json{{"lat", round6(p->lat)}, {"lon", round6(p->lon)}};
}

Json lambdas_json(const Lambdas& l) {
    return Json{{"platial", round6(l.platial())},
                {"spatial", round6(l.spatial())},
                {"concept", round6(l.concepts())},
                {"doc", round6(l.doc())}};
}

Json item_summary(const CatalogItem& item) {
    return Json{{"id", item.id},
                {"title", item.title},
                {"snippet", item.snippet},
                {"type", item.item_type},
                {"bbox", bbox_json(item.bbox)},
                {"location", point_json(item.location)}};
}

Json breakdown_json(const ScoreBreakdown& r) {
    return Json{{"platial", round6(r.platial_n)},
                {"spatial", round6(r.spatial_n)},
                {"concept", round6(r.concepts_n)},
                {"doc", round6(r.doc_n)},
                {"raw",
                 {{"platial", round6(r.platial)},
                  {"spatial", round6(r.spatial)},
                  {"concept", round6(r.concepts)},
                  {"doc", round6(r.doc)}}}};
}

// Score shown for a semantic hit: recombined from the rounded values the
// payload carries, so a client can reproduce it exactly.
double displayed_combined(const ScoreBreakdown& r, const Lambdas& l) {
    return round6(round6(l.platial()) * round6(r.platial_n) + round6(l.spatial()) * round6(r.spatial_n) +
                  round6(l.concepts()) * round6(r.concepts_n) + round6(l.doc()) * round6(r.doc_n));
}

Json semantic_results(const Engine& engine, const SemanticResult& result) {
    Json out = Json::array();
    for (const auto& hit : result.hits) {
        Json row = item_summary(engine.catalog()[hit.ordinal]);
        row["score"] = displayed_combined(hit, result.lambdas);
        row["breakdown"] = breakdown_json(hit);
        row["lambda"] = lambdas_json(result.lambdas);
        out.push_back(std::move(row));
    }
    return out;
}

Json lucene_results(const Engine& engine, const std::vector<SearchHit>& hits) {
    Json out = Json::array();
    for (const auto& hit : hits) {
        Json row = item_summary(engine.catalog()[hit.doc]);
        row["score"] = round6(hit.score);
        out.push_back(std::move(row));
    }
    return out;
}

Json explanation_json(const Engine& engine, const SemanticResult& result, const ScoreBreakdown& hit) {
    const ItemExplanation ex = explain_item(engine.context(), result, hit.ordinal);
    auto matches = [](const std::vector<TermMatch>& ms) {
        Json arr = Json::array();
        for (const auto& m : ms) {
            arr.push_back(Json{{"group", m.group}, {"term", m.term}, {"field", field_name(m.field)}, {"count", m.count}});
        }
        return arr;
    };
    Json kernels = Json::array();
    for (const auto& k : ex.kernels) {
        kernels.push_back(Json{{"place_id", k.place_id},
                               {"distance_km", k.distance_km < 0.0 ? Json(nullptr) : Json(round6(k.distance_km))},
                               {"sigma_km", round6(k.sigma_km)},
                               {"gauss", round6(k.gauss)}});
    }
    return Json{{"id", hit.item_id},
                {"score", displayed_combined(hit, result.lambdas)},
                {"breakdown", breakdown_json(hit)},
                {"platial_matches", matches(ex.platial_matches)},
                {"concept_matches", matches(ex.concept_matches)},
                {"kernels", std::move(kernels)}};
}

}  // namespace

ApiResponse handle_search(const Engine& engine, const ApiParams& params) {
    return guarded("search", [&] {
        const std::string q = required_query(params);
        const std::size_t k = result_count(params);
        std::string model = "semantic";
        if (auto it = params.find("model"); it != params.end()) {
            model = it->second;
        }
        if (model == "semantic") {
            return ok(semantic_results(engine, engine.search_semantic(q, k)));
        }
        if (model == "lucene") {
            if (analyze(q, engine.index().analyzer()).empty()) {
                throw EmptyQuery("query has no searchable terms");
            }
            return ok(lucene_results(engine, engine.search_lucene(q, k)));
        }
        throw BadRequest("parameter model must be 'semantic' or 'lucene'");
    });
}

ApiResponse handle_explain(const Engine& engine, const ApiParams& params) {
    return guarded("explain", [&] {
        const std::string q = required_query(params);
        const std::size_t k = result_count(params);
        const SemanticResult result = engine.search_semantic(q, k);
        const ParsedQuery& pq = result.query;

        Json places = Json::array();
        for (const auto& rp : pq.places) {
            places.push_back(Json{{"place_id", rp.place->place_id},
                                  {"name", rp.place->canonical_name},
                                  {"matched", rp.matched},
                                  {"weight", round6(rp.weight)}});
        }
        Json thematic = Json::array();
        for (const auto& t : pq.thematic_terms) {
            thematic.push_back(Json{{"token", t.token.surface}, {"weight", round6(t.weight)}});
        }
        Json platial = Json::array();
        for (const auto& pe : result.expansion.platial) {
            Json terms = Json::array();
            for (const auto& t : pe.terms) {
                terms.push_back(Json{{"place_id", t.place_id},
                                     {"phrase", t.phrase()},
                                     {"kind", t.kind == TermKind::self ? "self" : "subdivision"},
                                     {"weight", round6(t.weight)}});
            }
            platial.push_back(Json{{"place_id", pe.source->place_id}, {"terms", std::move(terms)}});
        }
        Json concepts = Json::array();
        for (const auto& te : result.expansion.thematic) {
            Json terms = Json::array();
            for (const auto& t : te.terms) {
                terms.push_back(Json{{"word", t.word}, {"weight", round6(t.weight)}, {"cosine", round6(t.cosine)}});
            }
            concepts.push_back(Json{{"token", te.source.surface}, {"terms", std::move(terms)}});
        }
        Json kernels = Json::array();
        for (std::size_t i = 0; i < pq.places.size(); ++i) {
            const auto& kern = result.kernels[i];
            kernels.push_back(Json{{"place_id", pq.places[i].place->place_id},
                                   {"center", kern.sigma_km > 0.0 ? point_json(kern.center) : Json(nullptr)},
                                   {"sigma_km", round6(kern.sigma_km)}});
        }
        Json items = Json::array();
        for (const auto& hit : result.hits) {
            items.push_back(explanation_json(engine, result, hit));
        }
        return ok(Json{{"query", pq.raw},
                       {"places", std::move(places)},
                       {"thematic_terms", std::move(thematic)},
                       {"platial_expansion", std::move(platial)},
                       {"thematic_expansion", std::move(concepts)},
                       {"lambda", lambdas_json(result.lambdas)},
                       {"kernels", std::move(kernels)},
                       {"candidates", result.candidates},
                       {"items", std::move(items)}});
    });
}

ApiResponse handle_item(const Engine& engine, std::string_view id) {
    return guarded("item", [&] {
        const CatalogItem* item = engine.catalog().find(id);
        if (item == nullptr) {
            return error_response(404, "unknown item '" + std::string(id) + "'");
        }
        Json body = item_summary(*item);
        body["description"] = item->description;
        return ok(body);
    });
}

ApiResponse handle_health(const Engine& engine) {
    return ok(Json{{"status", "ok"},
                   {"items", engine.catalog().size()},
                   {"places", engine.gazetteer().size()},
                   {"embeddings", engine.table().size()},
                   {"dimension", engine.table().dimension()}});
}

}  // namespace geosearch
