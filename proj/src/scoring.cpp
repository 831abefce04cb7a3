// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geosearch/error.hpp"

namespace geosearch {

Lambdas::Lambdas() : w_{0.25, 0.25, 0.25, 0.25} {}

Lambdas::Lambdas(double platial, double spatial, double concepts, double doc) : w_{platial, spatial, concepts, doc} {
    double sum = 0.0;
    for (double w : w_) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ConfigError("lambda weights must be finite and non-negative");
        }
        sum += w;
    }
    if (sum <= 0.0) {
        throw ConfigError("at least one lambda weight must be positive");
    }
    for (double& w : w_) {
        w /= sum;
    }
}

Lambdas Lambdas::restricted(bool has_places, bool has_thematic) const {
    const std::array<bool, kComponentCount> active = {has_places, has_places, has_thematic, has_thematic};
    double mass = 0.0;
    std::size_t n_active = 0;
    for (std::size_t i = 0; i < kComponentCount; ++i) {
        if (active[i]) {
            mass += w_[i];
            ++n_active;
        }
    }
    std::array<double, kComponentCount> out{};
    if (n_active == 0) {
        return Lambdas(out);
    }
    for (std::size_t i = 0; i < kComponentCount; ++i) {
        if (active[i]) {
            out[i] = mass > 0.0 ? w_[i] / mass : 1.0 / static_cast<double>(n_active);
        }
    }
    return Lambdas(out);
}

// ---------------------------------------------------------------------------

GaussianKernel place_kernel(const Place& place, double bandwidth_scale, double default_radius_km) {
    if (!(bandwidth_scale > 0.0) || !(default_radius_km > 0.0)) {
        throw std::invalid_argument("kernel bandwidth parameters must be positive");
    }
    if (place.bbox) {
        const double half_diag = 0.5 * haversine_km(place.bbox->south_west(), place.bbox->north_east());
        const double base = half_diag > 0.0 ? half_diag : default_radius_km;
        return {place.bbox->center(), bandwidth_scale * base};
    }
    if (place.center) {
        return {*place.center, bandwidth_scale * default_radius_km};
    }
    throw NoGeometry("place '" + place.place_id + "' has neither a bounding box nor a center");
}

double gauss_at_distance(double distance_km, double sigma_km) {
    return std::exp(-(distance_km * distance_km) / (2.0 * sigma_km * sigma_km));
}

double gauss_score(const GaussianKernel& kernel, const CatalogItem& item) {
    auto p = item.representative_point();
    if (!p) {
        return 0.0;
    }
    return gauss_at_distance(haversine_km(kernel.center, *p), kernel.sigma_km);
}

double sim_spatial(const ParsedQuery& pq, const CatalogItem& item, double bandwidth_scale, double default_radius_km) {
    double s = 0.0;
    for (const auto& rp : pq.places) {
        if (!rp.place->bbox && !rp.place->center) {
            continue;
        }
        s += rp.weight * gauss_score(place_kernel(*rp.place, bandwidth_scale, default_radius_km), item);
    }
    return s;
}

double overlap_similarity(double area_q, double area_d, double area_intersection) {
    if (!(area_q > 0.0) || !(area_d > 0.0)) {
        throw DegenerateBox("overlap similarity needs positive areas");
    }
    return (area_intersection / area_q + area_intersection / area_d) * 0.5;
}

double sim_spatial_overlap(const BoundingBox& query_box, const BoundingBox& item_box) {
    const double aq = box_area_km2(query_box);
    const double ad = box_area_km2(item_box);
    if (!(aq > 0.0) || !(ad > 0.0)) {
        throw DegenerateBox("bounding box with zero area");
    }
    const double ai = std::min({intersection_area_km2(query_box, item_box), aq, ad});
    return std::clamp(overlap_similarity(aq, ad, ai), 0.0, 1.0);
}

// ---------------------------------------------------------------------------

namespace {

double field_weighted_matches(const InvertedIndex& index, std::span<const Token> phrase, DocId doc,
                              const FieldWeights& wf) {
    double s = 0.0;
    for (Field f : kAllFields) {
        s += wf[f] * static_cast<double>(index.match_count(phrase, doc, f));
    }
    return s;
}

}  // namespace

double sim_platial(const ParsedQuery& pq, std::span<const PlatialExpansion> expansions, const InvertedIndex& index,
                   DocId doc, const FieldWeights& wf) {
    if (expansions.size() != pq.places.size()) {
        throw std::invalid_argument("platial expansions must parallel the recognized places");
    }
    double outer = 0.0;
    for (std::size_t i = 0; i < pq.places.size(); ++i) {
        double inner = 0.0;
        for (const auto& term : expansions[i].terms) {
            double m = 0.0;
            for (const auto& phrase : term.phrases) {
                m += field_weighted_matches(index, analyze(phrase, index.analyzer()), doc, wf);
            }
            inner += term.weight * m;
        }
        outer += pq.places[i].weight * inner;
    }
    return outer;
}

double sim_concept(const ParsedQuery& pq, std::span<const ThematicExpansion> expansions, const InvertedIndex& index,
                   DocId doc, const FieldWeights& wf) {
    if (expansions.size() != pq.thematic_terms.size()) {
        throw std::invalid_argument("thematic expansions must parallel the thematic terms");
    }
    double outer = 0.0;
    for (std::size_t i = 0; i < pq.thematic_terms.size(); ++i) {
        double inner = 0.0;
        for (const auto& term : expansions[i].terms) {
            inner += term.weight * field_weighted_matches(index, analyze(term.word, index.analyzer()), doc, wf);
        }
        outer += pq.thematic_terms[i].weight * inner;
    }
    return outer;
}

double sim_doc(std::span<const double> query_vector, const DocEmbedding& doc) {
    return cosine(query_vector, doc.vector);
}

double sim_doc(const ParsedQuery& pq, const EmbeddingTable& table, const DocEmbedding& doc) {
    auto tokens = pq.thematic_tokens();
    return sim_doc(query_embedding(table, tokens), doc);
}

std::vector<MatchClause> platial_clauses(const ParsedQuery& pq, std::span<const PlatialExpansion> expansions,
                                         const AnalyzerConfig& analyzer) {
    if (expansions.size() != pq.places.size()) {
        throw std::invalid_argument("platial expansions must parallel the recognized places");
    }
    std::vector<MatchClause> out;
    for (std::size_t i = 0; i < expansions.size(); ++i) {
        for (const auto& term : expansions[i].terms) {
            for (const auto& phrase : term.phrases) {
                auto tokens = analyze(phrase, analyzer);
                if (!tokens.empty()) {
                    out.push_back({std::move(tokens), pq.places[i].weight * term.weight, i, phrase});
                }
            }
        }
    }
    return out;
}

std::vector<MatchClause> concept_clauses(const ParsedQuery& pq, std::span<const ThematicExpansion> expansions,
                                         const AnalyzerConfig& analyzer) {
    if (expansions.size() != pq.thematic_terms.size()) {
        throw std::invalid_argument("thematic expansions must parallel the thematic terms");
    }
    std::vector<MatchClause> out;
    for (std::size_t i = 0; i < expansions.size(); ++i) {
        for (const auto& term : expansions[i].terms) {
            auto tokens = analyze(term.word, analyzer);
            if (!tokens.empty()) {
                out.push_back({std::move(tokens), pq.thematic_terms[i].weight * term.weight, i, term.word});
            }
        }
    }
    return out;
}

double clause_score(std::span<const MatchClause> clauses, const InvertedIndex& index, DocId doc,
                    const FieldWeights& wf) {
    double s = 0.0;
    for (const auto& c : clauses) {
        s += c.weight * field_weighted_matches(index, c.tokens, doc, wf);
    }
    return s;
}

// ---------------------------------------------------------------------------

double ScoreBreakdown::normalized(Component c) const noexcept {
    switch (c) {
        case Component::platial: return platial_n;
        case Component::spatial: return spatial_n;
        case Component::concepts: return concepts_n;
        case Component::doc: return doc_n;
    }
    return 0.0;
}

void normalize_components(std::span<ScoreBreakdown> rows) {
    double max_p = 0.0, max_s = 0.0, max_c = 0.0, max_d = 0.0;
    for (const auto& r : rows) {
        max_p = std::max(max_p, r.platial);
        max_s = std::max(max_s, r.spatial);
        max_c = std::max(max_c, r.concepts);
        max_d = std::max(max_d, std::max(r.doc, 0.0));
    }
    auto scale = [](double v, double max) { return max > 0.0 ? std::clamp(v / max, 0.0, 1.0) : 0.0; };
    for (auto& r : rows) {
        r.platial_n = scale(r.platial, max_p);
        r.spatial_n = scale(r.spatial, max_s);
        r.concepts_n = scale(r.concepts, max_c);
        r.doc_n = scale(std::max(r.doc, 0.0), max_d);
    }
}

void combine(std::span<ScoreBreakdown> rows, const Lambdas& lambdas) {
    for (auto& r : rows) {
        r.combined = lambdas.platial() * r.platial_n + lambdas.spatial() * r.spatial_n +
                     lambdas.concepts() * r.concepts_n + lambdas.doc() * r.doc_n;
    }
}

void rank_by_combined(std::vector<ScoreBreakdown>& rows, std::size_t k) {
    std::erase_if(rows, [](const ScoreBreakdown& r) { return !(r.combined > 0.0); });
    std::sort(rows.begin(), rows.end(), [](const ScoreBreakdown& a, const ScoreBreakdown& b) {
        if (a.combined != b.combined) {
            return a.combined > b.combined;
        }
        return a.item_id < b.item_id;
    });
    if (rows.size() > k) {
        rows.resize(k);
    }
}

namespace {

// Indices of the top `m` positive values, ties by lower index.
std::vector<DocId> top_positive(const std::vector<double>& values, std::size_t m) {
    std::vector<DocId> ids;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] > 0.0) {
            ids.push_back(static_cast<DocId>(i));
        }
    }
    auto by_value = [&](DocId a, DocId b) {
        if (values[a] != values[b]) {
            return values[a] > values[b];
        }
        return a < b;
    };
    if (ids.size() > m) {
        std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(m), ids.end(), by_value);
        ids.resize(m);
    }
    return ids;
}

}  // namespace

SemanticResult semantic_search(const SearchContext& ctx, const ParsedQuery& pq, const SearchSettings& settings,
                               std::size_t k, CandidatePolicy policy) {
    const std::size_t n = ctx.catalog.size();
    if (ctx.index.n_docs() != n || ctx.doc_embeddings.size() != n) {
        throw std::invalid_argument("search context components cover different item sets");
    }
    SemanticResult result{pq, expand_query(pq, ctx.gazetteer, ctx.table, settings.expansion),
                          settings.lambdas.restricted(!pq.places.empty(), !pq.thematic_terms.empty()), {}, 0, {}};

    const auto& analyzer = ctx.index.analyzer();
    const auto p_clauses = platial_clauses(pq, result.expansion.platial, analyzer);
    const auto c_clauses = concept_clauses(pq, result.expansion.thematic, analyzer);
    const auto thematic = pq.thematic_tokens();
    const Vector qvec = query_embedding(ctx.table, thematic);
    const bool has_qvec = euclidean_norm(qvec) > 0.0;

    for (const auto& rp : pq.places) {
        if (rp.place->bbox || rp.place->center) {
            result.kernels.push_back(place_kernel(*rp.place, settings.bandwidth_scale, settings.default_radius_km));
        } else {
            result.kernels.push_back({GeoPoint{}, 0.0});
        }
    }

    // Spatial and doc components are needed for every item to pick the
    // top-M pools, so compute them once up front.
    std::vector<double> spatial(n, 0.0);
    std::vector<double> doc_sim(n, 0.0);
    std::vector<char> candidate(n, policy == CandidatePolicy::exhaustive ? 1 : 0);
    for (std::size_t i = 0; i < pq.places.size(); ++i) {
        const auto& kernel = result.kernels[i];
        if (kernel.sigma_km <= 0.0) {
            continue;
        }
        std::vector<double> g(n, 0.0);
        for (std::size_t d = 0; d < n; ++d) {
            g[d] = gauss_score(kernel, ctx.catalog[d]);
            spatial[d] += pq.places[i].weight * g[d];
        }
        for (DocId d : top_positive(g, settings.candidate_pool)) {
            candidate[d] = 1;
        }
    }
    if (has_qvec) {
        for (std::size_t d = 0; d < n; ++d) {
            doc_sim[d] = sim_doc(qvec, ctx.doc_embeddings[d]);
        }
        for (DocId d : top_positive(doc_sim, settings.candidate_pool)) {
            candidate[d] = 1;
        }
    }
    for (const auto* clauses : {&p_clauses, &c_clauses}) {
        for (const auto& c : *clauses) {
            if (c.weight <= 0.0) {
                continue;
            }
            for (DocId d : ctx.index.candidate_docs(c.tokens)) {
                candidate[d] = 1;
            }
        }
    }

    std::vector<ScoreBreakdown> rows;
    for (std::size_t d = 0; d < n; ++d) {
        if (!candidate[d]) {
            continue;
        }
        const auto doc = static_cast<DocId>(d);
        ScoreBreakdown r;
        r.item_id = ctx.catalog[d].id;
        r.ordinal = doc;
        r.platial = clause_score(p_clauses, ctx.index, doc, settings.field_weights);
        r.spatial = spatial[d];
        r.concepts = clause_score(c_clauses, ctx.index, doc, settings.field_weights);
        r.doc = doc_sim[d];
        rows.push_back(std::move(r));
    }
    result.candidates = rows.size();
    normalize_components(rows);
    combine(rows, result.lambdas);
    rank_by_combined(rows, k);
    result.hits = std::move(rows);
    return result;
}

ItemExplanation explain_item(const SearchContext& ctx, const SemanticResult& result, DocId doc) {
    ItemExplanation out;
    const auto& analyzer = ctx.index.analyzer();
    auto collect = [&](const std::vector<MatchClause>& clauses, std::vector<TermMatch>& sink) {
        for (const auto& c : clauses) {
            for (Field f : kAllFields) {
                auto m = ctx.index.match_count(c.tokens, doc, f);
                if (m > 0) {
                    sink.push_back({c.group, c.label, f, m});
                }
            }
        }
    };
    collect(platial_clauses(result.query, result.expansion.platial, analyzer), out.platial_matches);
    collect(concept_clauses(result.query, result.expansion.thematic, analyzer), out.concept_matches);

    const auto& item = ctx.catalog[doc];
    auto where = item.representative_point();
    for (std::size_t i = 0; i < result.query.places.size(); ++i) {
        const auto& kernel = result.kernels[i];
        KernelDistance kd{result.query.places[i].place->place_id, 0.0, kernel.sigma_km, 0.0};
        if (where && kernel.sigma_km > 0.0) {
            kd.distance_km = haversine_km(kernel.center, *where);
            kd.gauss = gauss_at_distance(kd.distance_km, kernel.sigma_km);
        } else {
            kd.distance_km = -1.0;
        }
        out.kernels.push_back(kd);
    }
    return out;
}

}  // namespace geosearch
