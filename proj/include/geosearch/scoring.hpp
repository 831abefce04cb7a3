// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "geosearch/catalog.hpp"
#include "geosearch/embeddings.hpp"
#include "geosearch/expansion.hpp"
#include "geosearch/gazetteer.hpp"
#include "geosearch/index.hpp"
#include "geosearch/query.hpp"

namespace geosearch {

enum class Component : std::size_t { platial = 0, spatial, concepts, doc };
inline constexpr std::size_t kComponentCount = 4;

/// Component weights, stored normalized to sum 1.
class Lambdas {
public:
    Lambdas();  // uniform
    /// Throws ConfigError when any weight is negative or all are zero.
    Lambdas(double platial, double spatial, double concepts, double doc);

    double operator[](Component c) const noexcept { return w_[static_cast<std::size_t>(c)]; }
    double platial() const noexcept { return w_[0]; }
    double spatial() const noexcept { return w_[1]; }
    double concepts() const noexcept { return w_[2]; }
    double doc() const noexcept { return w_[3]; }

    /**
     * Weights restricted to the components a query can activate: platial
     * and spatial need places, concepts and doc need thematic terms. The
     * inactive mass moves proportionally onto the active components; if the
     * active ones carry no mass at all they share it uniformly.
     */
    Lambdas restricted(bool has_places, bool has_thematic) const;

    friend bool operator==(const Lambdas&, const Lambdas&) = default;

private:
    explicit Lambdas(std::array<double, kComponentCount> w) : w_(w) {}
    std::array<double, kComponentCount> w_;
};

// ---------------------------------------------------------------------------
// Spatial components

struct GaussianKernel {
    GeoPoint center;
    double sigma_km = 1.0;
};

inline constexpr double kDefaultRadiusKm = 10.0;

/**
 * Kernel at the place's bbox center (or its center point without a bbox).
 * sigma is bandwidth_scale times half the great-circle length of the bbox
 * diagonal; bbox-less places and zero-diagonal boxes use default_radius_km.
 * Throws NoGeometry when the place has neither.
 */
GaussianKernel place_kernel(const Place& place, double bandwidth_scale, double default_radius_km = kDefaultRadiusKm);

double gauss_at_distance(double distance_km, double sigma_km);

/// exp(-d^2 / (2 sigma^2)) to the item's representative point; 0 without geometry.
double gauss_score(const GaussianKernel& kernel, const CatalogItem& item);

/// Sum over query places of w_geo * gauss. Places without geometry add 0.
double sim_spatial(const ParsedQuery& pq, const CatalogItem& item, double bandwidth_scale,
                   double default_radius_km = kDefaultRadiusKm);

/// (A(q&d)/A(q) + A(q&d)/A(d)) / 2 on precomputed areas.
double overlap_similarity(double area_q, double area_d, double area_intersection);

/// Area-overlap similarity of two boxes. Throws DegenerateBox on zero area.
double sim_spatial_overlap(const BoundingBox& query_box, const BoundingBox& item_box);

// ---------------------------------------------------------------------------
// Lexical components

/// Platial similarity as the literal sum over places, expansion terms and fields.
double sim_platial(const ParsedQuery& pq, std::span<const PlatialExpansion> expansions, const InvertedIndex& index,
                   DocId doc, const FieldWeights& wf);

/// Concept similarity as the literal sum over thematic terms, expansion terms and fields.
double sim_concept(const ParsedQuery& pq, std::span<const ThematicExpansion> expansions, const InvertedIndex& index,
                   DocId doc, const FieldWeights& wf);

/// Cosine of the query embedding and the doc vector; 0 when either is zero.
double sim_doc(const ParsedQuery& pq, const EmbeddingTable& table, const DocEmbedding& doc);
double sim_doc(std::span<const double> query_vector, const DocEmbedding& doc);

/// One analyzed phrase with its folded outer weights (w_geo * w_platial or
/// w_thematic * w_w2v). Summing weight * sum_f w_f * M over clauses equals
/// the nested platial/concept sums.
struct MatchClause {
    std::vector<Token> tokens;
    double weight = 0.0;
    std::size_t group = 0;  // index of the place or thematic term
    std::string label;      // phrase as written in the expansion
};

std::vector<MatchClause> platial_clauses(const ParsedQuery& pq, std::span<const PlatialExpansion> expansions,
                                         const AnalyzerConfig& analyzer);
std::vector<MatchClause> concept_clauses(const ParsedQuery& pq, std::span<const ThematicExpansion> expansions,
                                         const AnalyzerConfig& analyzer);
double clause_score(std::span<const MatchClause> clauses, const InvertedIndex& index, DocId doc,
                    const FieldWeights& wf);

// ---------------------------------------------------------------------------
// Combination and search

struct ScoreBreakdown {
    std::string item_id;
    DocId ordinal = 0;
    double platial = 0.0;
    double spatial = 0.0;
    double concepts = 0.0;
    double doc = 0.0;  // raw cosine, may be negative
    double platial_n = 0.0;
    double spatial_n = 0.0;
    double concepts_n = 0.0;
    double doc_n = 0.0;
    double combined = 0.0;

    double normalized(Component c) const noexcept;
};

/// Divides each component by its maximum over the set (negative doc
/// cosines clamped to 0 first); a component whose maximum is 0 becomes 0.
void normalize_components(std::span<ScoreBreakdown> rows);
/// combined = sum_c lambda_c * c_n.
void combine(std::span<ScoreBreakdown> rows, const Lambdas& lambdas);
/// Drops rows with combined <= 0, sorts by combined descending then item
/// id, keeps the first k.
void rank_by_combined(std::vector<ScoreBreakdown>& rows, std::size_t k);

struct SearchContext {
    const Catalog& catalog;
    const InvertedIndex& index;
    const EmbeddingTable& table;
    std::span<const DocEmbedding> doc_embeddings;  // parallel to catalog
    const Gazetteer& gazetteer;
};

struct SearchSettings {
    ExpansionSettings expansion;
    FieldWeights field_weights;
    Lambdas lambdas;
    double bandwidth_scale = 1.0;
    double default_radius_km = kDefaultRadiusKm;
    /// Per-source candidate pool size for the spatial and embedding sources.
    std::size_t candidate_pool = 200;
};

enum class CandidatePolicy {
    /// Lexical matches + spatial top-M per kernel + embedding top-M.
    pooled,
    /// Every item; the reference the pooled path is checked against.
    exhaustive,
};

struct SemanticResult {
    ParsedQuery query;
    QueryExpansion expansion;
    Lambdas lambdas;  // effective, after restriction to active components
    std::vector<GaussianKernel> kernels;  // parallel to query.places; sigma 0 when the place has no geometry
    std::size_t candidates = 0;
    std::vector<ScoreBreakdown> hits;
};

SemanticResult semantic_search(const SearchContext& ctx, const ParsedQuery& pq, const SearchSettings& settings,
                               std::size_t k, CandidatePolicy policy = CandidatePolicy::pooled);

struct TermMatch {
    std::size_t group = 0;
    std::string term;
    Field field = Field::title;
    std::uint32_t count = 0;
};

struct KernelDistance {
    std::string place_id;
    double distance_km = 0.0;
    double sigma_km = 0.0;
    double gauss = 0.0;
};

struct ItemExplanation {
    std::vector<TermMatch> platial_matches;
    std::vector<TermMatch> concept_matches;
    std::vector<KernelDistance> kernels;
};

ItemExplanation explain_item(const SearchContext& ctx, const SemanticResult& result, DocId doc);

}  // namespace geosearch
