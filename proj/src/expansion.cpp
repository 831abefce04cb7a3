// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/expansion.hpp"

#include <algorithm>
#include <stdexcept>

#include "geosearch/text.hpp"

namespace geosearch {

PlatialExpansion expand_place(const Place& place, const Gazetteer& gaz, std::size_t k_subdiv, double self_mass,
                              bool subdivision_aliases) {
    if (!(self_mass > 0.0 && self_mass <= 1.0)) {
        throw std::invalid_argument("self_mass must be in (0, 1]");
    }
    PlatialExpansion out;
    out.source = &place;
    auto subs = gaz.subdivisions(place, k_subdiv);
    const double rest = 1.0 - self_mass;
    const bool expand = !subs.empty() && rest > 0.0;

    out.terms.push_back({place.place_id, {normalize_phrase(place.canonical_name)}, expand ? self_mass : 1.0,
                         TermKind::self});
    if (!expand) {
        return out;
    }
    const double each = rest / static_cast<double>(subs.size());
    for (const Place* sub : subs) {
        PlatialTerm t{sub->place_id, {normalize_phrase(sub->canonical_name)}, each, TermKind::subdivision};
        if (subdivision_aliases) {
            for (const auto& a : sub->aliases) {
                if (a != t.phrases.front()) {
                    t.phrases.push_back(a);
                }
            }
        }
        out.terms.push_back(std::move(t));
    }
    return out;
}

ThematicExpansion thematic_weights(const Token& source, std::span<const Neighbor> neighbor_list) {
    ThematicExpansion out;
    out.source = source;
    std::vector<Neighbor> kept;
    for (const auto& n : neighbor_list) {
        if (n.cosine > 0.0 && n.word != source.surface) {
            kept.push_back(n);
        }
    }
    // Sum in a canonical order so the weights do not depend on input order.
    std::sort(kept.begin(), kept.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.cosine != b.cosine) {
            return a.cosine > b.cosine;
        }
        return a.word < b.word;
    });
    double denom = 1.0;
    for (const auto& n : kept) {
        denom += n.cosine;
    }
    out.terms.push_back({source.surface, 1.0 / denom, 1.0});
    for (const auto& n : kept) {
        out.terms.push_back({n.word, n.cosine / denom, n.cosine});
    }
    std::stable_sort(out.terms.begin(), out.terms.end(), [](const ThematicTermWeight& a, const ThematicTermWeight& b) {
        if (a.weight != b.weight) {
            return a.weight > b.weight;
        }
        return a.word < b.word;
    });
    return out;
}

ThematicExpansion expand_term(const Token& term, const EmbeddingTable& table, std::size_t k_neighbors,
                              double min_cos) {
    auto list = neighbors(table, term.surface, k_neighbors, min_cos);
    return thematic_weights(term, list);
}

QueryExpansion expand_query(const ParsedQuery& pq, const Gazetteer& gaz, const EmbeddingTable& table,
                            const ExpansionSettings& settings) {
    QueryExpansion out;
    out.platial.reserve(pq.places.size());
    for (const auto& rp : pq.places) {
        out.platial.push_back(
            expand_place(*rp.place, gaz, settings.k_subdiv, settings.self_mass, settings.subdivision_aliases));
    }
    out.thematic.reserve(pq.thematic_terms.size());
    for (const auto& t : pq.thematic_terms) {
        out.thematic.push_back(expand_term(t.token, table, settings.k_neighbors, settings.min_cos));
    }
    return out;
}

}  // namespace geosearch
