// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace geosearch {

/// rel_1 + sum_{i=2..k} rel_i / log2(i). Ranks past the sequence count 0.
/// Throws std::invalid_argument when k is 0.
double dcg_at_k(std::span<const double> rels, std::size_t k);

/// DCG@k divided by the DCG@k of `ideal` sorted descending. Not part of the
/// reported comparison; 0 when the ideal DCG is 0.
double ndcg_at_k(std::span<const double> rels, std::span<const double> ideal, std::size_t k);

inline constexpr double kMaxGrade = 4.0;

/// Graded judgments keyed by (query_id, item_id). Grades may be fractional
/// (assessor averages) but must lie in [0, 4].
class Judgments {
public:
    /// Throws FormatError on a duplicate pair or a grade outside [0, 4].
    void add(const std::string& query_id, const std::string& item_id, double grade);

    /// 0 for unjudged pairs.
    double grade(const std::string& query_id, const std::string& item_id) const;
    bool has_query(const std::string& query_id) const;
    std::vector<std::string> queries() const;
    std::size_t size() const noexcept { return n_; }

    /// All (item, grade) pairs of one query, by item id.
    const std::map<std::string, double>& grades_for(const std::string& query_id) const;

private:
    std::map<std::string, std::map<std::string, double>> by_query_;
    std::size_t n_ = 0;
};

/// Element-wise mean over several judgment sets; pairs missing from a set count 0.
Judgments average_judgments(std::span<const Judgments> sets);

/// Columns query_id, item_id, grade, tab separated, with a header line.
Judgments read_judgments(std::istream& in);
Judgments load_judgments(const std::string& path);

struct RunRanking {
    std::string query_id;
    std::string model;
    std::vector<std::string> items;  // rank 1 first
};

/// Throws FormatError when a ranking repeats an item.
void validate_run(const RunRanking& run);

/// Columns query_id, model, rank, item_id with a header line. Rows of one
/// ranking may appear in any order; ranks must be 1..n without gaps.
std::vector<RunRanking> read_runs(std::istream& in);
std::vector<RunRanking> load_runs(const std::string& path);
void write_runs(std::ostream& out, std::span<const RunRanking> runs);

using DcgByK = std::map<std::size_t, double>;

/// Grades the ranking against `judgments` (unjudged = 0) and reports DCG for
/// each k. In strict mode a query without any judgment throws UnknownQuery.
DcgByK evaluate_run(const RunRanking& run, const Judgments& judgments, std::span<const std::size_t> ks,
                    bool strict = false);

struct ComparisonRow {
    std::string query_id;
    std::pair<DcgByK, DcgByK> dcg;  // first, second model
};

struct ComparisonReport {
    std::pair<std::string, std::string> models;  // lexicographic order
    std::vector<std::size_t> ks;                 // ascending, unique
    std::vector<ComparisonRow> rows;             // by query id
    std::pair<DcgByK, DcgByK> averages;
};

/// Side-by-side DCG of exactly two models. Throws QuerySetMismatch when the
/// models do not cover the same queries, std::invalid_argument when the runs
/// do not name exactly two models or a (query, model) pair repeats.
ComparisonReport comparison_report(std::span<const RunRanking> runs, const Judgments& judgments,
                                   std::span<const std::size_t> ks, bool strict = false);

/**
 * Tab-separated report. Header: query_id, then per k (ascending)
 * `<first>_dcg@k`, `<second>_dcg@k`, `delta_dcg@k` (second minus first) and
 * `winner@k` (model tag, or "tie"). One row per query, then an `average`
 * row. Numbers use six decimals.
 */
void write_report(std::ostream& out, const ComparisonReport& report);

struct BenchmarkQuery {
    std::string id;
    std::string text;
};

/// Columns query_id, query with a header line; ids unique.
std::vector<BenchmarkQuery> read_queries(std::istream& in);
std::vector<BenchmarkQuery> load_queries(const std::string& path);

/// Parses "3,5,10" (blanks around entries allowed), keeping the order. Throws std::invalid_argument on an empty list or a non-positive entry.
std::vector<std::size_t> parse_ks(const std::string& text);

}  // namespace geosearch
