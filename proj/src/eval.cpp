// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "geosearch/error.hpp"

namespace geosearch {

double dcg_at_k(std::span<const double> rels, std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("dcg_at_k needs k >= 1");
    }
    const std::size_t n = std::min(k, rels.size());
    if (n == 0) {
        return 0.0;
    }
    double dcg = rels[0];
    for (std::size_t i = 2; i <= n; ++i) {
        dcg += rels[i - 1] / std::log2(static_cast<double>(i));
    }
    return dcg;
}

double ndcg_at_k(std::span<const double> rels, std::span<const double> ideal, std::size_t k) {
    std::vector<double> sorted(ideal.begin(), ideal.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const double best = dcg_at_k(sorted, k);
    return best > 0.0 ? dcg_at_k(rels, k) / best : 0.0;
}

void Judgments::add(const std::string& query_id, const std::string& item_id, double grade) {
    if (!(grade >= 0.0 && grade <= kMaxGrade)) {
        throw FormatError(fmt::format("grade {} for ({}, {}) outside [0, 4]", grade, query_id, item_id));
    }
    if (!by_query_[query_id].emplace(item_id, grade).second) {
        throw FormatError(fmt::format("duplicate judgment for ({}, {})", query_id, item_id));
    }
    ++n_;
}

double Judgments::grade(const std::string& query_id, const std::string& item_id) const {
    auto q = by_query_.find(query_id);
    if (q == by_query_.end()) {
        return 0.0;
    }
    auto it = q->second.find(item_id);
    return it == q->second.end() ? 0.0 : it->second;
}

bool Judgments::has_query(const std::string& query_id) const {
    return by_query_.contains(query_id);
}

std::vector<std::string> Judgments::queries() const {
    std::vector<std::string> out;
    for (const auto& [q, _] : by_query_) {
        out.push_back(q);
    }
    return out;
}

const std::map<std::string, double>& Judgments::grades_for(const std::string& query_id) const {
    static const std::map<std::string, double> empty;
    auto q = by_query_.find(query_id);
    return q == by_query_.end() ? empty : q->second;
}

Judgments average_judgments(std::span<const Judgments> sets) {
    if (sets.empty()) {
        throw std::invalid_argument("average_judgments needs at least one set");
    }
    std::map<std::pair<std::string, std::string>, double> sums;
    for (const auto& s : sets) {
        for (const auto& q : s.queries()) {
            for (const auto& [item, g] : s.grades_for(q)) {
                sums[{q, item}] += g;
            }
        }
    }
    Judgments out;
    const double n = static_cast<double>(sets.size());
    for (const auto& [key, sum] : sums) {
        out.add(key.first, key.second, sum / n);
    }
    return out;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
        if (tab == std::string::npos) {
            break;
        }
        start = tab + 1;
    }
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
}

double parse_double(const std::string& s, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw FormatError("not a number: '" + s + "'", line_no);
    }
    return v;
}

std::size_t parse_size(const std::string& s, std::size_t line_no) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw FormatError("not a positive integer: '" + s + "'", line_no);
    }
    return v;
}

// Yields the data rows of a tab-separated file with the given header.
template <class F>
void for_each_row(std::istream& in, const std::vector<std::string>& header, F&& f) {
    std::string line;
    std::size_t line_no = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto cols = split_tabs(line);
        if (!seen_header) {
            if (cols != header) {
                throw FormatError("unexpected header", line_no);
            }
            seen_header = true;
            continue;
        }
        if (cols.size() != header.size()) {
            throw FormatError(fmt::format("expected {} columns, found {}", header.size(), cols.size()), line_no);
        }
        f(cols, line_no);
    }
    if (!seen_header) {
        throw FormatError("missing header");
    }
}

}  // namespace

Judgments read_judgments(std::istream& in) {
    Judgments out;
    for_each_row(in, {"query_id", "item_id", "grade"}, [&](const auto& cols, std::size_t line_no) {
        try {
            out.add(cols[0], cols[1], parse_double(cols[2], line_no));
        } catch (const FormatError& e) {
            if (e.line() != 0) {
                throw;
            }
            throw FormatError(e.what(), line_no);
        }
    });
    return out;
}

Judgments load_judgments(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path);
    }
    return read_judgments(in);
}

void validate_run(const RunRanking& run) {
    std::set<std::string> seen;
    for (const auto& item : run.items) {
        if (!seen.insert(item).second) {
            throw FormatError(fmt::format("ranking ({}, {}) repeats item '{}'", run.query_id, run.model, item));
        }
    }
}

std::vector<RunRanking> read_runs(std::istream& in) {
    std::map<std::pair<std::string, std::string>, std::map<std::size_t, std::string>> grouped;
    std::vector<std::pair<std::string, std::string>> order;
    for_each_row(in, {"query_id", "model", "rank", "item_id"}, [&](const auto& cols, std::size_t line_no) {
        const std::size_t rank = parse_size(cols[2], line_no);
        if (rank == 0) {
            throw FormatError("ranks start at 1", line_no);
        }
        std::pair<std::string, std::string> key{cols[0], cols[1]};
        auto [it, fresh] = grouped.try_emplace(key);
        if (fresh) {
            order.push_back(key);
        }
        if (!it->second.emplace(rank, cols[3]).second) {
            throw FormatError(fmt::format("rank {} repeated", rank), line_no);
        }
    });
    std::vector<RunRanking> out;
    for (const auto& key : order) {
        RunRanking run{key.first, key.second, {}};
        std::size_t expect = 1;
        for (const auto& [rank, item] : grouped[key]) {
            if (rank != expect++) {
                throw FormatError(fmt::format("ranking ({}, {}) has a gap before rank {}", key.first, key.second, rank));
            }
            run.items.push_back(item);
        }
        validate_run(run);
        out.push_back(std::move(run));
    }
    return out;
}

std::vector<RunRanking> load_runs(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path);
    }
    return read_runs(in);
}

void write_runs(std::ostream& out, std::span<const RunRanking> runs) {
    out << "query_id\tmodel\trank\titem_id\n";
    for (const auto& run : runs) {
        for (std::size_t i = 0; i < run.items.size(); ++i) {
            out << run.query_id << '\t' << run.model << '\t' << (i + 1) << '\t' << run.items[i] << '\n';
        }
    }
}

DcgByK evaluate_run(const RunRanking& run, const Judgments& judgments, std::span<const std::size_t> ks, bool strict) {
    if (strict && !judgments.has_query(run.query_id)) {
        throw UnknownQuery("no judgments for query '" + run.query_id + "'");
    }
    std::vector<double> rels;
    rels.reserve(run.items.size());
    for (const auto& item : run.items) {
        rels.push_back(judgments.grade(run.query_id, item));
    }
    DcgByK out;
    for (std::size_t k : ks) {
        out[k] = dcg_at_k(rels, k);
    }
    return out;
}

ComparisonReport comparison_report(std::span<const RunRanking> runs, const Judgments& judgments,
                                   std::span<const std::size_t> ks, bool strict) {
    std::set<std::string> models;
    for (const auto& r : runs) {
        models.insert(r.model);
    }
    if (models.size() != 2) {
        throw std::invalid_argument(fmt::format("comparison needs exactly two models, found {}", models.size()));
    }
    ComparisonReport report;
    report.models = {*models.begin(), *std::next(models.begin())};
    std::set<std::size_t> kset(ks.begin(), ks.end());
    if (kset.empty() || kset.contains(0)) {
        throw std::invalid_argument("ks must be non-empty and positive");
    }
    report.ks.assign(kset.begin(), kset.end());

    std::map<std::string, const RunRanking*> first, second;
    for (const auto& r : runs) {
        auto& side = r.model == report.models.first ? first : second;
        if (!side.emplace(r.query_id, &r).second) {
            throw std::invalid_argument(fmt::format("duplicate ranking for ({}, {})", r.query_id, r.model));
        }
    }
    for (const auto& [q, _] : first) {
        if (!second.contains(q)) {
            throw QuerySetMismatch(fmt::format("query '{}' missing from model '{}'", q, report.models.second));
        }
    }
    for (const auto& [q, _] : second) {
        if (!first.contains(q)) {
            throw QuerySetMismatch(fmt::format("query '{}' missing from model '{}'", q, report.models.first));
        }
    }
    for (const auto& [q, run] : first) {
        report.rows.push_back({q, {evaluate_run(*run, judgments, report.ks, strict),
                                   evaluate_run(*second.at(q), judgments, report.ks, strict)}});
    }
    const double n = static_cast<double>(report.rows.size());
    for (std::size_t k : report.ks) {
        double a = 0.0, b = 0.0;
        for (const auto& row : report.rows) {
            a += row.dcg.first.at(k);
            b += row.dcg.second.at(k);
        }
        report.averages.first[k] = n > 0 ? a / n : 0.0;
        report.averages.second[k] = n > 0 ? b / n : 0.0;
    }
    return report;
}

namespace {

constexpr double kTieEpsilon = 1e-9;

void write_report_row(std::ostream& out, const std::string& label, const std::pair<DcgByK, DcgByK>& dcg,
                      const ComparisonReport& report) {
    out << label;
    for (std::size_t k : report.ks) {
        const double a = dcg.first.at(k);
        const double b = dcg.second.at(k);
        const double delta = b - a;
        const char* winner = "tie";
        if (delta > kTieEpsilon) {
            winner = report.models.second.c_str();
        } else if (delta < -kTieEpsilon) {
            winner = report.models.first.c_str();
        }
        out << fmt::format("\t{:.6f}\t{:.6f}\t{:.6f}\t{}", a, b, std::abs(delta) <= kTieEpsilon ? 0.0 : delta, winner);
    }
    out << '\n';
}

}  // namespace

void write_report(std::ostream& out, const ComparisonReport& report) {
    out << "query_id";
    for (std::size_t k : report.ks) {
        out << fmt::format("\t{0}_dcg@{2}\t{1}_dcg@{2}\tdelta_dcg@{2}\twinner@{2}", report.models.first,
                           report.models.second, k);
    }
    out << '\n';
    for (const auto& row : report.rows) {
        write_report_row(out, row.query_id, row.dcg, report);
    }
    write_report_row(out, "average", report.averages, report);
}

std::vector<BenchmarkQuery> read_queries(std::istream& in) {
    std::vector<BenchmarkQuery> out;
    std::set<std::string> ids;
    for_each_row(in, {"query_id", "query"}, [&](const auto& cols, std::size_t line_no) {
        if (cols[0].empty() || !ids.insert(cols[0]).second) {
            throw FormatError("empty or repeated query id '" + cols[0] + "'", line_no);
        }
        out.push_back({cols[0], cols[1]});
    });
    return out;
}

std::vector<BenchmarkQuery> load_queries(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path);
    }
    return read_queries(in);
}

std::vector<std::size_t> parse_ks(const std::string& text) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        part.erase(0, part.find_first_not_of(" \t"));
        part.erase(part.find_last_not_of(" \t") + 1);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || v == 0) {
            throw std::invalid_argument("bad k list '" + text + "'");
        }
        out.push_back(v);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace geosearch
