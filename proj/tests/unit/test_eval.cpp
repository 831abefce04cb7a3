// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "geosearch/error.hpp"
#include "geosearch/eval.hpp"
#include "oracles.hpp"

using namespace geosearch;

namespace {

Judgments judgments(std::initializer_list<std::tuple<std::string, std::string, double>> rows) {
    Judgments j;
    for (const auto& [q, i, g] : rows) {
        j.add(q, i, g);
    }
    return j;
}

std::vector<double> random_grades(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> g(n);
    for (double& x : g) {
        x = static_cast<double>(rng() % 5);
    }
    return g;
}

}  // namespace

TEST_CASE("dcg hand values") {
    std::vector<double> r = {4, 3, 2};
    CHECK(dcg_at_k(r, 3) == doctest::Approx(8.26186).epsilon(1e-6));
    CHECK(std::abs(dcg_at_k(r, 3) - (4 + 3 + 2 / std::log2(3.0))) <= 1e-12);
    std::vector<double> single = {2.5};
    CHECK(dcg_at_k(single, 1) == 2.5);
    std::vector<double> zeros(7, 0.0);
    CHECK(dcg_at_k(zeros, 5) == 0.0);
    CHECK(dcg_at_k({}, 3) == 0.0);
    CHECK(dcg_at_k(r, 10) == dcg_at_k(r, 3));
    CHECK(dcg_at_k(r, 2) == 7.0);  // rank 2 is not discounted
    CHECK_THROWS_AS(dcg_at_k(r, 0), std::invalid_argument);
}

TEST_CASE("dcg matches a spreadsheet recomputation") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> g(1 + rng() % 15);
        for (double& x : g) {
            x = std::uniform_real_distribution<double>(0, 4)(rng);
        }
        std::size_t k = 1 + rng() % 20;
        CHECK(std::abs(dcg_at_k(g, k) - oracle::dcg_spreadsheet(g, k)) <= 1e-9);
    }
}

TEST_CASE("dcg properties") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = random_grades(rng, 1 + rng() % 12);
        double prev = 0.0;
        for (std::size_t k = 1; k <= 14; ++k) {
            double v = dcg_at_k(g, k);
            CHECK(v >= prev);
            prev = v;
        }
        std::size_t k = 1 + rng() % g.size();
        auto tail = g;
        std::shuffle(tail.begin() + static_cast<std::ptrdiff_t>(k), tail.end(), rng);
        CHECK(dcg_at_k(tail, k) == dcg_at_k(g, k));
    }
}

TEST_CASE("descending order maximizes dcg") {
    std::mt19937_64 rng(4);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            auto g = random_grades(rng, n);
            auto best = g;
            std::sort(best.begin(), best.end(), std::greater<>());
            for (std::size_t k = 1; k <= n; ++k) {
                const double top = dcg_at_k(best, k);
                auto perm = g;
                std::sort(perm.begin(), perm.end());
                do {
                    CHECK(dcg_at_k(perm, k) <= top + 1e-12);
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
        }
    }
}

TEST_CASE("ndcg") {
    std::vector<double> r = {2, 4};
    std::vector<double> ideal = {4, 2, 0};
    CHECK(ndcg_at_k(r, ideal, 2) == doctest::Approx(6.0 / 6.0));
    std::vector<double> r3 = {0, 2, 4};
    CHECK(ndcg_at_k(r3, ideal, 3) == doctest::Approx((2 + 4 / std::log2(3.0)) / 6.0));
    CHECK(ndcg_at_k(r3, std::vector<double>{0, 0}, 3) == 0.0);
}

TEST_CASE("judgments") {
    auto j = judgments({{"q1", "a", 4}, {"q1", "b", 2.5}, {"q2", "a", 0}});
    CHECK(j.size() == 3);
    CHECK(j.grade("q1", "a") == 4);
    CHECK(j.grade("q1", "zz") == 0);
    CHECK(j.grade("q9", "a") == 0);
    CHECK(j.has_query("q2"));
    CHECK_FALSE(j.has_query("q3"));
    CHECK(j.queries() == std::vector<std::string>{"q1", "q2"});
    CHECK(j.grades_for("q1").size() == 2);
    CHECK(j.grades_for("nope").empty());
    CHECK_THROWS_AS(j.add("q1", "a", 3), FormatError);
    CHECK_THROWS_AS(j.add("q1", "c", 4.5), FormatError);
    CHECK_THROWS_AS(j.add("q1", "c", -1), FormatError);
}

TEST_CASE("judgment files") {
    std::istringstream in("query_id\titem_id\tgrade\n# comment\nq1\ta\t4\n\nq1\tb\t1.5\nq2\tc\t0\n");
    auto j = read_judgments(in);
    CHECK(j.size() == 3);
    CHECK(j.grade("q1", "b") == 1.5);
    std::istringstream bad_header("query\titem\tgrade\nq1\ta\t4\n");
    CHECK_THROWS_AS(read_judgments(bad_header), FormatError);
    std::istringstream bad_grade("query_id\titem_id\tgrade\nq1\ta\tfour\n");
    CHECK_THROWS_AS(read_judgments(bad_grade), FormatError);
    std::istringstream short_row("query_id\titem_id\tgrade\nq1\ta\n");
    CHECK_THROWS_AS(read_judgments(short_row), FormatError);
    CHECK_THROWS_AS(load_judgments("/nonexistent/j.tsv"), IoError);
    CHECK(load_judgments(oracle::benchmark_path("judgments.tsv")).queries().size() == 20);
}

TEST_CASE("run files") {
    std::istringstream in("query_id\tmodel\trank\titem_id\nq1\tm\t2\tb\nq1\tm\t1\ta\nq1\tn\t1\tc\n");
    auto runs = read_runs(in);
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].query_id == "q1");
    CHECK(runs[0].model == "m");
    CHECK(runs[0].items == std::vector<std::string>{"a", "b"});
    std::ostringstream out;
    write_runs(out, runs);
    std::istringstream back(out.str());
    auto again = read_runs(back);
    REQUIRE(again.size() == 2);
    CHECK(again[0].items == runs[0].items);
    CHECK(again[1].items == runs[1].items);

    std::istringstream gap("query_id\tmodel\trank\titem_id\nq1\tm\t1\ta\nq1\tm\t3\tb\n");
    CHECK_THROWS_AS(read_runs(gap), FormatError);
    std::istringstream dup_rank("query_id\tmodel\trank\titem_id\nq1\tm\t1\ta\nq1\tm\t1\tb\n");
    CHECK_THROWS_AS(read_runs(dup_rank), FormatError);
    std::istringstream dup_item("query_id\tmodel\trank\titem_id\nq1\tm\t1\ta\nq1\tm\t2\ta\n");
    CHECK_THROWS_AS(read_runs(dup_item), FormatError);
    CHECK_THROWS_AS(validate_run({"q", "m", {"x", "y", "x"}}), FormatError);
}

TEST_CASE("evaluating a run") {
    auto j = judgments({{"q", "a", 4}, {"q", "b", 3}, {"q", "c", 2}, {"q", "d", 1}});
    std::vector<std::size_t> ks = {3};
    auto top = evaluate_run({"q", "m", {"a", "b", "c", "d"}}, j, ks);
    CHECK(top.at(3) == doctest::Approx(8.26186).epsilon(1e-6));
    std::vector<std::size_t> many = {1, 3, 10};
    auto unjudged = evaluate_run({"q", "m", {"x", "y", "z"}}, j, many);
    CHECK(unjudged.at(1) == 0.0);
    CHECK(unjudged.at(10) == 0.0);
    auto short_run = evaluate_run({"q", "m", {"a", "b"}}, j, many);
    CHECK(short_run.at(10) == short_run.at(3));
    CHECK(short_run.at(10) == 7.0);
    CHECK(evaluate_run({"other", "m", {"a"}}, j, ks).at(3) == 0.0);
    CHECK_THROWS_AS(evaluate_run({"other", "m", {"a"}}, j, ks, true), UnknownQuery);
}

TEST_CASE("assessor averaging is linear") {
    std::mt19937_64 rng(31);
    std::vector<std::string> items = {"a", "b", "c", "d", "e", "f"};
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Judgments> sets(1 + rng() % 8);
        for (auto& s : sets) {
            for (const auto& it : items) {
                if (rng() % 4 != 0) {
                    s.add("q", it, static_cast<double>(rng() % 5));
                }
            }
        }
        auto mean = average_judgments(sets);
        auto order = items;
        std::shuffle(order.begin(), order.end(), rng);
        RunRanking run{"q", "m", order};
        std::vector<std::size_t> ks = {1, 3, 5};
        auto on_mean = evaluate_run(run, mean, ks);
        for (std::size_t k : ks) {
            double avg = 0.0;
            for (const auto& s : sets) {
                avg += evaluate_run(run, s, ks).at(k);
            }
            avg /= static_cast<double>(sets.size());
            CHECK(on_mean.at(k) == doctest::Approx(avg).epsilon(1e-12));
        }
    }
}

TEST_CASE("comparison report") {
    auto j = judgments({{"q1", "a", 4}, {"q1", "b", 2}, {"q2", "c", 3}, {"q2", "d", 1}});
    std::vector<RunRanking> runs = {
        {"q2", "semantic", {"c", "d"}},
        {"q1", "semantic", {"a", "b"}},
        {"q1", "lucene", {"b", "a"}},
        {"q2", "lucene", {"d"}},
    };
    std::vector<std::size_t> ks = {2, 1};
    auto rep = comparison_report(runs, j, ks);
    CHECK(rep.models.first == "lucene");
    CHECK(rep.models.second == "semantic");
    CHECK(rep.ks == std::vector<std::size_t>{1, 2});
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].query_id == "q1");
    // q1: lucene [2,4] -> 6, semantic [4,2] -> 6; q2: lucene [1] -> 1, semantic [3,1] -> 4.
    CHECK(rep.rows[0].dcg.first.at(1) == 2.0);
    CHECK(rep.rows[0].dcg.second.at(2) == 6.0);
    CHECK(rep.averages.first.at(2) == doctest::Approx((6.0 + 1.0) / 2));
    CHECK(rep.averages.second.at(2) == doctest::Approx((6.0 + 4.0) / 2));
    CHECK(rep.averages.first.at(1) == doctest::Approx((2.0 + 1.0) / 2));
    CHECK(rep.averages.second.at(1) == doctest::Approx((4.0 + 3.0) / 2));

    std::ostringstream out;
    write_report(out, rep);
    CHECK(out.str() ==
          "query_id\tlucene_dcg@1\tsemantic_dcg@1\tdelta_dcg@1\twinner@1\tlucene_dcg@2\tsemantic_dcg@2\t"
          "delta_dcg@2\twinner@2\n"
          "q1\t2.000000\t4.000000\t2.000000\tsemantic\t6.000000\t6.000000\t0.000000\ttie\n"
          "q2\t1.000000\t3.000000\t2.000000\tsemantic\t1.000000\t4.000000\t3.000000\tsemantic\n"
          "average\t1.500000\t3.500000\t2.000000\tsemantic\t3.500000\t5.000000\t1.500000\tsemantic\n");
}

TEST_CASE("identical runs tie everywhere") {
    auto j = load_judgments(oracle::benchmark_path("judgments.tsv"));
    auto runs = load_runs(oracle::benchmark_path("runs.tsv"));
    std::vector<RunRanking> twins;
    for (const auto& r : runs) {
        if (r.model == "semantic") {
            twins.push_back(r);
            twins.push_back({r.query_id, "copy", r.items});
        }
    }
    std::vector<std::size_t> ks = {3, 5, 10};
    auto rep = comparison_report(twins, j, ks);
    for (const auto& row : rep.rows) {
        CHECK(row.dcg.first == row.dcg.second);
    }
    std::ostringstream out;
    write_report(out, rep);
    CHECK(out.str().find("\tsemantic\n") == std::string::npos);
    CHECK(out.str().find("\tcopy") != std::string::npos);
}

TEST_CASE("comparison errors") {
    auto j = judgments({{"q1", "a", 4}});
    std::vector<std::size_t> ks = {3};
    std::vector<RunRanking> one_model = {{"q1", "m", {"a"}}};
    CHECK_THROWS_AS(comparison_report(one_model, j, ks), std::invalid_argument);
    std::vector<RunRanking> three = {{"q1", "a", {"a"}}, {"q1", "b", {"a"}}, {"q1", "c", {"a"}}};
    CHECK_THROWS_AS(comparison_report(three, j, ks), std::invalid_argument);
    std::vector<RunRanking> mismatch = {{"q1", "a", {"a"}}, {"q1", "b", {"a"}}, {"q2", "a", {"a"}}};
    CHECK_THROWS_AS(comparison_report(mismatch, j, ks), QuerySetMismatch);
    std::vector<RunRanking> repeated = {{"q1", "a", {"a"}}, {"q1", "a", {"a"}}, {"q1", "b", {"a"}}};
    CHECK_THROWS_AS(comparison_report(repeated, j, ks), std::invalid_argument);
    std::vector<RunRanking> unknown = {{"q1", "a", {"a"}}, {"q1", "b", {"a"}}, {"q9", "a", {}}, {"q9", "b", {}}};
    CHECK_NOTHROW(comparison_report(unknown, j, ks));
    CHECK_THROWS_AS(comparison_report(unknown, j, ks, true), UnknownQuery);
}

TEST_CASE("bundled benchmark favors the semantic model") {
    auto j = load_judgments(oracle::benchmark_path("judgments.tsv"));
    auto runs = load_runs(oracle::benchmark_path("runs.tsv"));
    auto queries = load_queries(oracle::benchmark_path("queries.tsv"));
    CHECK(queries.size() == 20);
    std::vector<std::size_t> ks = {3, 5, 10};
    auto rep = comparison_report(runs, j, ks, true);
    CHECK(rep.rows.size() == 20);
    CHECK(rep.averages.second.at(10) > rep.averages.first.at(10));
    for (std::size_t k : ks) {
        double sum_first = 0.0;
        for (const auto& row : rep.rows) {
            sum_first += row.dcg.first.at(k);
        }
        CHECK(rep.averages.first.at(k) == doctest::Approx(sum_first / 20.0).epsilon(1e-12));
    }
}

TEST_CASE("query files and k lists") {
    std::istringstream in("query_id\tquery\nq1\tChicago traffic\nq2\tflood  risk \n");
    auto q = read_queries(in);
    REQUIRE(q.size() == 2);
    CHECK(q[0].text == "Chicago traffic");
    std::istringstream dup("query_id\tquery\nq1\ta\nq1\tb\n");
    CHECK_THROWS_AS(read_queries(dup), FormatError);
    CHECK(parse_ks("3,5,10") == std::vector<std::size_t>{3, 5, 10});
    CHECK(parse_ks(" 10, 3") == std::vector<std::size_t>{10, 3});
    CHECK_THROWS_AS(parse_ks("3,,5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ks(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_ks("0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ks("3,x"), std::invalid_argument);
}
