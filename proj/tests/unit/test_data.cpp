#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "spillnet/csv.hpp"
#include "spillnet/errors.hpp"
#include "spillnet/panel.hpp"
#include "spillnet/simulate.hpp"

using namespace spillnet;

namespace {

std::string temp_csv(const std::string& name, const std::string& content) {
    const auto path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream f(path);
    f << content;
    return path;
}

RawSeries series_from(const std::string& ticker, const std::vector<std::string>& dates,
                      const std::vector<double>& prices) {
    RawSeries s;
    s.ticker = ticker;
    for (const auto& d : dates) s.dates.push_back(parse_date(d));
    s.prices = prices;
    return s;
}

}  // namespace

TEST_CASE("load_csv echoes a clean 3-row file") {
    const auto path = temp_csv("sn_clean.csv",
                               "date,price\n2015-01-06,10\n2015-01-07,11\n2015-01-08,12\n");
    const auto s = load_csv(path, "AAA");
    REQUIRE(s.size() == 3);
    CHECK(s.dates[0].iso() == "2015-01-06");
    CHECK(s.prices[2] == doctest::Approx(12.0));
    CHECK(s.rejected_rows == 0);
}

TEST_CASE("load_csv rejects non-positive prices with a count") {
    const auto path = temp_csv("sn_negative.csv",
                               "date,price\n2015-01-06,10\n2015-01-07,-1\n2015-01-08,12\n");
    const auto s = load_csv(path, "AAA");
    CHECK(s.size() == 2);
    CHECK(s.rejected_rows == 1);
}

TEST_CASE("load_csv sorts shuffled dates") {
    const auto path = temp_csv("sn_shuffled.csv",
                               "date,price\n2015-01-08,12\n2015-01-06,10\n2015-01-07,11\n");
    const auto s = load_csv(path, "AAA");
    REQUIRE(s.size() == 3);
    CHECK(s.dates[0] < s.dates[1]);
    CHECK(s.dates[1] < s.dates[2]);
    CHECK(s.prices[0] == doctest::Approx(10.0));
}

TEST_CASE("load_csv error paths") {
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", "X"), DataError);
    const auto empty = temp_csv("sn_empty.csv", "date,price\n2015-01-06,-3\n");
    CHECK_THROWS_AS(load_csv(empty, "X"), DataError);  // zero valid rows
    const auto conflict = temp_csv("sn_conflict.csv",
                                   "date,price\n2015-01-06,10\n2015-01-06,11\n");
    CHECK_THROWS_AS(load_csv(conflict, "X"), DataError);
    const auto dup = temp_csv("sn_dup.csv", "date,price\n2015-01-06,10\n2015-01-06,10\n");
    const auto s = load_csv(dup, "X");  // identical duplicate collapses
    CHECK(s.size() == 1);
    CHECK(s.rejected_rows == 1);
}

TEST_CASE("load_csv honors custom schema and date format") {
    const auto path = temp_csv("sn_schema.csv",
                               "Close,Day\n10.5,06/01/2015\n11.5,07/01/2015\n");
    const auto s = load_csv(path, "AAA", {"Day", "Close", "%d/%m/%Y"});
    REQUIRE(s.size() == 2);
    CHECK(s.dates[0].iso() == "2015-01-06");
}

TEST_CASE("align drops weekend rows of a 7-day series") {
    const auto equity = series_from("EQ", {"2015-01-09", "2015-01-12"}, {10, 11});  // Fri, Mon
    const auto crypto = series_from(
        "CR", {"2015-01-09", "2015-01-10", "2015-01-11", "2015-01-12"}, {5, 5, 5, 6});
    const auto aligned = align({equity, crypto});
    REQUIRE(aligned.dates.size() == 2);
    CHECK(aligned.dates[0].iso() == "2015-01-09");
    CHECK(aligned.dates[1].iso() == "2015-01-12");
    CHECK(aligned.prices(1, 1) == doctest::Approx(6.0));
}

TEST_CASE("align keeps identical calendars intact") {
    std::vector<std::string> days;
    std::vector<double> px;
    Date d = parse_date("2015-01-06");
    for (int i = 0; i < 100; ++i) {
        days.push_back(d.iso());
        px.push_back(100.0 + i);
        d = d.next_day();
    }
    const auto a = series_from("A", days, px);
    const auto b = series_from("B", days, px);
    CHECK(align({a, b}).dates.size() == 100);
}

TEST_CASE("align with disjoint dates fails") {
    const auto a = series_from("A", {"2015-01-06"}, {1});
    const auto b = series_from("B", {"2015-01-07"}, {1});
    CHECK_THROWS_WITH_AS(align({a, b}), "empty intersection of calendars", DataError);
}

TEST_CASE("align is order-insensitive up to column permutation") {
    Rng rng(11);
    std::vector<RawSeries> series;
    Date start = parse_date("2015-01-06");
    for (int j = 0; j < 3; ++j) {
        RawSeries s;
        s.ticker = "T" + std::to_string(j);
        Date d = start;
        for (int i = 0; i < 50 + 10 * j; ++i) {  // different lengths, common head
            s.dates.push_back(d);
            s.prices.push_back(std::exp(rng.normal() * 0.01) * 50.0);
            d = d.next_day();
        }
        series.push_back(std::move(s));
    }
    const auto ab = align({series[0], series[1], series[2]});
    const auto ba = align({series[2], series[0], series[1]});
    REQUIRE(ab.dates.size() == ba.dates.size());
    CHECK(ab.prices.col(0) == ba.prices.col(1));
    CHECK(ab.prices.col(2) == ba.prices.col(0));
}

TEST_CASE("to_returns single column log difference") {
    AlignedPrices p;
    p.tickers = {"A"};
    p.dates = {parse_date("2015-01-06"), parse_date("2015-01-07")};
    p.prices.resize(2, 1);
    p.prices << 100.0, 110.0;
    const auto panel = to_returns(p, Transform::log_diff);
    REQUIRE(panel.rows() == 1);
    CHECK(panel.values(0, 0) == doctest::Approx(0.0953101798).epsilon(1e-9));
    CHECK(panel.dates[0].iso() == "2015-01-07");
}

TEST_CASE("to_returns constant column gives zeros") {
    AlignedPrices p;
    p.tickers = {"A"};
    p.dates = {parse_date("2015-01-06"), parse_date("2015-01-07"), parse_date("2015-01-08")};
    p.prices.resize(3, 1);
    p.prices << 5.0, 5.0, 5.0;
    const auto panel = to_returns(p, Transform::log_diff);
    CHECK(panel.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("to_returns plain difference") {
    AlignedPrices p;
    p.tickers = {"A"};
    p.dates = {parse_date("2015-01-06"), parse_date("2015-01-07")};
    p.prices.resize(2, 1);
    p.prices << 3.0, 7.0;
    const auto panel = to_returns(p, Transform::plain_diff);
    CHECK(panel.values(0, 0) == doctest::Approx(4.0));
}

TEST_CASE("log return round-trip reproduces the price path") {
    Rng rng(5);
    AlignedPrices p;
    p.tickers = {"A", "B"};
    Date d = parse_date("2015-01-06");
    const int t = 300;
    p.prices.resize(t, 2);
    p.prices.row(0) << 120.0, 80.0;
    p.dates.push_back(d);
    for (int i = 1; i < t; ++i) {
        d = d.next_day();
        p.dates.push_back(d);
        for (int j = 0; j < 2; ++j) {
            p.prices(i, j) = p.prices(i - 1, j) * std::exp(0.02 * rng.normal());
        }
    }
    const auto panel = to_returns(p, Transform::log_diff);
    for (int j = 0; j < 2; ++j) {
        double log_price = std::log(p.prices(0, j));
        for (int i = 0; i < panel.rows(); ++i) {
            log_price += panel.values(i, j);
            CHECK(std::exp(log_price) ==
                  doctest::Approx(p.prices(i + 1, j)).epsilon(1e-10));
        }
    }
}

TEST_CASE("split_panel boundary row joins the later segment") {
    Rng rng(3);
    const auto returns = Eigen::MatrixXd::NullaryExpr(40, 2, [&](Eigen::Index, Eigen::Index) {
        return rng.normal();
    });
    const auto panel = panel_from_returns(returns, {"A", "B"}, parse_date("2020-02-03"));
    const Date b = panel.dates[25];
    const auto segs = split_panel(panel, {{b}, {}});
    REQUIRE(segs.size() == 2);
    CHECK(segs[0].rows() == 25);
    CHECK(segs[1].dates.front() == b);
    CHECK(segs[0].rows() + segs[1].rows() == panel.rows());

    SUBCASE("empty split returns the input panel") {
        const auto one = split_panel(panel, {});
        REQUIRE(one.size() == 1);
        CHECK(one[0].rows() == panel.rows());
        CHECK(one[0].values == panel.values);
    }
    SUBCASE("split at the first date fails") {
        CHECK_THROWS_AS(split_panel(panel, {{panel.dates.front()}, {}}), DataError);
    }
    SUBCASE("segment lengths sum to T for random split sets") {
        Rng pick(9);
        for (int rep = 0; rep < 10; ++rep) {
            SampleSplit split;
            for (int k = 0; k < 3; ++k) {
                split.break_dates.push_back(
                    panel.dates[1 + static_cast<std::size_t>(pick.raw() % 38)]);
            }
            Eigen::Index total = 0;
            try {
                for (const auto& seg : split_panel(panel, split)) total += seg.rows();
            } catch (const DataError&) {
                continue;  // duplicate break dates make an empty segment
            }
            CHECK(total == panel.rows());
        }
    }
}

TEST_CASE("panel csv export has date column then tickers") {
    Rng rng(2);
    const auto returns = Eigen::MatrixXd::NullaryExpr(5, 2, [&](Eigen::Index, Eigen::Index) {
        return rng.normal();
    });
    const auto panel = panel_from_returns(returns, {"AAA", "BBB"}, parse_date("2015-01-06"));
    const auto path = (std::filesystem::temp_directory_path() / "sn_panel.csv").string();
    write_panel_csv(panel, path);
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "date,AAA,BBB");
    std::string row;
    std::getline(f, row);
    CHECK(row.substr(0, 10) == panel.dates[0].iso());
}
