#include "spillnet/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "spillnet/errors.hpp"

namespace spillnet {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

RawSeries load_csv(const std::string& path, const std::string& ticker,
                   const CsvSchema& schema) {
    std::ifstream file(path);
    if (!file.is_open()) throw DataError("cannot open '" + path + "'");

    std::string header_line;
    if (!std::getline(file, header_line)) throw DataError("'" + path + "' is empty");

    const auto header = split_line(header_line);
    std::ptrdiff_t date_idx = -1, price_idx = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == schema.date_column) date_idx = static_cast<std::ptrdiff_t>(i);
        if (header[i] == schema.price_column) price_idx = static_cast<std::ptrdiff_t>(i);
    }
    if (date_idx < 0)
        throw DataError("'" + path + "': date column '" + schema.date_column + "' not found");
    if (price_idx < 0)
        throw DataError("'" + path + "': price column '" + schema.price_column + "' not found");

    std::map<Date, double> by_date;
    std::size_t rejected = 0;
    std::string line;
    while (std::getline(file, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_line(line);
        const auto need = static_cast<std::size_t>(std::max(date_idx, price_idx)) + 1;
        if (cells.size() < need) {
            ++rejected;
            continue;
        }
        Date d;
        try {
            d = parse_date(cells[static_cast<std::size_t>(date_idx)], schema.date_format);
        } catch (const DataError&) {
            ++rejected;
            continue;
        }
        double price = 0.0;
        try {
            std::size_t pos = 0;
            const std::string& cell = cells[static_cast<std::size_t>(price_idx)];
            price = std::stod(cell, &pos);
            if (pos != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            ++rejected;
            continue;
        }
        if (!(price > 0.0) || !std::isfinite(price)) {
            ++rejected;
            continue;
        }
        auto [it, inserted] = by_date.emplace(d, price);
        if (!inserted) {
            if (it->second != price) {
                throw DataError("'" + path + "': duplicate date " + d.iso() +
                                " with conflicting prices");
            }
            ++rejected;  // exact duplicate row
        }
    }
    if (by_date.empty()) throw DataError("'" + path + "': no valid rows");

    RawSeries out;
    out.ticker = ticker;
    out.rejected_rows = rejected;
    out.dates.reserve(by_date.size());
    out.prices.reserve(by_date.size());
    for (const auto& [d, p] : by_date) {
        out.dates.push_back(d);
        out.prices.push_back(p);
    }
    return out;
}

RawSeries clip_series(const RawSeries& s, Date start, Date end) {
    RawSeries out;
    out.ticker = s.ticker;
    out.rejected_rows = s.rejected_rows;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.dates[i] >= start && s.dates[i] <= end) {
            out.dates.push_back(s.dates[i]);
            out.prices.push_back(s.prices[i]);
        }
    }
    return out;
}

}  // namespace spillnet
