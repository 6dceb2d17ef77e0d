#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spillnet/dates.hpp"

namespace spillnet {

/// Column mapping for a raw price CSV. The file must carry a header row.
struct CsvSchema {
    std::string date_column = "date";
    std::string price_column = "price";
    std::string date_format = "%Y-%m-%d";
};

/// One ticker's raw price history. Dates strictly increasing, prices > 0.
struct RawSeries {
    std::string ticker;
    std::vector<Date> dates;
    std::vector<double> prices;
    /// Rows dropped during ingestion (non-positive or unparseable price,
    /// unparseable date, exact-duplicate date rows).
    std::size_t rejected_rows = 0;

    std::size_t size() const { return dates.size(); }
};

/// Loads one price series from a CSV file. Rows with a non-positive or
/// unparseable price are rejected and counted; dates come out sorted and
/// de-duplicated. Throws DataError for an unreadable file, zero valid rows,
/// a missing schema column, or duplicate dates carrying conflicting prices.
RawSeries load_csv(const std::string& path, const std::string& ticker,
                   const CsvSchema& schema = {});

/// Restricts a series to [start, end] inclusive.
RawSeries clip_series(const RawSeries& s, Date start, Date end);

}  // namespace spillnet
