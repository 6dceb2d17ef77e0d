#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace spillnet {

/// Calendar day stored as days since 1970-01-01 (proleptic Gregorian).
struct Date {
    std::int32_t serial = 0;

    auto operator<=>(const Date&) const = default;

    static Date from_ymd(int year, int month, int day);
    void to_ymd(int& year, int& month, int& day) const;

    /// 0 = Monday .. 6 = Sunday.
    int weekday() const;
    bool is_weekend() const { return weekday() >= 5; }

    Date next_day() const { return Date{serial + 1}; }

    /// ISO-8601 YYYY-MM-DD.
    std::string iso() const;
};

/// Parses a date using a std::get_time format string (default ISO-8601).
/// Throws DataError on failure.
Date parse_date(const std::string& text, const std::string& format = "%Y-%m-%d");

}  // namespace spillnet
