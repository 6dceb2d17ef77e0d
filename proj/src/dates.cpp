#include "spillnet/dates.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

#include "spillnet/errors.hpp"

namespace spillnet {

namespace {

// Howard Hinnant's civil-days algorithms.
std::int32_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int>(doe) - 719468;
}

void civil_from_days(std::int32_t z, int& y, int& m, int& d) {
    z += 719468;
    const int era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int yr = static_cast<int>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = yr + (m <= 2);
}

}  // namespace

Date Date::from_ymd(int year, int month, int day) {
    if (month < 1 || month > 12 || day < 1 || day > 31) {
        throw DataError("invalid calendar date components");
    }
    return Date{days_from_civil(year, month, day)};
}

void Date::to_ymd(int& year, int& month, int& day) const {
    civil_from_days(serial, year, month, day);
}

int Date::weekday() const {
    // 1970-01-01 was a Thursday (index 3).
    std::int32_t w = (serial + 3) % 7;
    if (w < 0) w += 7;
    return static_cast<int>(w);
}

std::string Date::iso() const {
    int y, m, d;
    to_ymd(y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

Date parse_date(const std::string& text, const std::string& format) {
    std::tm tm{};
    std::istringstream ss(text);
    ss >> std::get_time(&tm, format.c_str());
    if (ss.fail()) {
        throw DataError("unparseable date '" + text + "' for format '" + format + "'");
    }
    return Date::from_ymd(tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday);
}

}  // namespace spillnet
