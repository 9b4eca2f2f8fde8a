#pragma once

#include <charconv>
#include <chrono>
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "riskindexlab/errors.hpp"

namespace riskindexlab {

// Plain calendar date (no time zone, no time of day).
class Date {
public:
    constexpr Date() = default;
    constexpr explicit Date(std::chrono::sys_days d) : days_(d) {}
    constexpr Date(int y, unsigned m, unsigned d)
        : days_(std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m},
                                            std::chrono::day{d}}) {}

    constexpr std::chrono::sys_days sys_days() const { return days_; }
    constexpr long serial() const { return days_.time_since_epoch().count(); }

    constexpr Date plus_days(long n) const { return Date{days_ + std::chrono::days{n}}; }

    std::string iso() const {
        const std::chrono::year_month_day ymd{days_};
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
        return buf;
    }

    friend constexpr auto operator<=>(const Date&, const Date&) = default;

private:
    std::chrono::sys_days days_{};
};

// Calendar days from `from` to `to` (negative if `to` precedes `from`).
inline constexpr long days_between(Date from, Date to) { return to.serial() - from.serial(); }

// Strict ISO-8601 calendar date, YYYY-MM-DD.
inline std::optional<Date> try_parse_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        const char* first = s.data() + pos;
        const char* last = first + len;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last) return std::nullopt;
        return v;
    };
    auto y = field(0, 4);
    auto m = field(5, 2);
    auto d = field(8, 2);
    if (!y || !m || !d) return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{*y},
                                          std::chrono::month{static_cast<unsigned>(*m)},
                                          std::chrono::day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date{std::chrono::sys_days{ymd}};
}

inline Date parse_date(std::string_view s) {
    if (auto d = try_parse_date(s)) return *d;
    throw InputError("unparseable date '" + std::string(s) + "' (expected YYYY-MM-DD)");
}

}  // namespace riskindexlab
