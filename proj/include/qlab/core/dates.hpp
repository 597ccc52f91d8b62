#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qlab::core {

/// Calendar date stored as days since 1970-01-01 (UTC, day granularity).
/// Dates are opaque labels: no timezone arithmetic anywhere.
class Date {
public:
    Date() = default;
    explicit Date(std::int32_t serial) : serial_(serial) {}
    Date(int year, int month, int day);

    static Date parse_iso(std::string_view text); // "YYYY-MM-DD", throws MalformedRow
    std::string to_iso() const;
    std::string to_us() const; // "MM-DD-YYYY", the report-header style

    std::int32_t serial() const { return serial_; }
    Date operator+(int days) const { return Date(serial_ + days); }

    friend auto operator<=>(const Date&, const Date&) = default;

private:
    std::int32_t serial_ = 0;
};

} // namespace qlab::core
