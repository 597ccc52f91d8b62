#include "qlab/core/dates.hpp"

#include <cstdio>

#include "qlab/core/errors.hpp"

namespace qlab::core {

namespace {

// Howard Hinnant's civil-date algorithms.
std::int32_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
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
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = yr + (m <= 2);
}

bool all_digits(std::string_view s) {
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return !s.empty();
}

} // namespace

Date::Date(int year, int month, int day) : serial_(days_from_civil(year, month, day)) {}

Date Date::parse_iso(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
        !all_digits(text.substr(0, 4)) || !all_digits(text.substr(5, 2)) ||
        !all_digits(text.substr(8, 2))) {
        throw Error(ErrorCode::MalformedRow, "bad date '" + std::string(text) + "'");
    }
    const int y = (text[0] - '0') * 1000 + (text[1] - '0') * 100 + (text[2] - '0') * 10 + (text[3] - '0');
    const int m = (text[5] - '0') * 10 + (text[6] - '0');
    const int d = (text[8] - '0') * 10 + (text[9] - '0');
    if (m < 1 || m > 12 || d < 1 || d > 31) {
        throw Error(ErrorCode::MalformedRow, "bad date '" + std::string(text) + "'");
    }
    return Date(y, m, d);
}

std::string Date::to_iso() const {
    int y, m, d;
    civil_from_days(serial_, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

std::string Date::to_us() const {
    int y, m, d;
    civil_from_days(serial_, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%02d-%02d-%04d", m, d, y);
    return buf;
}

} // namespace qlab::core

namespace qlab {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MissingFile: return "MissingFile";
        case ErrorCode::MalformedRow: return "MalformedRow";
        case ErrorCode::DuplicateDate: return "DuplicateDate";
        case ErrorCode::InvalidRange: return "InvalidRange";
        case ErrorCode::WindowTooLarge: return "WindowTooLarge";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::ZeroClose: return "ZeroClose";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::InsufficientOverlap: return "InsufficientOverlap";
        case ErrorCode::SingularRegression: return "SingularRegression";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::InsufficientHistory: return "InsufficientHistory";
        case ErrorCode::AlignmentError: return "AlignmentError";
        case ErrorCode::EmptyUniverse: return "EmptyUniverse";
        case ErrorCode::SingleClassTraining: return "SingleClassTraining";
        case ErrorCode::EmptyGrid: return "EmptyGrid";
        case ErrorCode::TooFewRows: return "TooFewRows";
        case ErrorCode::EmptyTestSet: return "EmptyTestSet";
        case ErrorCode::NonPositiveSpread: return "NonPositiveSpread";
        case ErrorCode::Underdetermined: return "Underdetermined";
        case ErrorCode::Overdetermined: return "Overdetermined";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "UnknownError";
}

} // namespace qlab
