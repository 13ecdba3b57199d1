#pragma once

#include "affiq/suites.hpp"

#include <iosfwd>
#include <string>

namespace affiq {

/// First line of every report CSV.
inline constexpr const char* kReportVersionLine = "# affiq-report v1";
inline constexpr const char* kReportHeader = "suite,case_id,n,m,p,Q,lhs,rhs,ratio,tol,pass,runtime_ms";

/// Version line, header, one row per case. Numbers use %.9g; a failed module
/// call leaves lhs, rhs and ratio as "nan".
void write_csv(const Report& report, std::ostream& out);
std::string to_csv(const Report& report);
void write_csv(const Report& report, const std::string& path);
/// Reads a file written by write_csv. Throws "parse" on schema mismatch.
Report read_report_csv(const std::string& path);

/// One polyline chart per suite, ratio against case index, stacked vertically.
std::string to_svg(const Report& report);
void write_svg(const Report& report, const std::string& path);

/// "<passed>/<total> passed" plus one line per suite.
std::string summary(const Report& report);

}  // namespace affiq
