#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "iet/diophantine.hpp"
#include "iet/induction.hpp"
#include "iet/interval_exchange.hpp"
#include "iet/spectral.hpp"

namespace iet {

inline constexpr int kSchemaVersion = 1;

enum class Format { kText, kJson, kCsv, kJsonl };

/// "text", "json", "csv" or "jsonl"; kConfig otherwise.
Format parse_format(std::string_view name);

/// printf("%.12g").
std::string format_double(double v);

// Each renderer returns the complete output, newline terminated. Formats a
// renderer does not support raise kConfig.
std::string report_eval(const Scalar& y, Format fmt);
std::string report_orbit(const OrbitWindow& w, Format fmt);
/// idoc_depth 0 means no aperiodicity probe was run.
std::string report_induce(const IntervalExchange& f, const InducedMap& g, long idoc_depth,
                          const std::optional<IdocCollision>& idoc, Format fmt);
std::string report_psi(const PsiRecordSeries& s, Format fmt);
std::string report_scan(const IntervalExchange& f, const ScanResult& r, Format fmt);
std::string report_wm(const WeylScan& s, Format fmt);
std::string report_stack(const IntervalExchange& f, const TallStack& tall, const Stack& shown,
                         bool trimmed, const std::optional<StackViolation>& check, Format fmt);
std::string report_idoc(const IntervalExchange& f, long depth, const std::optional<IdocCollision>& c,
                        Format fmt);

}  // namespace iet
