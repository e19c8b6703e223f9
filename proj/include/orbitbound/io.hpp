#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitbound/bounds.hpp"
#include "orbitbound/complex.hpp"
#include "orbitbound/group.hpp"
#include "orbitbound/novikov.hpp"
#include "orbitbound/presentation.hpp"
#include "orbitbound/representation.hpp"

namespace orbitbound {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Parses text as JSON; syntax errors become ParseError with line and column.
Json parse_json_text(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::filesystem::path& path);

/// Values that may be inline objects or a path string (relative to base_dir).
struct LoadContext {
  std::filesystem::path base_dir = ".";
  GroupLimits limits;
};

GroupPtr parse_group(const Json& j, const LoadContext& ctx);
Presentation parse_presentation(const Json& j, const LoadContext& ctx);
Representation parse_representation(const Json& j, const GroupPtr& group, const LoadContext& ctx);

/// Coefficient in a term list: an integer or [[int, "label"], ...].
GroupRing::Value parse_group_ring_value(const Json& j, const GroupRing& ring);
GroupRingSeries parse_group_ring_series(const Json& j, const GroupRing& ring, const ContextPtr& context);
ScalarSeries parse_scalar_series(const Json& j, const ScalarRing& ring, const ContextPtr& context);
Rational parse_rational(const Json& j);

/// Complex file; `group` overrides the file's own group entry (used by
/// descriptors so that the complex and the cover share one group object).
GradedComplex parse_complex(const Json& j, const LoadContext& ctx, GroupPtr group = nullptr);

/// All schema violations are collected; throws ParseError if any exist, then
/// DomainError listing every cross-field violation.
ManifoldDescriptor parse_descriptor(const Json& j, const LoadContext& ctx, std::size_t coset_budget = 1000000);

struct NovikovExpression {
  std::string operation;  // mul, add, sub, invert, augment
  std::optional<ScalarRing> scalar_ring;
  std::optional<GroupRing> group_ring;
  ContextPtr context;
  std::vector<ScalarSeries> scalar_operands;
  std::vector<GroupRingSeries> group_operands;
};
/// A missing cutoff is exact for add/mul/augment; for invert it defaults to
/// -(leading primary level) - depth.
NovikovExpression parse_novikov_expression(const Json& j, const LoadContext& ctx, long long depth);

struct NovikovResult {
  std::optional<ScalarSeries> scalar;
  std::optional<GroupRingSeries> group;
};
NovikovResult evaluate(const NovikovExpression& e);

Json series_to_json(const ScalarSeries& s);
Json series_to_json(const GroupRingSeries& s);
std::string rational_to_string(const Rational& q);

Json report_to_json(const BoundsReport& r);
/// Inverse of report_to_json.
BoundsReport report_from_json(const Json& j);
std::string report_to_table(const BoundsReport& r);

Json delta_to_json(const DeltaBreakdown& d);
std::string delta_to_table(const DeltaBreakdown& d);

}  // namespace orbitbound
