#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iet/interval_exchange.hpp"
#include "iet/scalar.hpp"

namespace iet {

/// Parsed config document: the IET plus optional command defaults from the
/// `params` table, kept as text.
struct RunConfig {
  std::vector<std::string> lengths;
  std::vector<int> perm;
  std::map<std::string, std::string> params;

  IntervalExchange build() const;
  std::optional<std::string> param(const std::string& key) const;
};

/// JSON when the text starts with '{', otherwise the TOML subset:
/// `key = value` lines, `[params]` table, strings, integers, floats, booleans
/// and (possibly multi-line) arrays. Errors are kConfig and name the field.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// lengths (-1/2+1/2*sqrt(5), 3/2-1/2*sqrt(5)), perm (2 1): rotation by 2 - phi.
IntervalExchange golden_rotation();

/// Builds from a comma-separated length list and a perm like "2 1" or "2,1".
IntervalExchange iet_from_text(std::string_view lengths, std::string_view perm);

/// `lo:hi:count` -> count exact equispaced points from lo to hi inclusive.
std::vector<Scalar> parse_grid(std::string_view text);

/// Canonical one-line JSON rendering of the IET (lengths as scalar strings).
std::string render_iet(const IntervalExchange& f);

}  // namespace iet
