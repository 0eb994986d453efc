#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgspec/bounds.hpp"
#include "kgspec/kernel.hpp"
#include "kgspec/potentials.hpp"

namespace kgspec::io {

inline constexpr const char* kToolName = "kgspec";
inline constexpr const char* kToolVersion = "1.0.0";

/// Parses the shape mini-language:
///   square-well:t=1,depth=1           shifted-well:t=1.03,inner=-1.001,floor=-0.0025
///   woods-saxon:q=0.005[,R=1,depth=1]  woods-saxon:b=20/7
///   exponential:a=1[,depth=1]          @table.txt  (or table:table.txt)
///   blend(<shape>|<shape>,a=0.5)       shifted(<shape>,s=0.1)
/// Numbers may be written as fractions p/q. Throws InvalidInput.
Shape parse_shape(const std::string& text);

/// 12 significant digits; "nan" for missing values.
std::string format_number(double x);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

/// FNV-1a of the compact JSON dump (keys sorted), as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

nlohmann::json to_json(const Channel& channel);
nlohmann::json to_json(const SpectralPoint& point);
nlohmann::json to_json(const SpectralCurve& curve);
nlohmann::json to_json(const bounds::BoundsRow& row);

/// Columns E,v,n,f_mean,f2_mean,slope; gap energies appear as rows of nan.
void write_curve_csv(std::ostream& out, const SpectralCurve& curve, const std::string& hash);

/// The curve columns plus v_lower,v_upper,t1_opt,t2_opt,rigorous.
void write_bounds_csv(std::ostream& out, const std::vector<bounds::BoundsRow>& rows, const Channel& channel,
                      const std::string& shape_id, const std::string& hash);

}  // namespace kgspec::io
