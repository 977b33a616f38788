#pragma once

#include "orbital/dimension.hpp"
#include "orbital/group.hpp"
#include "orbital/point_cloud.hpp"
#include "orbital/scenario.hpp"

#include <filesystem>
#include <string>

namespace orbital {

/// Real numbers in key-value reports: printf "%.12g".
std::string format_real(double v);

/// `key=value` lines, one per field, in a fixed order.
std::string to_key_value(const BoxCountReport& r);
std::string to_key_value(const PoincareEstimate& e);
std::string to_key_value(const VerificationReport& r);

/// "delta,count" header then one row per scale.
std::string counts_csv(const BoxCountReport& r);
/// One "x,y" row per point, "%.12f", no header.
std::string points_csv(const PointCloud& cloud);
/// Header plus one row per enumerated element.
std::string records_csv(const GroupSpec& spec, const Enumeration& enumeration);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// Parses "x,y" or "x" rows; blank lines and lines starting with '#' are
/// skipped. One-column files give an ambient-1 cloud.
PointCloud read_points_csv(const std::filesystem::path& path);

} // namespace orbital
