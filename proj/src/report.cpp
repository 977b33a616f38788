#include "orbital/report.hpp"

#include "orbital/error.hpp"

#include <fmt/printf.h>

#include <charconv>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace orbital {

namespace {

void kv(std::string& out, std::string_view key, const std::string& value) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
}

void kv(std::string& out, std::string_view key, double value) { kv(out, key, format_real(value)); }

template <typename T>
std::string join(const std::vector<T>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ',';
        if constexpr (std::is_floating_point_v<T>)
            s += format_real(xs[i]);
        else
            s += std::to_string(xs[i]);
    }
    return s;
}

void box_fields(std::string& out, const BoxCountReport& r, const std::string& prefix) {
    kv(out, prefix + "ambient_dim", std::to_string(r.ambient_dim));
    kv(out, prefix + "point_count", std::to_string(r.point_count));
    kv(out, prefix + "scales", join(r.scales));
    kv(out, prefix + "counts", join(r.counts));
    kv(out, prefix + "ls_slope", r.ls_slope);
    kv(out, prefix + "max_pair_slope", r.max_pair_slope);
    kv(out, prefix + "min_tail_slope", r.min_tail_slope);
    kv(out, prefix + "residual", r.residual);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

} // namespace

std::string format_real(double v) { return fmt::sprintf("%.12g", v); }

std::string to_key_value(const BoxCountReport& r) {
    std::string out;
    box_fields(out, r, "");
    return out;
}

std::string to_key_value(const PoincareEstimate& e) {
    std::string out;
    kv(out, "growth_slope", e.growth_slope);
    kv(out, "series_cliff", e.series_cliff);
    kv(out, "window_lo", e.window.lo);
    kv(out, "window_hi", e.window.hi);
    kv(out, "elements", std::to_string(e.elements));
    return out;
}

std::string to_key_value(const VerificationReport& r) {
    std::string out;
    kv(out, "scenario", r.name);
    kv(out, "status", r.status);
    kv(out, "pass", r.pass ? "true" : "false");
    kv(out, "expected_violation", r.expected_violation ? "true" : "false");
    kv(out, "measured", r.measured);
    kv(out, "predicted", r.predicted);
    kv(out, "tolerance", r.tolerance);
    kv(out, "dim_seed", r.dim_seed.value);
    kv(out, "dim_seed_provenance", r.dim_seed.provenance);
    kv(out, "dim_limit_set", r.dim_limit_set.value);
    kv(out, "dim_limit_set_provenance", r.dim_limit_set.provenance);
    kv(out, "exponent", r.exponent.value);
    kv(out, "exponent_provenance", r.exponent.provenance);
    box_fields(out, r.orbital, "orbital.");
    for (const auto& [k, v] : r.metrics) kv(out, "metric." + k, v);
    for (const auto& [k, v] : r.parameters) kv(out, "param." + k, v);
    return out;
}

std::string counts_csv(const BoxCountReport& r) {
    std::string out = "delta,count\n";
    for (std::size_t i = 0; i < r.scales.size(); ++i) out += fmt::sprintf("%.12f,%zu\n", r.scales[i], r.counts[i]);
    return out;
}

std::string points_csv(const PointCloud& cloud) {
    std::string out;
    out.reserve(cloud.size() * 32);
    for (const Point& p : cloud.points) {
        if (cloud.ambient_dim == 1)
            out += fmt::sprintf("%.12f\n", p[0]);
        else
            out += fmt::sprintf("%.12f,%.12f\n", p[0], p[1]);
    }
    return out;
}

std::string records_csv(const GroupSpec& spec, const Enumeration& enumeration) {
    std::string out = "index,length,word,a_re,a_im,b_re,b_im,x,y,dist,deriv0,boundary_gap,class\n";
    for (std::size_t i = 0; i < enumeration.records.size(); ++i) {
        const OrbitRecord& r = enumeration.records[i];
        const auto w = enumeration.word(i);
        out += fmt::sprintf("%zu,%d,%s,%.12g,%.12g,%.12g,%.12g,%.12f,%.12f,%.12g,%.12g,%.12g,%s\n", i, r.length,
                            word_to_string(spec, w), r.map.a().real(), r.map.a().imag(), r.map.b().real(),
                            r.map.b().imag(), r.base_image.real(), r.base_image.imag(), r.dist, r.deriv0,
                            r.boundary_gap, std::string(to_string(classify(r.map))));
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw Error(ErrorKind::Io, "write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorKind::Io, "cannot move output into " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

PointCloud read_points_csv(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    PointCloud cloud;
    int columns = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string_view line = trim(std::string_view(text).substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string_view> fields;
        for (std::size_t c; (c = line.find(',')) != std::string_view::npos; line.remove_prefix(c + 1))
            fields.push_back(trim(line.substr(0, c)));
        fields.push_back(trim(line));
        double vals[2] = {0.0, 0.0};
        const int n = static_cast<int>(fields.size());
        bool ok = n == 1 || n == 2;
        for (int i = 0; ok && i < n; ++i) {
            const std::string_view f = fields[static_cast<std::size_t>(i)];
            auto [p, err] = std::from_chars(f.data(), f.data() + f.size(), vals[i]);
            ok = err == std::errc() && p == f.data() + f.size() && !f.empty();
        }
        if (!ok) throw Error(ErrorKind::Io, path.string() + ":" + std::to_string(line_no) + ": expected 'x' or 'x,y'");
        if (columns == 0) columns = n;
        if (n != columns)
            throw Error(ErrorKind::Io, path.string() + ":" + std::to_string(line_no) + ": column count changed");
        cloud.points.push_back({vals[0], vals[1]});
    }
    cloud.ambient_dim = columns == 1 ? 1 : 2;
    return cloud;
}

} // namespace orbital
