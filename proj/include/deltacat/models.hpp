#pragma once

#include <deltacat/errors.hpp>
#include <deltacat/model.hpp>
#include <deltacat/models/findiff.hpp>
#include <deltacat/models/module.hpp>
#include <deltacat/models/smooth.hpp>
#include <deltacat/models/stream.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace deltacat {

struct ModelOptions {
    /// Relative tolerance of the float smooth model.
    std::optional<double> rel_tol;
    /// Overrides the prefix depth of stream models.
    std::optional<std::size_t> stream_depth;
};

namespace detail {

inline unsigned long long parse_count(std::string_view text, const std::string& whole) {
    if (text.empty()) throw UnknownModel(whole);
    unsigned long long v = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw UnknownModel(whole);
        v = v * 10 + static_cast<unsigned long long>(c - '0');
    }
    return v;
}

} // namespace detail

/// Model by name: "findiff", "smooth", "smooth:exact", "module:r=<k>",
/// "stream" or "stream:depth=<n>".
inline Model make_model(const std::string& name, const ModelOptions& opts = {}) {
    if (name == "findiff") return make_findiff_model();
    if (name == "smooth") return make_smooth_model(false, opts.rel_tol.value_or(1e-6));
    if (name == "smooth:exact") return make_smooth_model(true);
    constexpr std::string_view module_prefix = "module:r=";
    if (name.rfind(module_prefix, 0) == 0)
        return make_module_model(detail::parse_count(std::string_view(name).substr(module_prefix.size()), name));
    if (name == "stream") return make_stream_model(opts.stream_depth.value_or(8));
    constexpr std::string_view stream_prefix = "stream:depth=";
    if (name.rfind(stream_prefix, 0) == 0) {
        auto depth = detail::parse_count(std::string_view(name).substr(stream_prefix.size()), name);
        if (depth == 0) throw UnknownModel(name);
        return make_stream_model(opts.stream_depth.value_or(depth));
    }
    throw UnknownModel(name);
}

} // namespace deltacat
