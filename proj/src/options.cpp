#include "epm/options.hpp"

namespace epm {

std::string_view to_string(CoefficientMode mode) {
    return mode == CoefficientMode::as_published ? "as_published" : "oracle_consistent";
}

std::string_view to_string(FrameMode mode) {
    return mode == FrameMode::as_published ? "as_published" : "consistent";
}

std::optional<CoefficientMode> parse_coefficient_mode(std::string_view text) {
    if (text == "as_published") {
        return CoefficientMode::as_published;
    }
    if (text == "oracle_consistent") {
        return CoefficientMode::oracle_consistent;
    }
    return std::nullopt;
}

std::optional<FrameMode> parse_frame_mode(std::string_view text) {
    if (text == "as_published") {
        return FrameMode::as_published;
    }
    if (text == "consistent" || text == "frame_consistent") {
        return FrameMode::consistent;
    }
    return std::nullopt;
}

} // namespace epm
