#pragma once

#include <stdexcept>
#include <string>

namespace veclat {

enum class errc {
    non_power_of_two_lane,
    lane_exceeds_extent,
    dimension_mismatch,
    coord_out_of_range,
    index_out_of_range,
    invalid_split,
    odd_complex_rotation,
    invalid_level,
    dim_out_of_range,
    dimension_not_four,
    geometry_mismatch,
    shape_mismatch,
    invalid_vector_length,
    permute_unsupported_layout,
    unknown_kernel,
    invalid_config,
    io_failure,
};

/// Stable machine-parseable code names (used verbatim by the CLI error line).
constexpr const char* to_string(errc code) {
    switch (code) {
    case errc::non_power_of_two_lane:      return "NonPowerOfTwoLane";
    case errc::lane_exceeds_extent:        return "LaneExceedsExtent";
    case errc::dimension_mismatch:         return "DimensionMismatch";
    case errc::coord_out_of_range:         return "CoordOutOfRange";
    case errc::index_out_of_range:         return "IndexOutOfRange";
    case errc::invalid_split:              return "InvalidSplit";
    case errc::odd_complex_rotation:       return "OddComplexRotation";
    case errc::invalid_level:              return "InvalidLevel";
    case errc::dim_out_of_range:           return "DimOutOfRange";
    case errc::dimension_not_four:         return "DimensionNotFour";
    case errc::geometry_mismatch:          return "GeometryMismatch";
    case errc::shape_mismatch:             return "ShapeMismatch";
    case errc::invalid_vector_length:      return "InvalidVectorLength";
    case errc::permute_unsupported_layout: return "PermuteUnsupportedLayout";
    case errc::unknown_kernel:             return "UnknownKernel";
    case errc::invalid_config:             return "InvalidConfig";
    case errc::io_failure:                 return "IoFailure";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& detail) {
    throw Error(code, detail);
}

} // namespace veclat
