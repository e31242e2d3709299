#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

#include "hoffman/constants.hpp"
#include "hoffman/error.hpp"
#include "hoffman/mapping.hpp"

/// Instance files (JSON, "schema": 1) and stable report encoding.
namespace hoffman::io {

using Json = nlohmann::ordered_json;

/// Raised for schema violations; the message names the offending field path.
class SchemaError : public InputError {
public:
    using InputError::InputError;
};

struct Instance {
    DenseMatrix a;
    cones::ConeRepr r;
    cones::ConeRepr s;
    mapping::NormPair norms;
    std::string side = "primal";  ///< "primal" or "adjoint"
    ComputeOptions options;
    std::uint64_t seed = 1;
};

/// Parses an instance; relative CSV paths resolve against base_dir.
Instance parse_instance(std::string_view text, const std::filesystem::path& base_dir = {});
Instance load_instance(const std::filesystem::path& path);

/// Matrix from a CSV file or from JSON (a bare array of rows, or an object with "A" or "matrix").
DenseMatrix load_matrix(const std::filesystem::path& path);

/// The map the instance describes; for side "adjoint" the adjoint of the stated map.
mapping::SolutionMap to_map(const Instance& inst);

Json cone_json(const cones::ConeRepr& c);
Json index_json(const mapping::TangentIndex& t);
Json report_json(const HoffmanReport& r);
Json matrix_json(const DenseMatrix& a);
Json vector_json(std::span<const double> v);

/// Pretty JSON with insertion-ordered keys and doubles printed with %.17g;
/// non-finite doubles are written as null.
std::string dump_stable(const Json& j);

}  // namespace hoffman::io
