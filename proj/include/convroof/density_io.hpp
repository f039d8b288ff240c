#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "convroof/linalg.hpp"

namespace convroof {

/// Density matrix file: {"dimA": int, "dimB": int, "matrix": [[re, im], ...]}
/// with (dimA*dimB)^2 entries in row-major order.
struct DensityFile {
    int dimA = 0;
    int dimB = 0;
    ComplexMatrix rho;
};

/// Parses and checks shape, finiteness and Hermiticity. Errors are InputError
/// with the offending field or (row, col) in the message.
DensityFile parse_density_json(std::string_view text);
DensityFile load_density_json(const std::filesystem::path& path);

std::string to_density_json(const ComplexMatrix& rho, int dimA, int dimB);

}  // namespace convroof
