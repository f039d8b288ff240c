#include "convroof/density_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "convroof/errors.hpp"

namespace convroof {

namespace {

using nlohmann::json;

int read_dim(const json& doc, const char* key) {
    if (!doc.contains(key)) throw InputError(std::string("density file: missing field \"") + key + "\"");
    const json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw InputError(std::string("density file: field \"") + key + "\" must be a positive integer");
    }
    return v.get<int>();
}

std::string where(Eigen::Index row, Eigen::Index col) {
    return "(row " + std::to_string(row) + ", col " + std::to_string(col) + ")";
}

}  // namespace

DensityFile parse_density_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("density file: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("density file: top level must be an object");

    DensityFile out;
    out.dimA = read_dim(doc, "dimA");
    out.dimB = read_dim(doc, "dimB");
    const Eigen::Index d = static_cast<Eigen::Index>(out.dimA) * out.dimB;

    if (!doc.contains("matrix") || !doc.at("matrix").is_array()) {
        throw InputError("density file: field \"matrix\" must be an array of [re, im] pairs");
    }
    const json& entries = doc.at("matrix");
    if (static_cast<Eigen::Index>(entries.size()) != d * d) {
        throw InputError("density file: \"matrix\" has " + std::to_string(entries.size()) + " entries, expected " +
                         std::to_string(d * d) + " for dimension " + std::to_string(d));
    }

    out.rho.resize(d, d);
    for (Eigen::Index row = 0; row < d; ++row) {
        for (Eigen::Index col = 0; col < d; ++col) {
            const json& e = entries[static_cast<std::size_t>(row * d + col)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw InputError("density file: entry " + where(row, col) + " must be [re, im]");
            }
            const double re = e[0].get<double>();
            const double im = e[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im)) {
                throw InputError("density file: entry " + where(row, col) + " is not finite");
            }
            out.rho(row, col) = Complex(re, im);
        }
    }

    if (hermiticity_defect(out.rho) > kHermitianTolerance) {
        Eigen::Index wr = 0, wc = 0;
        (out.rho - out.rho.adjoint()).cwiseAbs().maxCoeff(&wr, &wc);
        throw InputError("density file: matrix is not Hermitian, entry " + where(wr, wc) +
                         " differs from the conjugate of " + where(wc, wr));
    }
    return out;
}

DensityFile load_density_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("density file: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_density_json(buf.str());
}

std::string to_density_json(const ComplexMatrix& rho, int dimA, int dimB) {
    json doc;
    doc["dimA"] = dimA;
    doc["dimB"] = dimB;
    json entries = json::array();
    for (Eigen::Index row = 0; row < rho.rows(); ++row) {
        for (Eigen::Index col = 0; col < rho.cols(); ++col) {
            entries.push_back({rho(row, col).real(), rho(row, col).imag()});
        }
    }
    doc["matrix"] = std::move(entries);
    return doc.dump();
}

}  // namespace convroof
