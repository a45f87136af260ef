#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "specrv/classical_rv.hpp"
#include "specrv/matrix_spectral.hpp"
#include "specrv/oscillator.hpp"

namespace specrv {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 17 significant digits, '.' decimal separator: round-trips any double.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// line/column of a byte offset, for pointing at JSON parse failures
inline std::pair<int, int> line_col_from_offset(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw io_error("write failed: " + path);
}

// Operator document: { "dim": n, "re": [[...]], "im": [[...]] }.
inline HermitianOperator operator_from_json(const nlohmann::json& j) {
    if (!j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw std::invalid_argument("operator JSON: requires fields dim, re, im");
    const int dim = j.at("dim").get<int>();
    if (dim < 1) throw std::invalid_argument("operator JSON: requires dim >= 1");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (int(re.size()) != dim || int(im.size()) != dim)
        throw std::invalid_argument("operator JSON: re/im row count != dim");
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const auto& rr = re.at(std::size_t(r));
        const auto& ri = im.at(std::size_t(r));
        if (int(rr.size()) != dim || int(ri.size()) != dim)
            throw std::invalid_argument("operator JSON: re/im column count != dim");
        for (int c = 0; c < dim; ++c)
            m(r, c) = Complex(rr.at(std::size_t(c)).get<double>(),
                              ri.at(std::size_t(c)).get<double>());
    }
    return HermitianOperator(std::move(m));
}

// State document: { "re": [...], "im": [...] }.
inline StateVector state_from_json(const nlohmann::json& j) {
    if (!j.contains("re") || !j.contains("im"))
        throw std::invalid_argument("state JSON: requires fields re, im");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != im.size() || re.empty())
        throw std::invalid_argument("state JSON: re/im must be nonempty equal-length arrays");
    CVector v(re.size());
    for (std::size_t i = 0; i < re.size(); ++i)
        v[Eigen::Index(i)] = Complex(re.at(i).get<double>(), im.at(i).get<double>());
    return StateVector(std::move(v));
}

// Decomposition document with the 17-significant-digit number format used
// by every other numeric output of the toolkit.
inline std::string decomposition_to_json_text(const SpectralDecomposition& d) {
    std::string out = "{\n  \"eigenvalues\": [";
    for (std::size_t i = 0; i < d.eigenvalues.size(); ++i) {
        if (i) out += ", ";
        out += format_g17(d.eigenvalues[i]);
    }
    out += "],\n  \"projectors\": [\n";
    const auto emit_part = [&](const Matrix& p, bool imag) {
        out += imag ? "\"im\": [" : "\"re\": [";
        for (int r = 0; r < d.dim; ++r) {
            if (r) out += ", ";
            out += '[';
            for (int c = 0; c < d.dim; ++c) {
                if (c) out += ", ";
                out += format_g17(imag ? p(r, c).imag() : p(r, c).real());
            }
            out += ']';
        }
        out += ']';
    };
    for (std::size_t k = 0; k < d.projectors.size(); ++k) {
        out += "    {";
        emit_part(d.projectors[k], false);
        out += ", ";
        emit_part(d.projectors[k], true);
        out += k + 1 < d.projectors.size() ? "},\n" : "}\n";
    }
    out += "  ]\n}\n";
    return out;
}

inline nlohmann::json decomposition_to_json(const SpectralDecomposition& d) {
    nlohmann::json j;
    j["eigenvalues"] = d.eigenvalues;
    nlohmann::json projs = nlohmann::json::array();
    for (const auto& p : d.projectors) {
        nlohmann::json re = nlohmann::json::array();
        nlohmann::json im = nlohmann::json::array();
        for (int r = 0; r < d.dim; ++r) {
            nlohmann::json re_row = nlohmann::json::array();
            nlohmann::json im_row = nlohmann::json::array();
            for (int c = 0; c < d.dim; ++c) {
                re_row.push_back(p(r, c).real());
                im_row.push_back(p(r, c).imag());
            }
            re.push_back(std::move(re_row));
            im.push_back(std::move(im_row));
        }
        projs.push_back(nlohmann::json{{"re", std::move(re)}, {"im", std::move(im)}});
    }
    j["projectors"] = std::move(projs);
    return j;
}

// Run parameters: { "hbar":1, "mass":1, "omega":1,
//                   "grid":{"lo":-6,"hi":6,"n":601}, "mc_n":1000000 }.
// Missing keys keep their defaults.
struct RunConfig {
    OscillatorParams oscillator{};
    GridSpec grid{-6.0, 6.0, 601};
    std::int64_t mc_n = 1000000;
};

inline RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig cfg;
    if (j.contains("hbar")) cfg.oscillator.hbar = j.at("hbar").get<double>();
    if (j.contains("mass")) cfg.oscillator.mass = j.at("mass").get<double>();
    if (j.contains("omega")) cfg.oscillator.omega = j.at("omega").get<double>();
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (g.contains("lo")) cfg.grid.lo = g.at("lo").get<double>();
        if (g.contains("hi")) cfg.grid.hi = g.at("hi").get<double>();
        if (g.contains("n")) cfg.grid.n = g.at("n").get<int>();
    }
    if (j.contains("mc_n")) cfg.mc_n = j.at("mc_n").get<std::int64_t>();
    cfg.oscillator.validate();
    cfg.grid.validate();
    return cfg;
}

// CSV of equal-length numeric columns; 17 significant digits, LF endings.
inline void write_csv(const std::string& path, const std::vector<std::string>& headers,
                      const std::vector<std::vector<double>>& columns) {
    if (headers.size() != columns.size() || columns.empty())
        throw std::invalid_argument("write_csv: header/column mismatch");
    const std::size_t rows = columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows) throw std::invalid_argument("write_csv: ragged columns");
    std::string text;
    for (std::size_t c = 0; c < headers.size(); ++c) {
        if (c) text += ',';
        text += headers[c];
    }
    text += '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) text += ',';
            text += format_g17(columns[c][r]);
        }
        text += '\n';
    }
    write_text_file(path, text);
}

inline void write_density_csv(const std::string& path, const GridDensity& f,
                              const std::string& xname = "x",
                              const std::string& fname = "f") {
    write_csv(path, {xname, fname}, {f.grid.points(), f.values});
}

namespace detail {

template <class Field2D>
void write_xyf_csv(const std::string& path, const Field2D& d) {
    std::vector<double> xs, ys, fs;
    const std::size_t total = d.values.size();
    xs.reserve(total);
    ys.reserve(total);
    fs.reserve(total);
    for (int i = 0; i < d.grid_x.n; ++i)
        for (int j = 0; j < d.grid_y.n; ++j) {
            xs.push_back(d.grid_x.point(i));
            ys.push_back(d.grid_y.point(j));
            fs.push_back(d.at(i, j));
        }
    write_csv(path, {"x", "y", "f"}, {xs, ys, fs});
}

}  // namespace detail

inline void write_quasi2d_csv(const std::string& path, const QuasiDensity2D& d) {
    detail::write_xyf_csv(path, d);
}

inline void write_density2d_csv(const std::string& path, const Density2D& d) {
    detail::write_xyf_csv(path, d);
}

inline void write_charfn_csv(const std::string& path, const CharFn& cf) {
    if (cf.sample_s.empty())
        throw std::invalid_argument("write_charfn_csv: characteristic function not tabulated");
    std::vector<double> re, im;
    re.reserve(cf.sample_values.size());
    im.reserve(cf.sample_values.size());
    for (const auto& v : cf.sample_values) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    write_csv(path, {"s", "re", "im"}, {cf.sample_s, re, im});
}

}  // namespace specrv
