#include "hoffman/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hoffman/error.hpp"

namespace hoffman::io {

using cones::ConeRepr;
using cones::Sign;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
    throw SchemaError(field + ": " + msg);
}

const Json& need(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing field");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (j.is_null()) return std::nan("");
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::size_t count(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

Vector vector_of(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    Vector v;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const double x = number(j[i], path + "[" + std::to_string(i) + "]");
        if (std::isnan(x)) fail(path + "[" + std::to_string(i) + "]", "expected a number");
        v.push_back(x);
    }
    return v;
}

std::vector<Vector> rows_of(const Json& j, const std::string& path, std::size_t width) {
    if (!j.is_array()) fail(path, "expected an array of rows");
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        rows.push_back(vector_of(j[i], p));
        if (width != 0 && rows.back().size() != width)
            fail(p, "expected " + std::to_string(width) + " entries, got " + std::to_string(rows.back().size()));
        if (width == 0) width = rows.back().size();
    }
    return rows;
}

DenseMatrix parse_csv(std::istream& in, const std::string& what) {
    std::vector<Vector> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        Vector row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                fail(what + ":" + std::to_string(lineno), "not a number: '" + cell + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            fail(what + ":" + std::to_string(lineno), "row length differs from the first row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) fail(what, "empty matrix");
    return DenseMatrix::from_rows(rows);
}

DenseMatrix parse_matrix(const Json& j, const std::string& path, const std::filesystem::path& base) {
    if (j.is_object() && j.contains("csv")) {
        const auto& f = j["csv"];
        if (!f.is_string()) fail(path + ".csv", "expected a file path");
        std::filesystem::path p = f.get<std::string>();
        if (p.is_relative()) p = base / p;
        std::ifstream in(p);
        if (!in) fail(path + ".csv", "cannot open " + p.string());
        return parse_csv(in, p.string());
    }
    const auto rows = rows_of(j, path, 0);
    if (rows.empty()) fail(path, "empty matrix");
    if (rows.front().empty()) fail(path, "empty rows");
    return DenseMatrix::from_rows(rows);
}

Sign parse_sign(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a sign string");
    const auto s = j.get<std::string>();
    if (s == "+" || s == "nonneg") return Sign::Nonneg;
    if (s == "-" || s == "nonpos") return Sign::Nonpos;
    if (s == "0" || s == "zero") return Sign::Zero;
    if (s == "*" || s == "free") return Sign::Free;
    fail(path, "unknown sign '" + s + "' (use +, -, 0 or free)");
}

ConeRepr parse_cone(const Json& raw, const std::string& path, std::size_t dim_hint) {
    const Json& j = raw.is_object() && raw.contains("cone") ? raw["cone"] : raw;
    const std::string p = &j == &raw ? path : path + ".cone";
    const auto& type_field = need(j, "type", p);
    if (!type_field.is_string()) fail(p + ".type", "expected a string");
    const std::string type = type_field.get<std::string>();
    const std::size_t dim = j.contains("dim") ? count(j["dim"], p + ".dim") : dim_hint;
    if (type == "orthant") {
        if (j.contains("signs")) {
            const auto& s = j["signs"];
            if (!s.is_array()) fail(p + ".signs", "expected an array");
            cones::SignedOrthant o;
            for (std::size_t i = 0; i < s.size(); ++i)
                o.signs.push_back(parse_sign(s[i], p + ".signs[" + std::to_string(i) + "]"));
            return o;
        }
        const Sign sg = j.contains("sign") ? parse_sign(j["sign"], p + ".sign") : Sign::Nonneg;
        return cones::SignedOrthant{std::vector<Sign>(dim, sg)};
    }
    if (type == "box") {
        const auto& lo = need(j, "lower", p);
        const auto& hi = need(j, "upper", p);
        if (!lo.is_array() || !hi.is_array()) fail(p, "lower and upper must be arrays");
        cones::Box b;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            const double x = number(lo[i], p + ".lower[" + std::to_string(i) + "]");
            b.lower.push_back(std::isnan(x) ? -std::numeric_limits<double>::infinity() : x);
        }
        for (std::size_t i = 0; i < hi.size(); ++i) {
            const double x = number(hi[i], p + ".upper[" + std::to_string(i) + "]");
            b.upper.push_back(std::isnan(x) ? std::numeric_limits<double>::infinity() : x);
        }
        if (b.lower.size() != b.upper.size()) fail(p, "lower and upper differ in length");
        return b;
    }
    if (type == "subspace") {
        const auto rows = rows_of(need(j, "basis", p), p + ".basis", dim);
        std::size_t d = dim;
        if (d == 0 && !rows.empty()) d = rows.front().size();
        return cones::Subspace::spanned_by(DenseMatrix::from_columns(rows, d), d);
    }
    if (type == "zero") return cones::ZeroSet{dim};
    if (type == "full") return cones::FullSpace{dim};
    if (type == "hcone") {
        cones::HCone h;
        h.dim = dim;
        h.ineq = j.contains("ineq") ? DenseMatrix::from_rows(rows_of(j["ineq"], p + ".ineq", dim), dim)
                                    : DenseMatrix(0, dim);
        h.eq = j.contains("eq") ? DenseMatrix::from_rows(rows_of(j["eq"], p + ".eq", dim), dim) : DenseMatrix(0, dim);
        return h;
    }
    if (type == "vcone") {
        cones::VCone v;
        v.dim = dim;
        v.generators = rows_of(need(j, "generators", p), p + ".generators", dim);
        return v;
    }
    if (type == "product") {
        const auto& parts = need(j, "parts", p);
        if (!parts.is_array()) fail(p + ".parts", "expected an array");
        cones::Product prod;
        for (std::size_t i = 0; i < parts.size(); ++i)
            prod.parts.push_back(parse_cone(parts[i], p + ".parts[" + std::to_string(i) + "]", 0));
        return prod;
    }
    fail(p + ".type", "unknown cone type '" + type + "'");
}

NormTag norm_field(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected \"l1\", \"l2\" or \"linf\"");
    try {
        return parse_norm(j.get<std::string>());
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

std::string location(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void write_number(std::string& out, double x) {
    if (!std::isfinite(x)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
}

void dump_into(std::string& out, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += inner + Json(k).dump() + ": ";
                dump_into(out, v, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
            if (j.empty()) {
                out += "[]";
                return;
            }
            if (flat) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    dump_into(out, j[i], indent + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += inner;
                dump_into(out, j[i], indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float:
            write_number(out, j.get<double>());
            return;
        default:
            out += j.dump();
    }
}

Json index_set(const IndexSet& s) {
    Json a = Json::array();
    for (int i : s) a.push_back(i);
    return a;
}

std::string sign_token(Sign s) {
    switch (s) {
        case Sign::Nonneg: return "+";
        case Sign::Nonpos: return "-";
        case Sign::Zero: return "0";
        case Sign::Free: return "free";
    }
    return "free";
}

}  // namespace

Instance parse_instance(std::string_view text, const std::filesystem::path& base_dir) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError("invalid JSON at " + location(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    if (!j.is_object()) fail("$", "expected an object");
    const auto& schema = need(j, "schema", "$");
    if (!schema.is_number_integer() || schema.get<int>() != 1) fail("$.schema", "unsupported schema version");
    Instance inst;
    const Json& mat = j.contains("A") ? j["A"] : need(j, "matrix", "$");
    inst.a = parse_matrix(mat, j.contains("A") ? "$.A" : "$.matrix", base_dir);
    inst.r = parse_cone(need(j, "R", "$"), "$.R", inst.a.cols());
    inst.s = parse_cone(need(j, "S", "$"), "$.S", inst.a.rows());
    const auto& norms = need(j, "norms", "$");
    inst.norms.b = norm_field(need(norms, "b", "$.norms"), "$.norms.b");
    inst.norms.x = norm_field(need(norms, "x", "$.norms"), "$.norms.x");
    if (j.contains("side")) {
        const auto& s = j["side"];
        if (!s.is_string() || (s != "primal" && s != "adjoint")) fail("$.side", "expected \"primal\" or \"adjoint\"");
        inst.side = s.get<std::string>();
    }
    if (j.contains("options")) {
        const auto& o = j["options"];
        if (!o.is_object()) fail("$.options", "expected an object");
        if (o.contains("tol")) inst.options.tol = number(o["tol"], "$.options.tol");
        if (o.contains("threads")) inst.options.threads = static_cast<unsigned>(count(o["threads"], "$.options.threads"));
        if (o.contains("seed")) inst.seed = count(o["seed"], "$.options.seed");
        if (!(inst.options.tol > 0)) fail("$.options.tol", "must be positive");
    }
    if (cones::dim(inst.r) != inst.a.cols())
        fail("$.R", "dimension " + std::to_string(cones::dim(inst.r)) + " does not match the " +
                        std::to_string(inst.a.cols()) + " columns of A");
    if (cones::dim(inst.s) != inst.a.rows())
        fail("$.S", "dimension " + std::to_string(cones::dim(inst.s)) + " does not match the " +
                        std::to_string(inst.a.rows()) + " rows of A");
    return inst;
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path.string() + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_instance(ss.str(), path.parent_path());
    } catch (const SchemaError& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

DenseMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path.string() + ": cannot open file");
    if (path.extension() == ".csv") return parse_csv(in, path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path.string() + ": invalid JSON at " + location(text, e.byte == 0 ? 0 : e.byte - 1));
    }
    if (j.is_object()) {
        if (j.contains("A")) return parse_matrix(j["A"], "$.A", path.parent_path());
        return parse_matrix(need(j, "matrix", "$"), "$.matrix", path.parent_path());
    }
    return parse_matrix(j, "$", path.parent_path());
}

mapping::SolutionMap to_map(const Instance& inst) {
    mapping::SolutionMap m(inst.a, inst.r, inst.s, inst.norms);
    return inst.side == "adjoint" ? mapping::adjoint(m) : m;
}

Json vector_json(std::span<const double> v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

Json matrix_json(const DenseMatrix& a) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(vector_json(a.row(i)));
    return rows;
}

Json cone_json(const ConeRepr& c) {
    Json j;
    j["type"] = cones::kind_name(c);
    if (const auto* o = c.as<cones::SignedOrthant>()) {
        Json s = Json::array();
        for (Sign g : o->signs) s.push_back(sign_token(g));
        j["signs"] = s;
    } else if (const auto* b = c.as<cones::Box>()) {
        j["lower"] = vector_json(b->lower);
        j["upper"] = vector_json(b->upper);
    } else if (const auto* s = c.as<cones::Subspace>()) {
        j["dim"] = s->basis.rows();
        j["basis"] = matrix_json(s->basis.transpose());
    } else if (const auto* z = c.as<cones::ZeroSet>()) {
        j["dim"] = z->dim;
    } else if (const auto* f = c.as<cones::FullSpace>()) {
        j["dim"] = f->dim;
    } else if (const auto* h = c.as<cones::HCone>()) {
        j["dim"] = h->dim;
        j["ineq"] = matrix_json(h->ineq);
        j["eq"] = matrix_json(h->eq);
    } else if (const auto* v = c.as<cones::VCone>()) {
        j["dim"] = v->dim;
        Json g = Json::array();
        for (const auto& x : v->generators) g.push_back(vector_json(x));
        j["generators"] = g;
    } else if (const auto* p = c.as<cones::Product>()) {
        Json parts = Json::array();
        for (const auto& part : p->parts) parts.push_back(cone_json(part));
        j["parts"] = parts;
    }
    return j;
}

Json index_json(const mapping::TangentIndex& t) {
    Json j;
    j["x_nonneg"] = index_set(t.x_nonneg);
    j["x_nonpos"] = index_set(t.x_nonpos);
    j["s_nonneg"] = index_set(t.s_nonneg);
    j["s_nonpos"] = index_set(t.s_nonpos);
    j["side"] = t.side();
    return j;
}

Json report_json(const HoffmanReport& r) {
    Json j;
    j["value"] = r.infinite ? Json(nullptr) : Json(r.value);
    j["infinite"] = r.infinite;
    j["method"] = std::string(to_string(r.method));
    j["attaining_index"] = index_json(r.attaining_index);
    if (!r.basis.empty()) j["basis"] = index_set(r.basis);
    if (!r.signature.empty()) {
        Json s = Json::array();
        for (int x : r.signature) s.push_back(x);
        j["signature"] = s;
    }
    Json w;
    w["direction_u"] = vector_json(r.direction_u);
    w["direction_v"] = vector_json(r.direction_v);
    w["b"] = vector_json(r.witness_b);
    w["x"] = vector_json(r.witness_x);
    j["witness"] = w;
    j["tol"] = r.tol;
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    return j;
}

std::string dump_stable(const Json& j) {
    std::string out;
    dump_into(out, j, 0);
    out += "\n";
    return out;
}

}  // namespace hoffman::io
