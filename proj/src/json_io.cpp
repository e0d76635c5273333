#include "uff/json_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace uff {

namespace {

const Json& require_field(const Json& j, const char* name, const std::string& path) {
    if (!j.is_object()) throw InputError(path + ": expected an object");
    const auto it = j.find(name);
    if (it == j.end()) throw InputError(path + ": missing field \"" + name + "\"");
    return *it;
}

double require_double(const Json& j, const std::string& path) {
    if (!j.is_number()) throw InputError(path + ": expected a number");
    return j.get<double>();
}

std::int64_t require_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw InputError(path + ": expected an integer");
    return j.get<std::int64_t>();
}

std::uint64_t require_uint(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        throw InputError(path + ": expected an unsigned integer");
    }
    return j.get<std::uint64_t>();
}

bool require_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) throw InputError(path + ": expected a boolean");
    return j.get<bool>();
}

const Json& require_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw InputError(path + ": expected an array");
    return j;
}

std::string require_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw InputError(path + ": expected a string");
    return j.get<std::string>();
}

Json encode_complex(const Complex& z) {
    return Json::array({z.real(), z.imag()});
}

Complex decode_complex(const Json& j, const std::string& path) {
    require_array(j, path);
    if (j.size() != 2) throw InputError(path + ": expected [re, im]");
    return {require_double(j[0], path + "[0]"), require_double(j[1], path + "[1]")};
}

std::vector<Complex> decode_complex_vector(const Json& j, const std::string& path) {
    require_array(j, path);
    std::vector<Complex> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(decode_complex(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Json encode_complex_vector(std::span<const Complex> v) {
    Json arr = Json::array();
    for (const Complex& z : v) arr.push_back(encode_complex(z));
    return arr;
}

} // namespace

Json encode(const ProjectivePoint& p) {
    if (p.infinite) return Json("inf");
    return Json{{"re", p.value.real()}, {"im", p.value.imag()}};
}

ProjectivePoint decode_projective_point(const Json& j, const std::string& path) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return ProjectivePoint::infinity();
        throw InputError(path + ": the only string form is \"inf\"");
    }
    return ProjectivePoint(Complex(require_double(require_field(j, "re", path), path + ".re"),
                                   require_double(require_field(j, "im", path), path + ".im")));
}

Json encode(const CanonicalQubit& q) {
    return Json{{"base", Json{{"re", q.base.real()}, {"im", q.base.imag()}}},
                {"flipped", q.flipped}};
}

CanonicalQubit decode_canonical_qubit(const Json& j, const std::string& path) {
    const Json& base = require_field(j, "base", path);
    const ProjectivePoint p = decode_projective_point(base, path + ".base");
    if (p.infinite) throw InputError(path + ".base: a canonical base is always finite");
    return {p.value, require_bool(require_field(j, "flipped", path), path + ".flipped")};
}

Json encode(const SubsetMask& m) {
    Json arr = Json::array();
    for (int pos : m.positions()) arr.push_back(pos);
    return arr;
}

SubsetMask decode_subset_mask(const Json& j, const std::string& path) {
    require_array(j, path);
    SubsetMask m;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::int64_t pos = require_int(j[i], path + "[" + std::to_string(i) + "]");
        if (pos < 1 || pos > 63) {
            throw InputError(path + "[" + std::to_string(i) + "]: position outside 1..63");
        }
        m = m.with(static_cast<int>(pos));
    }
    return m;
}

Json encode(const FactorState& f) {
    Json j{{"dim", f.dim}, {"amps", encode_complex_vector(f.amplitudes)}};
    if (f.canonical) j["canonical"] = encode(*f.canonical);
    return j;
}

FactorState decode_factor_state(const Json& j, const std::string& path) {
    const std::int64_t dim = require_int(require_field(j, "dim", path), path + ".dim");
    std::vector<Complex> amps =
        decode_complex_vector(require_field(j, "amps", path), path + ".amps");
    if (dim < 1 || static_cast<std::size_t>(dim) != amps.size()) {
        throw InputError(path + ".amps: length does not match dim");
    }
    FactorState f;
    try {
        f = FactorState::from_amplitudes(std::move(amps));
    } catch (const NotUnitNorm&) {
        throw InputError(path + ".amps: amplitudes are not unit norm");
    }
    if (j.is_object() && j.contains("canonical")) {
        if (f.dim != 2) {
            throw InputError(path + ".canonical: only dim-2 factors carry canonical data");
        }
        const CanonicalQubit q = decode_canonical_qubit(j["canonical"], path + ".canonical");
        // The stored pair is authoritative (it preserves the exact base
        // bits); it just has to agree with the amplitudes.
        const QubitVector lift = point_to_vector(q);
        const double mismatch =
            std::abs(std::abs(inner(lift, {f.amplitudes[0], f.amplitudes[1]})) - 1.0);
        if (mismatch > 1e-9) {
            throw InputError(path + ".canonical: does not match the amplitudes");
        }
        f.canonical = q;
    }
    return f;
}

Json encode(const ProductState& s) {
    Json factors = Json::array();
    for (const FactorState& f : s.factors) factors.push_back(encode(f));
    return Json{{"factors", factors}};
}

ProductState decode_product_state(const Json& j, const std::string& path) {
    const Json& factors = require_array(require_field(j, "factors", path), path + ".factors");
    if (factors.empty()) throw InputError(path + ".factors: must be nonempty");
    ProductState s;
    s.factors.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        s.factors.push_back(
            decode_factor_state(factors[i], path + ".factors[" + std::to_string(i) + "]"));
    }
    return s;
}

Json encode(const Uob& u) {
    Json states = Json::array();
    for (const ProductState& s : u.states) states.push_back(encode(s));
    return Json{{"format", 1}, {"signature", u.signature}, {"states", states}};
}

Uob decode_uob(const Json& j, const std::string& path) {
    Uob u;
    const Json& sig = require_array(require_field(j, "signature", path), path + ".signature");
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const std::int64_t d = require_int(sig[i], path + ".signature[" + std::to_string(i) + "]");
        if (d < 1) throw InputError(path + ".signature: dimensions must be positive");
        u.signature.push_back(static_cast<int>(d));
    }
    const Json& states = require_array(require_field(j, "states", path), path + ".states");
    u.states.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        u.states.push_back(
            decode_product_state(states[i], path + ".states[" + std::to_string(i) + "]"));
    }
    return u;
}

namespace {

Json encode_tree_node(const SplitTree& t, int index) {
    const SplitTree::Node& node = t.nodes.at(static_cast<std::size_t>(index));
    if (node.leaf) {
        return Json{{"kind", "leaf"}, {"tail_basis", node.tail_basis_id}};
    }
    return Json{{"kind", "split"},
                {"qubit", node.qubit_index},
                {"point", encode(node.point)},
                {"left", encode_tree_node(t, node.left)},
                {"right", encode_tree_node(t, node.right)}};
}

int decode_tree_node(SplitTree& t, const Json& j, const std::string& path) {
    const std::string kind = require_string(require_field(j, "kind", path), path + ".kind");
    if (kind == "leaf") {
        const std::int64_t id =
            require_int(require_field(j, "tail_basis", path), path + ".tail_basis");
        return t.add_leaf(static_cast<int>(id));
    }
    if (kind == "split") {
        const std::int64_t qubit = require_int(require_field(j, "qubit", path), path + ".qubit");
        const CanonicalQubit point =
            decode_canonical_qubit(require_field(j, "point", path), path + ".point");
        if (point.flipped) {
            throw InputError(path + ".point: split points are stored unflipped");
        }
        const int left = decode_tree_node(t, require_field(j, "left", path), path + ".left");
        const int right = decode_tree_node(t, require_field(j, "right", path), path + ".right");
        return t.add_split(static_cast<int>(qubit), point, left, right);
    }
    throw InputError(path + ".kind: expected \"leaf\" or \"split\"");
}

} // namespace

Json encode(const SplitTree& t) {
    Json bases = Json::array();
    for (const auto& [id, basis] : t.tail_bases) {
        Json vectors = Json::array();
        for (const auto& v : basis) vectors.push_back(encode_complex_vector(v));
        bases.push_back(Json{{"id", id}, {"vectors", vectors}});
    }
    Json j{{"format", 1},
           {"n", t.n_qubits},
           {"tail_dim", t.tail_dim ? Json(*t.tail_dim) : Json(nullptr)},
           {"tail_bases", bases}};
    j["root"] = t.root >= 0 ? encode_tree_node(t, t.root) : Json(nullptr);
    return j;
}

SplitTree decode_split_tree(const Json& j, const std::string& path) {
    SplitTree t;
    t.n_qubits = static_cast<int>(require_int(require_field(j, "n", path), path + ".n"));
    const Json& tail = require_field(j, "tail_dim", path);
    if (!tail.is_null()) {
        const std::int64_t d = require_int(tail, path + ".tail_dim");
        if (d < 1) throw InputError(path + ".tail_dim: must be positive");
        t.tail_dim = static_cast<int>(d);
    }
    const Json& bases = require_array(require_field(j, "tail_bases", path), path + ".tail_bases");
    for (std::size_t i = 0; i < bases.size(); ++i) {
        const std::string base_path = path + ".tail_bases[" + std::to_string(i) + "]";
        const std::int64_t id =
            require_int(require_field(bases[i], "id", base_path), base_path + ".id");
        const Json& vectors =
            require_array(require_field(bases[i], "vectors", base_path), base_path + ".vectors");
        std::vector<std::vector<Complex>> basis;
        for (std::size_t v = 0; v < vectors.size(); ++v) {
            basis.push_back(decode_complex_vector(
                vectors[v], base_path + ".vectors[" + std::to_string(v) + "]"));
        }
        t.tail_bases[static_cast<int>(id)] = std::move(basis);
    }
    t.root = decode_tree_node(t, require_field(j, "root", path), path + ".root");
    return t;
}

Json encode(const HermitianOperator& h) {
    Json rows = Json::array();
    for (int i = 0; i < h.dim(); ++i) {
        Json row = Json::array();
        for (int j2 = 0; j2 < h.dim(); ++j2) row.push_back(encode_complex(h.entries()(i, j2)));
        rows.push_back(row);
    }
    return Json{{"d", h.dim()}, {"entries", rows}};
}

HermitianOperator decode_hermitian(const Json& j, const std::string& path) {
    const std::int64_t d = require_int(require_field(j, "d", path), path + ".d");
    if (d < 1) throw InputError(path + ".d: dimension must be positive");
    const Json& rows = require_array(require_field(j, "entries", path), path + ".entries");
    if (rows.size() != static_cast<std::size_t>(d)) {
        throw InputError(path + ".entries: expected d rows");
    }
    Eigen::MatrixXcd m(d, d);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string row_path = path + ".entries[" + std::to_string(i) + "]";
        const Json& row = require_array(rows[i], row_path);
        if (row.size() != static_cast<std::size_t>(d)) {
            throw InputError(row_path + ": expected d columns");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            m(static_cast<int>(i), static_cast<int>(c)) =
                decode_complex(row[c], row_path + "[" + std::to_string(c) + "]");
        }
    }
    try {
        return HermitianOperator(std::move(m));
    } catch (const NotHermitian& e) {
        throw InputError(path + ".entries: " + e.what());
    }
}

namespace {

Json encode_table_entries(const PhiFamily::Table& table, int coord_count) {
    // sort by raw key so the encoding is byte-stable
    std::vector<const std::pair<const std::string, double>*> items;
    items.reserve(table.size());
    for (const auto& kv : table) items.push_back(&kv);
    std::sort(items.begin(), items.end(),
              [](const auto* a, const auto* b) { return a->first < b->first; });
    Json entries = Json::array();
    for (const auto* kv : items) {
        std::vector<Complex> coords(static_cast<std::size_t>(coord_count));
        for (int i = 0; i < coord_count; ++i) {
            double re = 0.0;
            double im = 0.0;
            std::memcpy(&re, kv->first.data() + 2 * static_cast<std::size_t>(i) * sizeof(double),
                        sizeof(double));
            std::memcpy(&im,
                        kv->first.data() +
                            (2 * static_cast<std::size_t>(i) + 1) * sizeof(double),
                        sizeof(double));
            coords[static_cast<std::size_t>(i)] = Complex(re, im);
        }
        entries.push_back(
            Json{{"coords", encode_complex_vector(coords)}, {"value", kv->second}});
    }
    return entries;
}

} // namespace

Json encode(const PhiFamily& fam) {
    Json families = Json::array();
    const std::uint64_t full = SubsetMask::full(fam.n()).bits;
    for (std::uint64_t mask = 0; mask < full; ++mask) {
        const PhiFamily::Entry& e = fam.entry(SubsetMask(mask));
        Json item{{"mask", encode(SubsetMask(mask))}};
        switch (e.kind) {
        case PhiKind::Constant:
            item["kind"] = "constant";
            item["params"] = Json{{"value", e.constant}};
            break;
        case PhiKind::Polynomial:
            item["kind"] = "poly";
            item["params"] = Json{{"constant", e.poly.constant},
                                  {"real_sum", e.poly.real_sum},
                                  {"imag_sum", e.poly.imag_sum},
                                  {"abs2_sum", e.poly.abs2_sum}};
            break;
        case PhiKind::Prf:
            item["kind"] = "prf";
            item["seed"] = e.seed;
            break;
        case PhiKind::Table: {
            item["kind"] = "table";
            const int coord_count = fam.n() - SubsetMask(mask).count();
            item["params"] =
                Json{{"entries", e.table ? encode_table_entries(*e.table, coord_count)
                                         : Json::array()}};
            break;
        }
        case PhiKind::Hook:
            throw InputError("hook-backed phi families cannot be serialized");
        }
        families.push_back(std::move(item));
    }
    return Json{{"format", 1}, {"n", fam.n()}, {"c", fam.c()}, {"families", families}};
}

PhiFamily decode_phi_family(const Json& j, const std::string& path) {
    const int n = static_cast<int>(require_int(require_field(j, "n", path), path + ".n"));
    if (n < 1 || n > 16) throw InputError(path + ".n: must lie in 1..16");
    const double c = require_double(require_field(j, "c", path), path + ".c");
    const Json& families = require_array(require_field(j, "families", path), path + ".families");

    // start from constants and overwrite every proper subset
    PhiFamily fam = PhiFamily::constants(
        n, std::vector<double>((std::size_t{1} << n) - 1, 0.0), c);
    std::vector<bool> seen(std::size_t{1} << n, false);
    for (std::size_t i = 0; i < families.size(); ++i) {
        const std::string item_path = path + ".families[" + std::to_string(i) + "]";
        const Json& item = families[i];
        const SubsetMask mask =
            decode_subset_mask(require_field(item, "mask", item_path), item_path + ".mask");
        if (mask.bits >= SubsetMask::full(n).bits) {
            throw InputError(item_path + ".mask: must be a proper subset of 1..n");
        }
        PhiFamily::Entry& e = fam.entry_mut(mask);
        const std::string kind =
            require_string(require_field(item, "kind", item_path), item_path + ".kind");
        if (kind == "constant") {
            const Json& params = require_field(item, "params", item_path);
            e.kind = PhiKind::Constant;
            e.constant =
                require_double(require_field(params, "value", item_path), item_path + ".params.value");
        } else if (kind == "poly") {
            const Json& params = require_field(item, "params", item_path);
            e.kind = PhiKind::Polynomial;
            e.poly.constant = require_double(require_field(params, "constant", item_path),
                                             item_path + ".params.constant");
            e.poly.real_sum = require_double(require_field(params, "real_sum", item_path),
                                             item_path + ".params.real_sum");
            e.poly.imag_sum = require_double(require_field(params, "imag_sum", item_path),
                                             item_path + ".params.imag_sum");
            e.poly.abs2_sum = require_double(require_field(params, "abs2_sum", item_path),
                                             item_path + ".params.abs2_sum");
        } else if (kind == "prf") {
            e.kind = PhiKind::Prf;
            e.seed = require_uint(require_field(item, "seed", item_path), item_path + ".seed");
        } else if (kind == "table") {
            const Json& params = require_field(item, "params", item_path);
            const Json& entries =
                require_array(require_field(params, "entries", item_path), item_path + ".params.entries");
            auto table = std::make_shared<PhiFamily::Table>();
            for (std::size_t t = 0; t < entries.size(); ++t) {
                const std::string entry_path =
                    item_path + ".params.entries[" + std::to_string(t) + "]";
                const std::vector<Complex> coords = decode_complex_vector(
                    require_field(entries[t], "coords", entry_path), entry_path + ".coords");
                if (static_cast<int>(coords.size()) != n - mask.count()) {
                    throw InputError(entry_path + ".coords: wrong tuple length");
                }
                const double value = require_double(
                    require_field(entries[t], "value", entry_path), entry_path + ".value");
                (*table)[coord_key(coords)] = value;
            }
            e.kind = PhiKind::Table;
            e.table = std::move(table);
        } else {
            throw InputError(item_path + ".kind: unknown phi kind \"" + kind + "\"");
        }
        seen[mask.bits] = true;
    }
    for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << n); ++mask) {
        if (!seen[mask]) {
            throw InputError(path + ".families: no entry for mask with bits " +
                             std::to_string(mask));
        }
    }
    return fam;
}

Json encode(const OperatorPhiFamily& fam) {
    Json families = Json::array();
    const std::uint64_t size = std::uint64_t{1} << fam.qubit_count();
    for (std::uint64_t mask = 0; mask < size; ++mask) {
        const OperatorPhiFamily::Entry& e = fam.entry(SubsetMask(mask));
        Json item{{"mask", encode(SubsetMask(mask))}};
        switch (e.kind) {
        case OperatorPhiKind::Constant:
            item["kind"] = "constant";
            item["params"] = Json{{"operator", encode(*e.constant)}};
            break;
        case OperatorPhiKind::Prf:
            item["kind"] = "prf";
            item["seed"] = e.seed;
            item["params"] = Json{{"positive", e.positive}};
            break;
        case OperatorPhiKind::Table: {
            item["kind"] = "table";
            Json entries = Json::array();
            if (e.table) {
                std::vector<const std::pair<const std::string, HermitianOperator>*> items;
                for (const auto& kv : *e.table) items.push_back(&kv);
                std::sort(items.begin(), items.end(),
                          [](const auto* a, const auto* b) { return a->first < b->first; });
                const int coord_count = fam.qubit_count() - SubsetMask(mask).count();
                for (const auto* kv : items) {
                    std::vector<Complex> coords(static_cast<std::size_t>(coord_count));
                    for (int i = 0; i < coord_count; ++i) {
                        double re = 0.0;
                        double im = 0.0;
                        std::memcpy(&re,
                                    kv->first.data() +
                                        2 * static_cast<std::size_t>(i) * sizeof(double),
                                    sizeof(double));
                        std::memcpy(&im,
                                    kv->first.data() +
                                        (2 * static_cast<std::size_t>(i) + 1) * sizeof(double),
                                    sizeof(double));
                        coords[static_cast<std::size_t>(i)] = Complex(re, im);
                    }
                    entries.push_back(Json{{"coords", encode_complex_vector(coords)},
                                           {"operator", encode(kv->second)}});
                }
            }
            item["params"] = Json{{"entries", entries}};
            break;
        }
        case OperatorPhiKind::Hook:
            throw InputError("hook-backed operator families cannot be serialized");
        }
        families.push_back(std::move(item));
    }
    return Json{{"format", 1},
                {"k", fam.qubit_count()},
                {"d", fam.tail_dim()},
                {"families", families}};
}

OperatorPhiFamily decode_operator_phi_family(const Json& j, const std::string& path) {
    const int k = static_cast<int>(require_int(require_field(j, "k", path), path + ".k"));
    const int d = static_cast<int>(require_int(require_field(j, "d", path), path + ".d"));
    if (k < 0 || k > 16) throw InputError(path + ".k: must lie in 0..16");
    const Json& families = require_array(require_field(j, "families", path), path + ".families");

    const std::size_t size = std::size_t{1} << k;
    OperatorPhiFamily fam = [&] {
        try {
            return OperatorPhiFamily::prf(k, d, 0);
        } catch (const Error& e) {
            throw InputError(path + ": " + e.what());
        }
    }();

    std::vector<bool> seen(size, false);
    for (std::size_t i = 0; i < families.size(); ++i) {
        const std::string item_path = path + ".families[" + std::to_string(i) + "]";
        const Json& item = families[i];
        const SubsetMask mask =
            decode_subset_mask(require_field(item, "mask", item_path), item_path + ".mask");
        if (mask.bits >= size) {
            throw InputError(item_path + ".mask: outside the subset lattice of 1..k");
        }
        const std::string kind =
            require_string(require_field(item, "kind", item_path), item_path + ".kind");
        OperatorPhiFamily::Entry entry;
        if (kind == "constant") {
            const Json& params = require_field(item, "params", item_path);
            HermitianOperator op = decode_hermitian(require_field(params, "operator", item_path),
                                                    item_path + ".params.operator");
            if (op.dim() != d) {
                throw InputError(item_path + ".params.operator: dimension does not match d");
            }
            entry.kind = OperatorPhiKind::Constant;
            entry.constant = std::make_shared<const HermitianOperator>(std::move(op));
        } else if (kind == "prf") {
            entry.kind = OperatorPhiKind::Prf;
            entry.seed = require_uint(require_field(item, "seed", item_path), item_path + ".seed");
            const Json& params = require_field(item, "params", item_path);
            entry.positive = require_bool(require_field(params, "positive", item_path),
                                          item_path + ".params.positive");
        } else if (kind == "table") {
            const Json& params = require_field(item, "params", item_path);
            const Json& entries = require_array(require_field(params, "entries", item_path),
                                                item_path + ".params.entries");
            auto table = std::make_shared<OperatorPhiFamily::Table>();
            for (std::size_t t = 0; t < entries.size(); ++t) {
                const std::string entry_path =
                    item_path + ".params.entries[" + std::to_string(t) + "]";
                const std::vector<Complex> coords = decode_complex_vector(
                    require_field(entries[t], "coords", entry_path), entry_path + ".coords");
                if (static_cast<int>(coords.size()) != k - mask.count()) {
                    throw InputError(entry_path + ".coords: wrong tuple length");
                }
                HermitianOperator op = decode_hermitian(
                    require_field(entries[t], "operator", entry_path), entry_path + ".operator");
                if (op.dim() != d) {
                    throw InputError(entry_path + ".operator: dimension does not match d");
                }
                table->emplace(coord_key(coords), std::move(op));
            }
            entry.kind = OperatorPhiKind::Table;
            entry.table = std::move(table);
        } else {
            throw InputError(item_path + ".kind: unknown kind \"" + kind + "\"");
        }
        fam.entry_mut(mask) = std::move(entry);
        seen[mask.bits] = true;
    }
    for (std::size_t mask = 0; mask < size; ++mask) {
        if (!seen[mask]) {
            throw InputError(path + ".families: no entry for mask with bits " +
                             std::to_string(mask));
        }
    }
    return fam;
}

Json load_json_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw InputError(file + ": cannot open for reading");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(file + ": " + e.what());
    }
}

void write_json_file(const std::string& file, const Json& j) {
    std::ofstream out(file);
    if (!out) throw InputError(file + ": cannot open for writing");
    out << to_stable_string(j);
    if (!out) throw InputError(file + ": write failed");
}

std::string to_stable_string(const Json& j) {
    return j.dump(2) + "\n";
}

} // namespace uff
