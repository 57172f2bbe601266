// Copyright 2026 The jetforge Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//         http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "jetforge/json_io.hpp"

#include "jetforge/error.hpp"

#include <algorithm>
#include <bit>

namespace jetforge {

namespace {

const json& field(const json& j, const char* key)
{
    if (!j.is_object()) {
        throw ValidationError(std::string("expected an object holding '") + key + "'");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ValidationError(std::string("missing field '") + key + "'");
    }
    return *it;
}

const json& array_of(const json& j, const char* what)
{
    if (!j.is_array()) {
        throw ValidationError(std::string(what) + " must be an array");
    }
    return j;
}

std::size_t size_of(const json& j, const char* what)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw ValidationError(std::string(what) + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

unsigned order_of(const json& j, const char* what)
{
    std::size_t v = size_of(j, what);
    if (v > 64) {
        throw ValidationError(std::string(what) + " is too large");
    }
    return static_cast<unsigned>(v);
}

std::size_t one_based(const json& j, const char* what)
{
    std::size_t v = size_of(j, what);
    if (v == 0) {
        throw ValidationError(std::string(what) + " entries are 1-based");
    }
    return v - 1;
}

std::vector<unsigned> orders_of(const json& j, const char* what)
{
    std::vector<unsigned> out;
    for (const auto& x : array_of(j, what)) {
        out.push_back(order_of(x, what));
    }
    return out;
}

void dump(const json& j, std::string& out, int indent)
{
    auto pad = [&](int level) { out.append(static_cast<std::size_t>(2 * level), ' '); };
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            pad(indent + 1);
            out += json(it.key()).dump();
            out += ": ";
            dump(it.value(), out, indent + 1);
        }
        out += "\n";
        pad(indent);
        out += "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        bool scalars = std::none_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); });
        if (scalars) {
            out += "[";
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k) {
                    out += ", ";
                }
                dump(j[k], out, indent);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            if (k) {
                out += ",\n";
            }
            pad(indent + 1);
            dump(j[k], out, indent + 1);
        }
        out += "\n";
        pad(indent);
        out += "]";
        return;
    }
    case json::value_t::number_float:
        out += format_real(j.get<double>());
        return;
    default:
        out += j.dump();
    }
}

std::vector<std::vector<Coefficient>> rows_from_json(const json& j, Domain d)
{
    std::vector<std::vector<Coefficient>> rows;
    for (const auto& r : array_of(j, "matrix")) {
        rows.push_back(point_from_json(r, d));
    }
    return rows;
}

void tensor_fill(const json& j, Tensor& t, std::size_t depth, std::size_t& flat)
{
    if (depth == t.arity() + 1) {
        t.flat(flat++) = coefficient_from_json(j, t.domain());
        return;
    }
    std::size_t expected = depth == 0 ? t.rows() : t.dim();
    if (!j.is_array() || j.size() != expected) {
        throw ValidationError("tensor has the wrong shape: expected " + std::to_string(expected) + " entries at depth "
                              + std::to_string(depth + 1));
    }
    for (const auto& x : j) {
        tensor_fill(x, t, depth + 1, flat);
    }
}

json tensor_part(const Tensor& t, std::size_t depth, std::size_t& flat)
{
    if (depth == t.arity() + 1) {
        return to_json(t.flat(flat++));
    }
    json out = json::array();
    std::size_t count = depth == 0 ? t.rows() : t.dim();
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(tensor_part(t, depth + 1, flat));
    }
    return out;
}

std::string kind_text(MultifoliationKind k)
{
    switch (k) {
    case MultifoliationKind::cap:
        return "cap";
    case MultifoliationKind::cup:
        return "cup";
    case MultifoliationKind::pp:
        return "pp";
    case MultifoliationKind::unchecked:
        break;
    }
    return "unchecked";
}

MultifoliationKind kind_from_text(const std::string& s)
{
    if (s == "cap") {
        return MultifoliationKind::cap;
    }
    if (s == "cup") {
        return MultifoliationKind::cup;
    }
    if (s == "pp") {
        return MultifoliationKind::pp;
    }
    if (s == "unchecked") {
        return MultifoliationKind::unchecked;
    }
    throw ValidationError("unknown multifoliation kind '" + s + "'");
}

} // namespace

std::string canonical_dump(const json& j)
{
    std::string out;
    dump(j, out, 0);
    return out;
}

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

json to_json(const Coefficient& c)
{
    if (c.domain() == Domain::rational) {
        return c.to_string();
    }
    return c.real();
}

Coefficient coefficient_from_json(const json& j, Domain d)
{
    if (j.is_string()) {
        return Coefficient::parse(j.get<std::string>(), d);
    }
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) {
            return Coefficient::from_rational(mpq_class(j.get_ref<const json::number_unsigned_t&>()), d);
        }
        return Coefficient::from_int(static_cast<long>(j.get<long long>()), d);
    }
    if (j.is_number_float()) {
        if (d == Domain::rational) {
            throw ValidationError("real number " + format_real(j.get<double>())
                                  + " in rational mode; write it as a \"p/q\" string or pass --float");
        }
        return Coefficient(j.get<double>());
    }
    throw ValidationError("coefficient must be a string or a number");
}

json point_to_json(const Point& p)
{
    json out = json::array();
    for (const auto& c : p) {
        out.push_back(to_json(c));
    }
    return out;
}

Point point_from_json(const json& j, Domain d)
{
    Point out;
    for (const auto& x : array_of(j, "point")) {
        out.push_back(coefficient_from_json(x, d));
    }
    return out;
}

json jet_to_json(const JetMap& jet)
{
    json out;
    out["source_dim"] = jet.source_dim();
    out["target_dim"] = jet.target_dim();
    out["source_point"] = point_to_json(jet.source_point());
    out["target_point"] = point_to_json(jet.target_point());
    if (jet.is_isotropic()) {
        out["order"] = jet.order();
    } else {
        out["orders"] = jet.orders();
    }
    json comps = json::array();
    for (const auto& p : jet.components()) {
        json terms = json::array();
        for (const auto& [index, c] : p.terms()) {
            terms.push_back({{"index", index.exponents()}, {"coeff", to_json(c)}});
        }
        comps.push_back(std::move(terms));
    }
    out["components"] = std::move(comps);
    return out;
}

JetMap jet_from_json(const json& j, Domain d)
{
    Point source = point_from_json(field(j, "source_point"), d);
    Point target = point_from_json(field(j, "target_point"), d);
    if (j.contains("source_dim") && size_of(j["source_dim"], "source_dim") != source.size()) {
        throw ValidationError("source_dim does not match source_point");
    }
    if (j.contains("target_dim") && size_of(j["target_dim"], "target_dim") != target.size()) {
        throw ValidationError("target_dim does not match target_point");
    }
    std::vector<unsigned> orders;
    unsigned fallback = 0;
    if (j.contains("orders")) {
        orders = orders_of(j["orders"], "orders");
    } else {
        fallback = order_of(field(j, "order"), "order");
        orders.assign(target.size(), fallback);
    }
    if (orders.size() != target.size()) {
        throw ValidationError("orders must have one entry per target component");
    }
    const json& comps = array_of(field(j, "components"), "components");
    if (comps.size() != target.size()) {
        throw ValidationError("components must have one term list per target component");
    }
    std::vector<TruncatedPoly> polys;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        TruncatedPoly p(source.size(), orders[i], d);
        for (const auto& term : array_of(comps[i], "component")) {
            MultiIndex index(orders_of(field(term, "index"), "index"));
            if (index.size() != source.size()) {
                throw ValidationError("multi-index length differs from source_dim");
            }
            if (index.total_degree() == 0) {
                throw ValidationError("components are displacements and carry no constant term");
            }
            if (index.total_degree() > orders[i]) {
                throw ValidationError("term of degree " + std::to_string(index.total_degree())
                                      + " exceeds the component order " + std::to_string(orders[i]));
            }
            p.add_to(index, coefficient_from_json(field(term, "coeff"), d));
        }
        polys.push_back(std::move(p));
    }
    return JetMap(std::move(source), std::move(target), std::move(polys), d, fallback);
}

json matrix_to_json(const Matrix& m)
{
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out.push_back(point_to_json(m.row(r)));
    }
    return out;
}

Matrix matrix_from_json(const json& j, Domain d)
{
    auto rows = rows_from_json(j, d);
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows) {
        if (r.size() != cols) {
            throw ValidationError("matrix rows have different lengths");
        }
    }
    return Matrix(std::move(rows), cols, d);
}

json index_set_to_json(const IndexSet& s)
{
    json out = json::array();
    for (auto i : s) {
        out.push_back(i + 1);
    }
    return out;
}

IndexSet index_set_from_json(const json& j)
{
    IndexSet out;
    for (const auto& x : array_of(j, "index set")) {
        out.push_back(one_based(x, "index set"));
    }
    return out;
}

json poset_to_json(const Poset& p)
{
    json leq = json::array();
    for (auto [a, b] : p.relation_pairs()) {
        if (a != b) {
            leq.push_back({a + 1, b + 1});
        }
    }
    return {{"size", p.size()}, {"leq", std::move(leq)}};
}

Poset poset_from_json(const json& j)
{
    std::size_t size = size_of(field(j, "size"), "size");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (j.contains("leq")) {
        for (const auto& pr : array_of(j["leq"], "leq")) {
            if (!pr.is_array() || pr.size() != 2) {
                throw ValidationError("leq entries must be pairs");
            }
            std::size_t a = one_based(pr[0], "leq");
            std::size_t b = one_based(pr[1], "leq");
            if (a >= size || b >= size) {
                throw ValidationError("leq pair refers to an element outside the poset");
            }
            pairs.emplace_back(a, b);
        }
    }
    return Poset(size, pairs);
}

PosetMap poset_map_from_json(const json& poset, const json& p)
{
    std::vector<std::size_t> assignment;
    for (const auto& x : array_of(p, "p")) {
        assignment.push_back(one_based(x, "p"));
    }
    return PosetMap(poset_from_json(poset), std::move(assignment));
}

json multifoliation_to_json(const Multifoliation& f)
{
    json groups = json::array();
    for (const auto& g : f.groups()) {
        groups.push_back(index_set_to_json(g));
    }
    json out{{"m", f.ambient()}, {"groups", std::move(groups)}, {"kind", kind_text(f.kind())}};
    if (f.structure()) {
        out["poset"] = poset_to_json(f.structure()->poset());
        json p = json::array();
        for (auto a : f.structure()->assignment()) {
            p.push_back(a + 1);
        }
        out["p"] = std::move(p);
    }
    return out;
}

Multifoliation multifoliation_from_json(const json& j)
{
    std::size_t m = size_of(field(j, "m"), "m");
    auto kind = j.contains("kind") ? kind_from_text(j["kind"].get<std::string>()) : MultifoliationKind::cap;
    std::optional<PosetMap> pm;
    if (j.contains("poset") || j.contains("p")) {
        pm = poset_map_from_json(field(j, "poset"), field(j, "p"));
    }
    std::vector<IndexSet> groups;
    if (j.contains("groups")) {
        for (const auto& g : array_of(j["groups"], "groups")) {
            groups.push_back(index_set_from_json(g));
        }
    } else if (kind == MultifoliationKind::pp && pm) {
        return pp_multifoliation(*pm);
    } else {
        throw ValidationError("missing field 'groups'");
    }
    return Multifoliation(m, std::move(groups), kind, std::move(pm));
}

json folijet_to_json(const FoliJet& a)
{
    json out = jet_to_json(a.data());
    out["F"] = multifoliation_to_json(a.foliation());
    out["R"] = a.multiorder().orders;
    return out;
}

FoliJet folijet_from_json(const json& j, Domain d)
{
    Multifoliation f = multifoliation_from_json(field(j, "F"));
    MultiOrder r{orders_of(field(j, "R"), "R")};
    return FoliJet(std::move(f), std::move(r), jet_from_json(j, d));
}

FiberedShape fibered_shape_from_json(const json& j)
{
    return FiberedShape{size_of(field(j, "base"), "base"), size_of(field(j, "fiber"), "fiber")};
}

json rsq_to_json(const RSQJet& a)
{
    return {{"orders", {{"R", a.orders.R}, {"S", a.orders.S}, {"Q", a.orders.Q}}},
            {"whole", jet_to_json(a.whole)},
            {"fiber", jet_to_json(a.fiber)},
            {"base", jet_to_json(a.base)}};
}

json level_set_to_json(LevelSet s)
{
    json out = json::array();
    for (unsigned l : levels_of(s)) {
        out.push_back(l);
    }
    return out;
}

LevelSet level_set_from_json(const json& j)
{
    LevelSet s = 0;
    for (const auto& x : array_of(j, "S")) {
        std::size_t l = one_based(x, "S") + 1;
        if (l > max_tangent_order) {
            throw ValidationError("level " + std::to_string(l) + " exceeds the supported order");
        }
        if (s & level_bit(static_cast<unsigned>(l))) {
            throw ValidationError("level set repeats level " + std::to_string(l));
        }
        s |= level_bit(static_cast<unsigned>(l));
    }
    if (s == 0) {
        throw ValidationError("level sets are non-empty");
    }
    return s;
}

json tensor_to_json(const Tensor& t)
{
    std::size_t flat = 0;
    return tensor_part(t, 0, flat);
}

Tensor tensor_from_json(const json& j, std::size_t rows, std::size_t dim, std::size_t arity, Domain d)
{
    Tensor t(rows, dim, arity, d);
    std::size_t flat = 0;
    tensor_fill(j, t, 0, flat);
    return t;
}

json nonhol_to_json(const NonholJet& jet)
{
    json blocks = json::array();
    for (LevelSet s = 1; s <= all_levels(jet.order()); ++s) {
        blocks.push_back({{"S", level_set_to_json(s)}, {"tensor", tensor_to_json(jet.block(s))}});
    }
    return {{"m", jet.m()},
            {"n", jet.n()},
            {"order", jet.order()},
            {"source_point", point_to_json(jet.source_point())},
            {"target_point", point_to_json(jet.target_point())},
            {"blocks", std::move(blocks)}};
}

NonholJet nonhol_from_json(const json& j, Domain d)
{
    unsigned r = order_of(field(j, "order"), "order");
    if (r == 0 || r > max_tangent_order) {
        throw ValidationError("order must be between 1 and " + std::to_string(max_tangent_order));
    }
    Point source = point_from_json(field(j, "source_point"), d);
    Point target = point_from_json(field(j, "target_point"), d);
    std::size_t m = j.contains("m") ? size_of(j["m"], "m") : source.size();
    std::size_t n = j.contains("n") ? size_of(j["n"], "n") : target.size();
    std::vector<std::optional<Tensor>> slots(all_levels(r));
    for (const auto& b : array_of(field(j, "blocks"), "blocks")) {
        LevelSet s = level_set_from_json(field(b, "S"));
        if (s > all_levels(r)) {
            throw ValidationError("block level set exceeds the order");
        }
        if (slots[s - 1]) {
            throw ValidationError("block given twice");
        }
        slots[s - 1] = tensor_from_json(field(b, "tensor"), n, m, std::popcount(s), d);
    }
    std::vector<Tensor> blocks;
    for (LevelSet s = 1; s <= all_levels(r); ++s) {
        blocks.push_back(slots[s - 1] ? *slots[s - 1] : Tensor(n, m, std::popcount(s), d));
    }
    return NonholJet(m, n, r, std::move(source), std::move(target), std::move(blocks), d);
}

json quasi_to_json(const QuasiJet& q)
{
    json coeffs = json::object();
    for (LevelSet s = 1; s <= all_levels(q.order()); ++s) {
        const auto& parts = q.partitions(s);
        for (std::size_t k = 0; k < parts.size(); ++k) {
            coeffs[partition_key(s, parts[k])] = tensor_to_json(q.coeff(s, k));
        }
    }
    return {{"m", q.m()},
            {"n", q.n()},
            {"order", q.order()},
            {"source_point", point_to_json(q.source_point())},
            {"target_point", point_to_json(q.target_point())},
            {"coefficients", std::move(coeffs)}};
}

QuasiJet quasi_from_json(const json& j, Domain d)
{
    unsigned r = order_of(field(j, "order"), "order");
    if (r == 0 || r > max_tangent_order) {
        throw ValidationError("order must be between 1 and " + std::to_string(max_tangent_order));
    }
    Point source = point_from_json(field(j, "source_point"), d);
    Point target = point_from_json(field(j, "target_point"), d);
    QuasiJet q = QuasiJet::zero(source.size(), target.size(), r, source, target, d);
    const json& coeffs = field(j, "coefficients");
    if (!coeffs.is_object()) {
        throw ValidationError("coefficients must be an object keyed by level set and partition");
    }
    std::size_t matched = 0;
    for (LevelSet s = 1; s <= all_levels(r); ++s) {
        const auto parts = q.partitions(s);
        for (std::size_t k = 0; k < parts.size(); ++k) {
            auto it = coeffs.find(partition_key(s, parts[k]));
            if (it == coeffs.end()) {
                continue;
            }
            ++matched;
            q.coeff(s, k) = tensor_from_json(*it, q.n(), q.m(), parts[k].size(), d);
        }
    }
    if (matched != coeffs.size()) {
        throw ValidationError("coefficients contain a key that is not a canonical level set and partition");
    }
    return q;
}

json tangent_to_json(const IterTangentVector& v)
{
    json blocks = json::array();
    for (LevelSet s = 1; s <= all_levels(v.order()); ++s) {
        blocks.push_back({{"S", level_set_to_json(s)}, {"vector", point_to_json(v.block(s))}});
    }
    return {{"order", v.order()}, {"base_point", point_to_json(v.base_point())}, {"blocks", std::move(blocks)}};
}

IterTangentVector tangent_from_json(const json& j, Domain d)
{
    unsigned r = order_of(field(j, "order"), "order");
    if (r == 0 || r > max_tangent_order) {
        throw ValidationError("order must be between 1 and " + std::to_string(max_tangent_order));
    }
    Point base = point_from_json(field(j, "base_point"), d);
    auto v = IterTangentVector::zero(r, base, d);
    for (const auto& b : array_of(field(j, "blocks"), "blocks")) {
        LevelSet s = level_set_from_json(field(b, "S"));
        if (s > all_levels(r)) {
            throw ValidationError("block level set exceeds the order");
        }
        Point x = point_from_json(field(b, "vector"), d);
        if (x.size() != base.size()) {
            throw ValidationError("block vector length differs from the base point dimension");
        }
        v.block(s) = std::move(x);
    }
    return v;
}

std::vector<Subspace> subspaces_from_json(const json& j, std::size_t ambient)
{
    std::vector<Subspace> out;
    for (const auto& space : array_of(j, "spaces")) {
        std::vector<std::vector<mpq_class>> rows;
        for (const auto& r : array_of(space, "space")) {
            std::vector<mpq_class> row;
            for (const auto& x : array_of(r, "vector")) {
                row.push_back(coefficient_from_json(x, Domain::rational).rational());
            }
            if (row.size() != ambient) {
                throw ValidationError("spanning vector has length " + std::to_string(row.size()) + ", expected "
                                      + std::to_string(ambient));
            }
            rows.push_back(std::move(row));
        }
        out.emplace_back(ambient, rows);
    }
    return out;
}

json weil_to_json(const WeilAlgebra& a)
{
    json basis = json::array();
    for (const auto& b : a.basis()) {
        basis.push_back(b.exponents());
    }
    json table = json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t k = i; k < a.dim(); ++k) {
            if (auto p = a.product(i, k)) {
                table.push_back({i + 1, k + 1, *p + 1});
            }
        }
    }
    return {{"generators", a.generators()}, {"basis", std::move(basis)}, {"dim", a.dim()},
            {"width", a.width()},           {"height", a.height()},     {"table", std::move(table)}};
}

WeilAlgebra weil_from_json(const json& j)
{
    if (j.contains("profile")) {
        const json& p = j["profile"];
        return algebra_of_profile(size_of(field(p, "k"), "k"), order_of(field(p, "r"), "r"));
    }
    std::size_t k = size_of(field(j, "generators"), "generators");
    std::vector<MultiIndex> basis;
    for (const auto& b : array_of(field(j, "basis"), "basis")) {
        basis.emplace_back(orders_of(b, "basis monomial"));
    }
    return WeilAlgebra(k, std::move(basis));
}

InductiveSystem inductive_system_from_json(const json& j)
{
    InductiveSystem s{poset_from_json(field(j, "poset")), {}, {}};
    for (const auto& a : array_of(field(j, "algebras"), "algebras")) {
        s.algebras.push_back(weil_from_json(a));
    }
    if (j.contains("maps")) {
        for (const auto& m : array_of(j["maps"], "maps")) {
            std::size_t beta = one_based(field(m, "beta"), "beta");
            std::size_t alpha = one_based(field(m, "alpha"), "alpha");
            s.maps[{beta, alpha}] = matrix_from_json(field(m, "matrix"), Domain::rational);
        }
    }
    return s;
}

} // namespace jetforge
