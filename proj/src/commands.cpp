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

#include "jetforge/commands.hpp"

#include "jetforge/error.hpp"
#include "jetforge/expression.hpp"
#include "jetforge/json_io.hpp"

#include <charconv>

namespace jetforge {

namespace {

struct Context {
    const CommandFlags& flags;
    const std::string& input;
    std::uint64_t seed;
    Domain domain;

    bool has(const std::string& name) const { return flags.contains(name); }

    const std::string& flag(const std::string& name) const
    {
        auto it = flags.find(name);
        if (it == flags.end()) {
            throw ValidationError("missing flag --" + name);
        }
        return it->second;
    }

    std::size_t size_flag(const std::string& name) const
    {
        const std::string& text = flag(name);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw ValidationError("--" + name + " expects a non-negative integer, got '" + text + "'");
        }
        return v;
    }

    json payload() const
    {
        if (input.find_first_not_of(" \t\r\n") == std::string::npos) {
            throw ValidationError("this command reads a JSON payload from --file or standard input");
        }
        return parse_json(input);
    }
};

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ' && ch != '\t') {
            cur += ch;
        }
    }
    out.push_back(cur);
    if (out.size() == 1 && out.front().empty()) {
        out.clear();
    }
    return out;
}

std::vector<unsigned> orders_flag(const Context& c, const std::string& name)
{
    std::vector<unsigned> out;
    for (const auto& item : split_list(c.flag(name))) {
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
            throw ValidationError("--" + name + " expects comma-separated non-negative integers");
        }
        out.push_back(v);
    }
    return out;
}

const json& member(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw ValidationError(std::string("missing field '") + key + "'");
    }
    return j[key];
}

NonholJet nonhol_or_embedded(const json& j, Domain d)
{
    if (j.is_object() && j.contains("blocks")) {
        return nonhol_from_json(j, d);
    }
    return embed_holonomic(jet_from_json(j, d));
}

QuasiJet quasi_of_any(const json& j, Domain d, std::uint64_t seed)
{
    if (j.is_object() && j.contains("coefficients")) {
        return quasi_from_json(j, d);
    }
    return extract_quasi(nonhol_or_embedded(j, d), seed);
}

json cmd_jet(const Context& c)
{
    auto exprs = parse_expression_list(c.flag("map"));
    Point point;
    for (const auto& item : split_list(c.flag("at"))) {
        point.push_back(Coefficient::parse(item, c.domain));
    }
    auto order = static_cast<unsigned>(c.size_flag("order"));
    return jet_to_json(jet_of_expressions(exprs, point, order, c.domain));
}

json cmd_compose(const Context& c)
{
    json j = c.payload();
    return jet_to_json(compose_jets(jet_from_json(member(j, "outer"), c.domain), jet_from_json(member(j, "inner"), c.domain)));
}

json cmd_invert(const Context& c) { return jet_to_json(invert_jet(jet_from_json(c.payload(), c.domain))); }

json cmd_prolong(const Context& c)
{
    json j = c.payload();
    return jet_to_json(prolong_morphism(jet_from_json(member(j, "section"), c.domain),
                                        jet_from_json(member(j, "morphism"), c.domain),
                                        jet_from_json(member(j, "base_map"), c.domain)));
}

json cmd_folijet(const Context& c)
{
    json j = c.payload();
    Multifoliation f = multifoliation_from_json(member(j, "F"));
    MultiOrder r{member(j, "R").get<std::vector<unsigned>>()};
    return folijet_to_json(folijet_of_map(jet_from_json(member(j, "jet"), c.domain), f, r));
}

json cmd_folijet_eq(const Context& c)
{
    json j = c.payload();
    return {{"equal", folijet_equal(folijet_from_json(member(j, "a"), c.domain), folijet_from_json(member(j, "b"), c.domain))}};
}

json cmd_restrict(const Context& c)
{
    json j = c.payload();
    if (j.is_object() && j.contains("F")) {
        return folijet_to_json(restrict_multiorder(folijet_from_json(j, c.domain), MultiOrder{orders_flag(c, "orders")}));
    }
    JetMap jet = jet_from_json(j, c.domain);
    if (c.has("order")) {
        return jet_to_json(restrict_order(jet, static_cast<unsigned>(c.size_flag("order"))));
    }
    return jet_to_json(restrict_order(jet, EffectiveOrders{orders_flag(c, "orders")}));
}

RSQOrders rsq_orders(const json& j)
{
    return RSQOrders{member(j, "R").get<unsigned>(), member(j, "S").get<unsigned>(), member(j, "Q").get<unsigned>()};
}

json cmd_rsq(const Context& c)
{
    json j = c.payload();
    return rsq_to_json(rsq_of_morphism(jet_from_json(member(j, "jet"), c.domain), fibered_shape_from_json(member(j, "source")),
                                       fibered_shape_from_json(member(j, "target")), rsq_orders(member(j, "orders"))));
}

json cmd_rsq_from_folijet(const Context& c)
{
    json j = c.payload();
    return rsq_to_json(rsq_from_folijet(folijet_from_json(member(j, "folijet"), c.domain),
                                        fibered_shape_from_json(member(j, "source")), member(j, "R").get<unsigned>()));
}

json cmd_nonhol_embed(const Context& c) { return nonhol_to_json(embed_holonomic(jet_from_json(c.payload(), c.domain))); }

json cmd_mu_eval(const Context& c)
{
    json j = c.payload();
    NonholJet jet = nonhol_or_embedded(member(j, "jet"), c.domain);
    return tangent_to_json(mu_eval(jet, tangent_from_json(member(j, "vector"), c.domain)));
}

json cmd_quasi_extract(const Context& c) { return quasi_to_json(quasi_of_any(c.payload(), c.domain, c.seed)); }

json cmd_quasi_compose(const Context& c)
{
    json j = c.payload();
    QuasiJet q = compose_quasi(quasi_of_any(member(j, "outer"), c.domain, c.seed),
                               quasi_of_any(member(j, "inner"), c.domain, c.seed), c.seed);
    json out{{"quasijet", quasi_to_json(q)}, {"nonholonomic", is_nonholonomic(q, c.seed)}};
    if (out["nonholonomic"].get<bool>()) {
        out["nonholonomic_jet"] = nonhol_to_json(nonhol_readback(q));
    }
    return out;
}

json transversality_json(const TransversalityReport& r)
{
    json out{{"transversal", r.transversal}, {"subsets_checked", r.subsets_checked}};
    if (r.first_failure) {
        out["failing_subset"] = index_set_to_json(*r.first_failure);
    }
    return out;
}

json cmd_transversal(const Context& c)
{
    json j = c.payload();
    std::string mode_text = c.has("mode") ? c.flag("mode") : "cap";
    TransversalityMode mode;
    if (mode_text == "cap") {
        mode = TransversalityMode::cap;
    } else if (mode_text == "cup") {
        mode = TransversalityMode::cup;
    } else {
        throw ValidationError("--mode must be cap or cup");
    }
    std::size_t m = member(j, "m").get<std::size_t>();
    if (j.contains("points")) {
        std::vector<std::vector<Subspace>> families;
        for (const auto& f : j["points"]) {
            families.push_back(subspaces_from_json(f, m));
        }
        return transversality_json(is_transversal_at_points(families, mode));
    }
    auto spaces = subspaces_from_json(member(j, "spaces"), m);
    return transversality_json(is_transversal(spaces, mode));
}

json cmd_subfoliation(const Context& c)
{
    json j = c.payload();
    auto r = is_subfoliation(index_set_from_json(member(j, "sub")), index_set_from_json(member(j, "sup")),
                             member(j, "m").get<std::size_t>());
    json out{{"subfoliation", r.subfoliation}};
    if (r.subfoliation) {
        out["restriction_dim"] = r.restriction_dim;
    }
    return out;
}

json cmd_ppgroup(const Context& c)
{
    json j = c.payload();
    PosetMap pm = poset_map_from_json(member(j, "poset"), member(j, "p"));
    if (j.contains("matrix")) {
        return {{"member", in_pp_group(matrix_from_json(j["matrix"], c.domain), pm)}};
    }
    json pattern = json::array();
    for (std::size_t i = 0; i < pm.ambient(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < pm.ambient(); ++k) {
            row.push_back(pm.allowed(i, k) ? 1 : 0);
        }
        pattern.push_back(std::move(row));
    }
    return {{"pattern", std::move(pattern)}, {"multifoliation", multifoliation_to_json(pp_multifoliation(pm))}};
}

json cmd_pp_check(const Context& c)
{
    json j = c.payload();
    PosetMap pm = poset_map_from_json(member(j, "poset"), member(j, "p"));
    std::vector<JetMap> jets;
    for (const auto& x : member(j, "jets")) {
        jets.push_back(jet_from_json(x, c.domain));
    }
    auto r = pp_pseudogroup_check(jets, pm);
    json out{{"member", r.member}, {"samples", r.samples}, {"label", r.label()}};
    if (r.failing_point) {
        out["failing_point"] = *r.failing_point + 1;
    }
    return out;
}

json cmd_weil(const Context& c)
{
    if (c.has("k") || c.has("r")) {
        return weil_to_json(algebra_of_profile(c.size_flag("k"), static_cast<unsigned>(c.size_flag("r"))));
    }
    json j = c.payload();
    if (j.is_object() && j.contains("tensor")) {
        const json& factors = j["tensor"];
        if (!factors.is_array() || factors.empty()) {
            throw ValidationError("tensor needs at least one factor");
        }
        WeilAlgebra out = weil_from_json(factors[0]);
        for (std::size_t k = 1; k < factors.size(); ++k) {
            out = tensor_product(out, weil_from_json(factors[k]));
        }
        return weil_to_json(out);
    }
    return weil_to_json(weil_from_json(j));
}

json cmd_weil_hom(const Context& c)
{
    json j = c.payload();
    auto r = hom_check(matrix_from_json(member(j, "L"), Domain::rational), weil_from_json(member(j, "A")),
                       weil_from_json(member(j, "B")));
    json out{{"homomorphism", r.homomorphism}};
    if (!r.homomorphism) {
        out["violation"] = r.violation;
    }
    return out;
}

json cmd_weil_system(const Context& c)
{
    auto r = validate_inductive_system(inductive_system_from_json(c.payload()));
    json out{{"valid", r.valid}};
    if (!r.valid) {
        out["violation"] = r.violation;
    }
    return out;
}

json cmd_dims(const Context& c)
{
    if (c.has("m") || c.has("n") || c.has("r")) {
        std::size_t m = c.size_flag("m");
        std::size_t n = c.size_flag("n");
        auto r = static_cast<unsigned>(c.size_flag("r"));
        return {{"holonomic", holonomic_parameter_count(m, n, r)},
                {"nonholonomic", nonholonomic_parameter_count(m, n, r)},
                {"quasijet", quasijet_parameter_count(m, n, r)}};
    }
    json j = c.payload();
    if (j.contains("F")) {
        Multifoliation f = multifoliation_from_json(j["F"]);
        MultiOrder r{member(j, "R").get<std::vector<unsigned>>()};
        return {{"fiber_dim", folijet_fiber_dim(f, r, member(j, "source_dim").get<std::size_t>())}};
    }
    auto dims = member(j, "dims").get<std::vector<std::size_t>>();
    auto f = feasibility(dims, member(j, "m").get<std::size_t>());
    json out{{"ambient", f.ambient},           {"sum_dims", f.sum_dims},     {"sum_codims", f.sum_codims},
             {"cap_feasible", f.cap_feasible}, {"cup_feasible", f.cup_feasible}, {"both", f.both},
             {"coincidence", f.coincidence},   {"degenerate", f.degenerate}};
    if (!f.certificate.empty()) {
        out["certificate"] = f.certificate;
    }
    return out;
}

using Handler = json (*)(const Context&);

const std::map<std::string, Handler>& handlers()
{
    static const std::map<std::string, Handler> table{
        {"jet", cmd_jet},
        {"compose", cmd_compose},
        {"invert", cmd_invert},
        {"prolong", cmd_prolong},
        {"folijet", cmd_folijet},
        {"folijet-eq", cmd_folijet_eq},
        {"restrict", cmd_restrict},
        {"rsq", cmd_rsq},
        {"rsq-from-folijet", cmd_rsq_from_folijet},
        {"nonhol-embed", cmd_nonhol_embed},
        {"mu-eval", cmd_mu_eval},
        {"quasi-extract", cmd_quasi_extract},
        {"quasi-compose", cmd_quasi_compose},
        {"transversal", cmd_transversal},
        {"subfoliation", cmd_subfoliation},
        {"ppgroup", cmd_ppgroup},
        {"pp-check", cmd_pp_check},
        {"weil", cmd_weil},
        {"weil-hom", cmd_weil_hom},
        {"weil-system", cmd_weil_system},
        {"dims", cmd_dims},
    };
    return table;
}

} // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, h] : handlers()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

std::string run_command(const std::string& command, const CommandFlags& flags, const std::string& input,
                        std::uint64_t seed)
{
    auto it = handlers().find(command);
    if (it == handlers().end()) {
        throw UsageError("unknown command '" + command + "'");
    }
    Context ctx{flags, input, seed, flags.contains("float") ? Domain::real : Domain::rational};
    try {
        return canonical_dump(it->second(ctx));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed payload: ") + e.what());
    }
}

} // namespace jetforge
