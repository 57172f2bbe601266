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


#include "jetforge/error.hpp"
#include "jetforge/transversal.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace jetforge;

namespace {

using Rows = oracle::Rows;

std::vector<mpq_class> unit(std::size_t m, std::size_t i)
{
    std::vector<mpq_class> v(m);
    v[i] = 1;
    return v;
}

Rows random_rows(std::mt19937_64& rng, std::size_t count, std::size_t m)
{
    std::uniform_int_distribution<int> small(-2, 2);
    Rows rows(count, std::vector<mpq_class>(m));
    for (auto& r : rows) {
        for (auto& x : r) {
            x = small(rng);
        }
    }
    return rows;
}

// Linearly independent subset of the rows.
Rows independent(const Rows& rows)
{
    Rows out;
    for (const auto& r : rows) {
        auto trial = out;
        trial.push_back(r);
        if (oracle::rank(trial) == trial.size()) {
            out = std::move(trial);
        }
    }
    return out;
}

Matrix matrix_of(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<std::vector<Coefficient>> out;
    std::size_t cols = 0;
    for (const auto& r : rows) {
        std::vector<Coefficient> row;
        for (long x : r) {
            row.emplace_back(mpq_class(x));
        }
        cols = row.size();
        out.push_back(std::move(row));
    }
    return Matrix(std::move(out), cols, Domain::rational);
}

PosetMap two_chain()
{
    return PosetMap(Poset::chain(2), {0, 1});
}

} // namespace

TEST_CASE("subspace_dims examples")
{
    std::vector<Subspace> lines{Subspace(2, {unit(2, 0)}), Subspace(2, {unit(2, 1)})};
    auto d = subspace_dims(lines, {0, 1});
    CHECK(d.intersection == 0);
    CHECK(d.sum == 2);

    std::vector<Subspace> same{Subspace(2, {{1, 1}}), Subspace(2, {{2, 2}})};
    d = subspace_dims(same, {0, 1});
    CHECK(d.intersection == 1);
    CHECK(d.sum == 1);

    std::vector<Subspace> planes{Subspace(3, {unit(3, 0), unit(3, 1)}), Subspace(3, {unit(3, 1), unit(3, 2)}),
                                 Subspace(3, {unit(3, 0), unit(3, 2)})};
    d = subspace_dims(planes, {0, 1, 2});
    CHECK(d.intersection == 0);
    CHECK(d.sum == 3);

    CHECK_THROWS(subspace_dims(planes, {}));
    std::vector<Subspace> mixed{Subspace(2, {unit(2, 0)}), Subspace(3, {unit(3, 0)})};
    CHECK_THROWS(subspace_dims(mixed, {0, 1}));

    Subspace dup(3, {{1, 2, 3}, {2, 4, 6}, {0, 0, 0}});
    CHECK(dup.dim() == 1);
    CHECK(dup.codim() == 2);
}

TEST_CASE("subspace dimensions agree with the rank oracle and the modular law")
{
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::size_t> pick(0, 4);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t m = 2 + trial % 4;
        std::size_t delta = 2 + trial % 3;
        std::vector<Rows> bases;
        std::vector<Subspace> spaces;
        for (std::size_t k = 0; k < delta; ++k) {
            auto rows = random_rows(rng, pick(rng) % (m + 1), m);
            spaces.emplace_back(m, rows);
            bases.push_back(independent(rows));
            CHECK(spaces.back().dim() == bases.back().size());
        }
        for (std::size_t mask = 1; mask < (std::size_t{1} << delta); ++mask) {
            IndexSet e;
            std::vector<Rows> sel;
            for (std::size_t k = 0; k < delta; ++k) {
                if (mask >> k & 1) {
                    e.push_back(k);
                    sel.push_back(bases[k]);
                }
            }
            auto d = subspace_dims(spaces, e);
            auto [cap, cup] = oracle::subspace_dims(sel, m);
            CHECK(d.intersection == cap);
            CHECK(d.sum == cup);
            if (e.size() == 2) {
                CHECK(d.intersection + d.sum == spaces[e[0]].dim() + spaces[e[1]].dim());
            }
        }
    }
}

TEST_CASE("is_transversal examples")
{
    std::vector<Subspace> hyper{Subspace(3, {unit(3, 1), unit(3, 2)}), Subspace(3, {unit(3, 0), unit(3, 2)}),
                                Subspace(3, {unit(3, 0), unit(3, 1)})};
    auto rep = is_transversal(hyper, TransversalityMode::cap);
    CHECK(rep.transversal);
    CHECK(rep.subsets_checked == 7);

    std::vector<Subspace> lines{Subspace(3, {unit(3, 0)}), Subspace(3, {unit(3, 1)}), Subspace(3, {unit(3, 2)})};
    CHECK(is_transversal(lines, TransversalityMode::cup).transversal);
    rep = is_transversal(lines, TransversalityMode::cap);
    CHECK_FALSE(rep.transversal);
    REQUIRE(rep.first_failure.has_value());
    CHECK(rep.first_failure->size() == 2);

    std::vector<Subspace> twins{Subspace(3, {unit(3, 0), unit(3, 1)}), Subspace(3, {unit(3, 0), unit(3, 1)})};
    for (auto mode : {TransversalityMode::cap, TransversalityMode::cup}) {
        rep = is_transversal(twins, mode);
        CHECK_FALSE(rep.transversal);
        CHECK(rep.first_failure == IndexSet{0, 1});
    }

    CHECK_THROWS(is_transversal(std::vector<Subspace>{lines[0]}, TransversalityMode::cap));
}

TEST_CASE("transversality verdicts are stable under permutation")
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t m = 3 + trial % 2;
        std::vector<Subspace> spaces;
        for (int k = 0; k < 3; ++k) {
            spaces.emplace_back(m, random_rows(rng, 1 + trial % 3, m));
        }
        auto cap = is_transversal(spaces, TransversalityMode::cap).transversal;
        auto cup = is_transversal(spaces, TransversalityMode::cup).transversal;
        std::vector<std::size_t> order{0, 1, 2};
        while (std::next_permutation(order.begin(), order.end())) {
            std::vector<Subspace> p;
            for (auto i : order) {
                p.push_back(spaces[i]);
            }
            CHECK(is_transversal(p, TransversalityMode::cap).transversal == cap);
            CHECK(is_transversal(p, TransversalityMode::cup).transversal == cup);
        }
    }
}

TEST_CASE("verdicts across sample points must agree")
{
    std::vector<Subspace> a{Subspace(2, {unit(2, 0)}), Subspace(2, {unit(2, 1)})};
    std::vector<Subspace> b{Subspace(2, {{1, 1}}), Subspace(2, {{1, -1}})};
    std::vector<Subspace> c{Subspace(2, {unit(2, 0)}), Subspace(2, {unit(2, 0)})};
    std::vector<std::vector<Subspace>> ok{a, b};
    CHECK(is_transversal_at_points(ok, TransversalityMode::cap).transversal);
    std::vector<std::vector<Subspace>> mixed{a, c};
    CHECK_THROWS(is_transversal_at_points(mixed, TransversalityMode::cap));
}

TEST_CASE("feasibility examples")
{
    std::vector<std::size_t> d2{1, 1};
    auto rep = feasibility(d2, 2);
    CHECK(rep.cap_feasible);
    CHECK(rep.cup_feasible);
    CHECK(rep.both);
    CHECK(rep.coincidence);
    CHECK(rep.sum_codims == 2);
    CHECK(rep.sum_dims == 2);

    std::vector<std::size_t> d3{1, 1, 1};
    rep = feasibility(d3, 3);
    CHECK(rep.cup_feasible);
    CHECK_FALSE(rep.cap_feasible);
    CHECK_FALSE(rep.coincidence);
    CHECK_FALSE(rep.certificate.empty());

    std::vector<std::size_t> deg{0, 2};
    CHECK(feasibility(deg, 2).degenerate);
}

TEST_CASE("feasibility arithmetic over all dimension vectors")
{
    for (std::size_t m = 1; m <= 4; ++m) {
        for (std::size_t delta = 2; delta <= 4; ++delta) {
            std::vector<std::size_t> dims(delta, 0);
            while (true) {
                auto rep = feasibility(dims, m);
                std::size_t sd = 0;
                std::size_t sc = 0;
                bool nondeg = true;
                for (auto d : dims) {
                    sd += d;
                    sc += m - d;
                    nondeg = nondeg && d > 0 && d < m;
                }
                CHECK(rep.cap_feasible == (sc <= m));
                CHECK(rep.cup_feasible == (sd <= m));
                CHECK(rep.coincidence == (delta == 2 && sc == m && sd == m));
                if (delta >= 3 && nondeg) {
                    CHECK_FALSE(rep.both);
                }
                // Total cap case: delta = m non-degenerate leaves, each of codimension 1.
                if (delta == m && nondeg && rep.cap_feasible) {
                    for (auto d : dims) {
                        CHECK(m - d == 1);
                    }
                }
                std::size_t k = 0;
                while (k < delta && dims[k] == m) {
                    dims[k++] = 0;
                }
                if (k == delta) {
                    break;
                }
                ++dims[k];
            }
        }
    }
}

TEST_CASE("subfoliation order")
{
    auto rep = is_subfoliation({0}, {0, 1}, 3);
    CHECK(rep.subfoliation);
    CHECK(rep.restriction_dim == 1);
    CHECK_FALSE(is_subfoliation({2}, {0, 1}, 3).subfoliation);

    std::mt19937_64 rng(47);
    auto random_set = [&] {
        IndexSet s;
        for (std::size_t i = 0; i < 5; ++i) {
            if (rng() & 1) {
                s.push_back(i);
            }
        }
        return s;
    };
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_set();
        auto b = random_set();
        auto c = random_set();
        CHECK(is_subfoliation(a, a, 5).subfoliation);
        CHECK(is_subfoliation(a, b, 5).subfoliation == std::includes(b.begin(), b.end(), a.begin(), a.end()));
        if (is_subfoliation(a, b, 5).subfoliation && is_subfoliation(b, c, 5).subfoliation) {
            CHECK(is_subfoliation(a, c, 5).subfoliation);
        }
    }
}

TEST_CASE("poset construction")
{
    std::vector<std::pair<std::size_t, std::size_t>> gens{{0, 1}, {1, 2}};
    Poset p(3, gens);
    CHECK(p.leq(0, 2));
    CHECK(p.leq(1, 1));
    CHECK_FALSE(p.leq(2, 0));
    CHECK(p == Poset::chain(3));
    std::vector<std::pair<std::size_t, std::size_t>> cycle{{0, 1}, {1, 0}};
    CHECK_THROWS(Poset(2, cycle));
    CHECK_THROWS(PosetMap(Poset::chain(2), {0, 0}));
}

TEST_CASE("in_pp_group examples")
{
    auto pm = two_chain();
    CHECK(in_pp_group(matrix_of({{2, 3}, {0, 5}}), pm));
    CHECK_FALSE(in_pp_group(matrix_of({{1, 0}, {4, 1}}), pm));
    CHECK_FALSE(in_pp_group(matrix_of({{1, 1}, {0, 0}}), pm));
    CHECK(in_pp_group(Matrix::identity(2, Domain::rational), pm));
    CHECK(in_pp_group(Matrix::identity(3, Domain::rational), PosetMap(Poset::antichain(2), {0, 1, 1})));
}

TEST_CASE("pp pattern for chains and antichains")
{
    // Chain with identity p: upper triangular invertible matrices.
    std::size_t m = 3;
    PosetMap chain(Poset::chain(m), {0, 1, 2});
    PosetMap anti(Poset::antichain(2), {0, 1, 1});
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << (m * m)); ++pattern) {
        Matrix a = Matrix::identity(m, Domain::rational);
        bool upper = true;
        bool blocks = true;
        for (std::size_t k = 0; k < m * m; ++k) {
            if (pattern >> k & 1) {
                std::size_t i = k / m;
                std::size_t j = k % m;
                if (i != j) {
                    a(i, j) = Coefficient(mpq_class(1));
                    upper = upper && i < j;
                    blocks = blocks && anti.assignment()[i] == anti.assignment()[j];
                }
            }
        }
        if (!inverse(a)) {
            continue;
        }
        CHECK(in_pp_group(a, chain) == upper);
        CHECK(in_pp_group(a, anti) == blocks);
    }
}

TEST_CASE("pp group closure under product and inverse")
{
    std::mt19937_64 rng(53);
    std::vector<std::pair<std::size_t, std::size_t>> gens{{0, 2}, {1, 2}};
    PosetMap pm(Poset(3, gens), {0, 1, 2, 2});
    std::size_t checked = 0;
    while (checked < 50) {
        Matrix a(4, 4, Domain::rational);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                if (pm.allowed(i, j)) {
                    a(i, j) = Coefficient(oracle::random_rational(rng));
                }
            }
        }
        auto inv = inverse(a);
        if (!inv) {
            continue;
        }
        CHECK(in_pp_group(a, pm));
        CHECK(in_pp_group(*inv, pm));
        CHECK(in_pp_group(a * *inv * a, pm));
        ++checked;
    }
}

TEST_CASE("pp pseudogroup sampling")
{
    auto pm = two_chain();
    std::vector<mpq_class> a{1, 2};
    // x' = x + x y, y' = y + y^2: dy'/dx = 0, so the Jacobian is upper triangular.
    oracle::Poly f1(2);
    f1.add({1, 0}, 1);
    f1.add({1, 1}, 1);
    oracle::Poly f2(2);
    f2.add({0, 1}, 1);
    f2.add({0, 2}, 1);
    std::vector<JetMap> jets;
    std::vector<JetMap> swapped;
    for (long t = 1; t <= 3; ++t) {
        std::vector<mpq_class> pt{mpq_class(t), mpq_class(t + 1, 2)};
        jets.push_back(oracle::jet_at({f1, f2}, pt, 1));
        swapped.push_back(oracle::jet_at({f2, f1}, pt, 1));
    }
    auto rep = pp_pseudogroup_check(jets, pm);
    CHECK(rep.member);
    CHECK(rep.samples == 3);
    CHECK(rep.label() == "sampled at 3 points");
    auto bad = pp_pseudogroup_check(swapped, pm);
    CHECK_FALSE(bad.member);
    CHECK(bad.failing_point == std::size_t{0});

    Point origin{Coefficient(mpq_class(0)), Coefficient(mpq_class(0))};
    std::vector<JetMap> id{JetMap::identity(origin, 1, Domain::rational)};
    CHECK(pp_pseudogroup_check(id, pm).member);
    std::vector<JetMap> order0{JetMap::identity(origin, 0, Domain::rational)};
    CHECK_THROWS(pp_pseudogroup_check(order0, pm));
}
