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
#include "jetforge/itertangent.hpp"
#include "jetforge/jet.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace jetforge;

namespace {

Coefficient q(long a, long b = 1)
{
    return Coefficient(mpq_class(a, b));
}

Point zeros(std::size_t m)
{
    return Point(m, q(0));
}

Tensor scalar_tensor(std::size_t arity, const Coefficient& c)
{
    Tensor t(1, 1, arity, Domain::rational);
    t.flat(0) = c;
    return t;
}

// m = n = 1, r = 2 with blocks (y1, y2, y12).
NonholJet nonhol2(long y1, long y2, long y12)
{
    return NonholJet(1, 1, 2, zeros(1), zeros(1),
                     {scalar_tensor(1, q(y1)), scalar_tensor(1, q(y2)), scalar_tensor(2, q(y12))}, Domain::rational);
}

IterTangentVector vec(unsigned r, std::vector<std::vector<long>> blocks, Point base = {})
{
    std::vector<std::vector<Coefficient>> b;
    for (const auto& block : blocks) {
        std::vector<Coefficient> v;
        for (long x : block) {
            v.push_back(q(x));
        }
        b.push_back(std::move(v));
    }
    if (base.empty()) {
        base = zeros(b.front().size());
    }
    return IterTangentVector(r, base, std::move(b), Domain::rational);
}

IterTangentVector random_vector(std::mt19937_64& rng, unsigned r, const Point& base)
{
    auto v = IterTangentVector::zero(r, base, Domain::rational);
    for (LevelSet s = 1; s <= all_levels(r); ++s) {
        for (auto& x : v.block(s)) {
            x = Coefficient(oracle::random_rational(rng));
        }
    }
    return v;
}

NonholJet random_nonhol(std::mt19937_64& rng, std::size_t m, std::size_t n, unsigned r)
{
    std::vector<Tensor> blocks;
    for (LevelSet s = 1; s <= all_levels(r); ++s) {
        Tensor t(n, m, levels_of(s).size(), Domain::rational);
        for (std::size_t k = 0; k < t.size(); ++k) {
            t.flat(k) = Coefficient(oracle::random_rational(rng));
        }
        blocks.push_back(std::move(t));
    }
    return NonholJet(m, n, r, zeros(m), zeros(n), std::move(blocks), Domain::rational);
}

QuasiJet random_quasi(std::mt19937_64& rng, std::size_t m, std::size_t n, unsigned r)
{
    auto out = QuasiJet::zero(m, n, r, zeros(m), zeros(n), Domain::rational);
    for (LevelSet s = 1; s <= all_levels(r); ++s) {
        for (std::size_t k = 0; k < out.partitions(s).size(); ++k) {
            Tensor& t = out.coeff(s, k);
            for (std::size_t i = 0; i < t.size(); ++i) {
                t.flat(i) = Coefficient(oracle::random_rational(rng));
            }
        }
    }
    return out;
}

std::vector<mpq_class> mpq_point(const Point& p)
{
    std::vector<mpq_class> out;
    for (const auto& x : p) {
        out.push_back(x.rational());
    }
    return out;
}

std::vector<std::vector<mpq_class>> mpq_blocks(const IterTangentVector& v)
{
    std::vector<std::vector<mpq_class>> out;
    for (LevelSet s = 1; s <= all_levels(v.order()); ++s) {
        out.push_back(mpq_point(v.block(s)));
    }
    return out;
}

} // namespace

TEST_CASE("set partitions match restricted growth strings")
{
    for (unsigned k = 1; k <= 5; ++k) {
        auto parts = set_partitions(all_levels(k));
        CHECK(parts.size() == oracle::restricted_growth_strings(k).size());
        CHECK(parts.front().size() == k);
        CHECK(parts.back() == SetPartition{all_levels(k)});
        for (const auto& p : parts) {
            LevelSet seen = 0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                CHECK((seen & p[i]) == 0);
                seen |= p[i];
                if (i > 0) {
                    CHECK(levels_of(p[i - 1]).front() < levels_of(p[i]).front());
                }
            }
            CHECK(seen == all_levels(k));
        }
    }
    CHECK(set_partitions(0b101).size() == 2);
    CHECK(partition_key(3, {1, 2}) == "S=[1,2];P=[[1],[2]]");
    CHECK(partition_key(3, {3}) == "S=[1,2];P=[[1,2]]");
}

TEST_CASE("level operations")
{
    auto v = vec(2, {{1}, {2}, {3}});
    auto w = vec(2, {{1}, {5}, {7}});
    CHECK(level_add(v, w, 2) == vec(2, {{1}, {7}, {10}}));
    CHECK_THROWS_AS(level_add(v, w, 1), PreconditionError);
    CHECK(level_scale(v, q(0), 1) == vec(2, {{0}, {2}, {0}}));
    CHECK(level_scale(v, q(3), 2) == vec(2, {{1}, {6}, {9}}));
    CHECK(level_project(level_add(v, w, 2), 2) == level_project(v, 2));
    CHECK(level_project(v, 2) == vec(1, {{1}}));
    CHECK(level_project(v, 1) == vec(1, {{2}}));

    std::mt19937_64 rng(7);
    auto a = random_vector(rng, 3, zeros(2));
    auto p = level_project(a, 2);
    CHECK(p.order() == 2);
    CHECK(p.block(1) == a.block(0b001));
    CHECK(p.block(2) == a.block(0b100));
    CHECK(p.block(3) == a.block(0b101));
}

TEST_CASE("embed_holonomic examples")
{
    // f = 2x + 3x^2 at 0: f' = 2, f'' = 6.
    oracle::Poly f(1);
    f.add({1}, 2);
    f.add({2}, 3);
    auto e = embed_holonomic(oracle::jet_at({f}, {0}, 2));
    CHECK(e == nonhol2(2, 2, 6));
    CHECK(is_holonomic(e));

    auto id = embed_holonomic(JetMap::identity(zeros(2), 1, Domain::rational));
    CHECK(id.block(1).at(0, std::vector<std::size_t>{0}) == q(1));
    CHECK(id.block(1).at(0, std::vector<std::size_t>{1}) == q(0));
    CHECK(id.block(1).at(1, std::vector<std::size_t>{1}) == q(1));
}

TEST_CASE("embed_holonomic at order 3 agrees with the iterated tangent oracle on basis probes")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<oracle::Poly> f{oracle::random_poly(rng, 2, 4, 6), oracle::random_poly(rng, 2, 4, 6)};
        std::vector<mpq_class> a{oracle::random_rational(rng), oracle::random_rational(rng)};
        auto x = embed_holonomic(oracle::jet_at(f, a, 3));
        // Block S of the embedding is what block S of T^3 f returns when
        // every v_{l} (l in S) is a basis vector and every other block is 0.
        for (LevelSet s = 1; s <= 7; ++s) {
            auto lv = levels_of(s);
            std::size_t combos = std::size_t{1} << lv.size();
            for (std::size_t c = 0; c < combos; ++c) {
                std::vector<std::vector<mpq_class>> blocks(7, std::vector<mpq_class>(2));
                std::vector<std::size_t> idx;
                for (std::size_t j = 0; j < lv.size(); ++j) {
                    std::size_t basis = (c >> j) & 1;
                    blocks[level_bit(lv[j]) - 1][basis] = 1;
                    idx.push_back(basis);
                }
                auto out = oracle::iterated_tangent(f, a, blocks, 3);
                for (std::size_t i = 0; i < 2; ++i) {
                    CHECK(x.block(s).at(i, idx).rational() == out[s - 1][i]);
                }
            }
        }
    }
}

TEST_CASE("mu_eval examples")
{
    auto x = nonhol2(2, 3, 5);
    // (v1, v2, v12) -> (y1 v1, y2 v2, y12 v1 v2 + y1 v12)
    CHECK(mu_eval(x, vec(2, {{7}, {11}, {13}})) == vec(2, {{14}, {33}, {5 * 7 * 11 + 2 * 13}}));
    CHECK(mu_eval(x, vec(2, {{0}, {0}, {0}})) == vec(2, {{0}, {0}, {0}}));
    CHECK_THROWS_AS(mu_eval(x, vec(1, {{1}})), PreconditionError);

    std::mt19937_64 rng(3);
    auto big = random_nonhol(rng, 2, 2, 3);
    auto zero = IterTangentVector::zero(3, zeros(2), Domain::rational);
    CHECK(mu_eval(big, zero) == IterTangentVector::zero(3, zeros(2), Domain::rational));
}

TEST_CASE("mu_eval of embedded jets matches the symbolic iterated tangent map")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t m = 1 + trial % 2;
        std::size_t n = 1 + (trial / 2) % 2;
        unsigned r = 1 + trial % 3;
        std::vector<oracle::Poly> f;
        for (std::size_t j = 0; j < n; ++j) {
            f.push_back(oracle::random_poly(rng, m, r + 1, 5));
        }
        std::vector<mpq_class> a;
        for (std::size_t i = 0; i < m; ++i) {
            a.push_back(oracle::random_rational(rng));
        }
        auto jet = oracle::jet_at(f, a, r);
        auto x = embed_holonomic(jet);
        for (int k = 0; k < 5; ++k) {
            auto v = random_vector(rng, r, jet.source_point());
            auto out = mu_eval(x, v);
            CHECK(out.base_point() == jet.target_point());
            CHECK(mpq_blocks(out) == oracle::iterated_tangent(f, a, mpq_blocks(v), r));
        }
    }
}

TEST_CASE("linearity laws hold for mu_eval and quasi_eval and catch a nonlinear map")
{
    std::mt19937_64 rng(9);
    for (unsigned r = 1; r <= 3; ++r) {
        auto x = random_nonhol(rng, 2, 1, r);
        EvaluatorShape shape{2, 1, r, zeros(2), zeros(1), Domain::rational};
        auto rep = check_level_linearity([&](const IterTangentVector& v) { return mu_eval(x, v); }, shape, 1);
        CHECK(rep.ok);
        CHECK(rep.probes > 0);
        auto qj = random_quasi(rng, 2, 1, r);
        CHECK(check_level_linearity([&](const IterTangentVector& v) { return quasi_eval(qj, v); }, shape, 2).ok);
    }

    EvaluatorShape shape{1, 1, 2, zeros(1), zeros(1), Domain::rational};
    // v12 -> v12 + v1^2 is not additive at level 1.
    BlockEvaluator bad = [](const IterTangentVector& v) {
        auto out = v;
        out.block(3)[0] = v.block(3)[0] + v.block(1)[0] * v.block(1)[0];
        return out;
    };
    auto rep = check_level_linearity(bad, shape, 4);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.failure.empty());
    CHECK_THROWS_AS(extract_quasi(bad, shape, 4), Error);
}

TEST_CASE("extract_quasi examples")
{
    auto qj = extract_quasi(nonhol2(2, 3, 5), 1);
    CHECK(qj.coeff(1, 0) == scalar_tensor(1, q(2)));
    CHECK(qj.coeff(2, 0) == scalar_tensor(1, q(3)));
    CHECK(qj.coeff(3, 0) == scalar_tensor(2, q(5)));
    CHECK(qj.coeff(3, 1) == scalar_tensor(1, q(2)));

    EvaluatorShape shape{2, 3, 2, zeros(2), zeros(3), Domain::rational};
    BlockEvaluator zero = [](const IterTangentVector&) {
        return IterTangentVector::zero(2, zeros(3), Domain::rational);
    };
    CHECK(extract_quasi(zero, shape, 1) == QuasiJet::zero(2, 3, 2, zeros(2), zeros(3), Domain::rational));

    std::mt19937_64 rng(2);
    auto lin = random_nonhol(rng, 2, 3, 1);
    auto q1 = extract_quasi(lin, 1);
    CHECK(q1.coeff(1, 0) == lin.block(1));
}

TEST_CASE("extraction reconstructs the evaluator")
{
    std::mt19937_64 rng(13);
    for (unsigned r = 1; r <= 3; ++r) {
        auto x = random_nonhol(rng, 2, 2, r);
        auto qj = extract_quasi(x, 3);
        for (int k = 0; k < 5; ++k) {
            auto v = random_vector(rng, r, zeros(2));
            CHECK(quasi_eval(qj, v) == mu_eval(x, v));
        }
        auto other = random_quasi(rng, 2, 1, r);
        EvaluatorShape shape{2, 1, r, zeros(2), zeros(1), Domain::rational};
        CHECK(extract_quasi([&](const IterTangentVector& v) { return quasi_eval(other, v); }, shape, 4) == other);
    }
}

TEST_CASE("quasi_eval examples")
{
    auto qj = QuasiJet::zero(1, 1, 2, zeros(1), zeros(1), Domain::rational);
    qj.coeff(1, 0) = scalar_tensor(1, q(2));
    qj.coeff(2, 0) = scalar_tensor(1, q(3));
    qj.coeff(3, 0) = scalar_tensor(2, q(5));
    qj.coeff(3, 1) = scalar_tensor(1, q(7));
    CHECK(quasi_eval(qj, vec(2, {{1}, {2}, {3}})) == vec(2, {{2}, {6}, {5 * 2 + 7 * 3}}));

    auto id = QuasiJet::identity(2, 1, zeros(2), Domain::rational);
    auto v = vec(1, {{4, -1}});
    CHECK(quasi_eval(id, v) == v);

    std::mt19937_64 rng(17);
    auto big = random_quasi(rng, 2, 2, 3);
    auto w = random_vector(rng, 3, zeros(2));
    auto base = quasi_eval(big, w);
    auto scaled = quasi_eval(big, level_scale(w, q(3), 2));
    for (LevelSet s = 1; s <= 7; ++s) {
        auto expected = base.block(s);
        if (s & level_bit(2)) {
            for (auto& c : expected) {
                c *= q(3);
            }
        }
        CHECK(scaled.block(s) == expected);
    }
}

TEST_CASE("compose_quasi")
{
    std::mt19937_64 rng(19);
    auto x = random_quasi(rng, 2, 2, 2);
    auto id2 = QuasiJet::identity(2, 2, zeros(2), Domain::rational);
    CHECK(compose_quasi(x, id2, 1) == x);
    CHECK(compose_quasi(id2, x, 1) == x);

    auto a = random_quasi(rng, 2, 3, 1);
    auto b = random_quasi(rng, 2, 2, 1);
    auto ab = compose_quasi(a, b, 1);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            Coefficient s = q(0);
            for (std::size_t k = 0; k < 2; ++k) {
                s += a.coeff(1, 0).at(i, std::vector<std::size_t>{k}) * b.coeff(1, 0).at(k, std::vector<std::size_t>{j});
            }
            CHECK(ab.coeff(1, 0).at(i, std::vector<std::size_t>{j}) == s);
        }
    }

    CHECK_THROWS_AS(compose_quasi(a, a, 1), PreconditionError);

    for (int trial = 0; trial < 3; ++trial) {
        auto p = random_quasi(rng, 2, 1, 3);
        auto u = random_quasi(rng, 2, 2, 3);
        auto t = random_quasi(rng, 1, 2, 3);
        CHECK(compose_quasi(compose_quasi(t, p, 1), u, 2) == compose_quasi(t, compose_quasi(p, u, 3), 4));
    }
}

TEST_CASE("embedding intertwines composition")
{
    std::mt19937_64 rng(23);
    for (unsigned r = 1; r <= 3; ++r) {
        std::vector<oracle::Poly> g{oracle::random_poly(rng, 2, r + 1, 5), oracle::random_poly(rng, 2, r + 1, 5)};
        std::vector<oracle::Poly> f{oracle::random_poly(rng, 2, r + 1, 5)};
        std::vector<mpq_class> a{oracle::random_rational(rng), oracle::random_rational(rng)};
        auto jg = oracle::jet_at(g, a, r);
        auto jf = oracle::jet_at(f, mpq_point(jg.target_point()), r);
        auto composite = compose_jets(jf, jg);
        auto xf = embed_holonomic(jf);
        auto xg = embed_holonomic(jg);
        CHECK(compose_nonhol(xf, xg, 1) == embed_holonomic(composite));
        CHECK(compose_quasi(extract_quasi(xf, 1), extract_quasi(xg, 1), 1)
              == extract_quasi(embed_holonomic(composite), 1));
    }
}

TEST_CASE("compose_nonhol")
{
    std::mt19937_64 rng(29);
    auto x = random_nonhol(rng, 2, 2, 3);
    auto id = embed_holonomic(JetMap::identity(zeros(2), 3, Domain::rational));
    CHECK(compose_nonhol(id, x, 1) == x);
    CHECK(compose_nonhol(x, id, 1) == x);

    // Symbolic composite of the affine-coefficient representatives:
    // (x1 y1, x2 y2, x12 y1 y2 + x1 y12).
    auto outer = nonhol2(2, 3, 5);
    auto inner = nonhol2(7, 11, 13);
    CHECK(compose_nonhol(outer, inner, 1) == nonhol2(14, 33, 5 * 7 * 11 + 2 * 13));

    for (int trial = 0; trial < 3; ++trial) {
        auto p = random_nonhol(rng, 2, 1, 3);
        auto u = random_nonhol(rng, 2, 2, 3);
        auto composite = compose_nonhol(p, u, 1);
        CHECK(is_nonholonomic(compose_quasi(extract_quasi(p, 1), extract_quasi(u, 1), 1), 1));
        for (int k = 0; k < 3; ++k) {
            auto v = random_vector(rng, 3, zeros(2));
            CHECK(mu_eval(composite, v) == mu_eval(p, mu_eval(u, v)));
        }
    }
}

TEST_CASE("is_holonomic and reconstruction")
{
    CHECK_FALSE(is_holonomic(nonhol2(1, 2, 3)));
    CHECK(is_holonomic(nonhol2(2, 2, 3)));
    CHECK_FALSE(holonomic_representative(nonhol2(1, 2, 3)).has_value());

    std::mt19937_64 rng(31);
    for (unsigned r = 1; r <= 3; ++r) {
        std::vector<oracle::Poly> f{oracle::random_poly(rng, 2, r, 6), oracle::random_poly(rng, 2, r, 6)};
        auto x = embed_holonomic(oracle::jet_at(f, {0, 0}, r));
        CHECK(is_holonomic(x));
        auto rep = holonomic_representative(x);
        REQUIRE(rep.has_value());
        CHECK(embed_holonomic(*rep) == x);
    }

    auto x = embed_holonomic(oracle::jet_at({oracle::random_poly(rng, 2, 2, 6)}, {0, 0}, 2));
    Tensor& t = x.block(3);
    t.at(0, std::vector<std::size_t>{0, 1}) += q(1);
    CHECK_FALSE(is_holonomic(x));
}

TEST_CASE("parameter counts match enumeration")
{
    for (std::size_t m = 1; m <= 2; ++m) {
        for (std::size_t n = 1; n <= 2; ++n) {
            for (unsigned r = 1; r <= 3; ++r) {
                std::uint64_t hol = 0;
                for (unsigned d = 1; d <= r; ++d) {
                    hol += n * monomials_of_degree(m, d).size();
                }
                CHECK(holonomic_parameter_count(m, n, r) == hol);

                std::uint64_t nonhol = 0;
                std::uint64_t quasi = 0;
                for (LevelSet s = 1; s <= all_levels(r); ++s) {
                    std::size_t k = levels_of(s).size();
                    std::uint64_t block = n;
                    for (std::size_t i = 0; i < k; ++i) {
                        block *= m;
                    }
                    nonhol += block;
                    for (const auto& rgs : oracle::restricted_growth_strings(static_cast<unsigned>(k))) {
                        unsigned parts = 0;
                        for (unsigned c : rgs) {
                            parts = std::max(parts, c + 1);
                        }
                        std::uint64_t t = n;
                        for (unsigned i = 0; i < parts; ++i) {
                            t *= m;
                        }
                        quasi += t;
                    }
                }
                CHECK(nonholonomic_parameter_count(m, n, r) == nonhol);
                CHECK(quasijet_parameter_count(m, n, r) == quasi);
                CHECK(QuasiJet::zero(m, n, r, zeros(m), zeros(n), Domain::rational).parameter_count() == quasi);
            }
        }
    }
    CHECK(stirling2(4, 2) == 7);
    CHECK(stirling2(5, 3) == 25);
}

TEST_CASE("brute-force linear-law solutions match the quasijet count")
{
    CHECK(oracle::brute_force_quasijet_dim(1, 1, 1, true, 1) == quasijet_parameter_count(1, 1, 1));
    CHECK(oracle::brute_force_quasijet_dim(1, 1, 2, true, 1) == 4);
    CHECK(oracle::brute_force_quasijet_dim(2, 1, 2, true, 2) == quasijet_parameter_count(2, 1, 2));
    CHECK(oracle::brute_force_quasijet_dim(1, 2, 2, true, 3) == quasijet_parameter_count(1, 2, 2));
}

TEST_CASE("the c4 != c1 witness is a quasijet outside the nonholonomic subset")
{
    auto qj = QuasiJet::zero(1, 1, 2, zeros(1), zeros(1), Domain::rational);
    qj.coeff(1, 0) = scalar_tensor(1, q(2));
    qj.coeff(2, 0) = scalar_tensor(1, q(3));
    qj.coeff(3, 0) = scalar_tensor(2, q(5));
    qj.coeff(3, 1) = scalar_tensor(1, q(7));
    CHECK_FALSE(is_nonholonomic(qj, 1));
    qj.coeff(3, 1) = scalar_tensor(1, q(2));
    CHECK(is_nonholonomic(qj, 1));
    CHECK(nonhol_readback(qj) == nonhol2(2, 3, 5));
}

TEST_CASE("monomial-level law count matches the quasijet count")
{
    for (std::size_t m = 1; m <= 2; ++m) {
        for (std::size_t n = 1; n <= 2; ++n) {
            for (unsigned r = 1; r <= 3; ++r) {
                CHECK(oracle::monomial_law_count(m, n, r) == quasijet_parameter_count(m, n, r));
            }
        }
    }
}

TEST_CASE("experimental: partition coefficients tie to the block of part minima at r = 3")
{
    std::mt19937_64 rng(37);
    std::size_t ties = 0;
    std::size_t total = 0;
    for (int trial = 0; trial < 10; ++trial) {
        auto x = random_nonhol(rng, 2, 2, 3);
        auto qj = extract_quasi(x, 5);
        for (LevelSet s = 1; s <= 7; ++s) {
            const auto& parts = qj.partitions(s);
            for (std::size_t k = 0; k < parts.size(); ++k) {
                LevelSet minima = 0;
                for (LevelSet b : parts[k]) {
                    minima |= level_bit(levels_of(b).front());
                }
                ++total;
                ties += qj.coeff(s, k) == x.block(minima) ? 1 : 0;
            }
        }
    }
    MESSAGE("minima tie held for " << ties << " of " << total << " coefficients");
    CHECK(ties == total);
}

TEST_CASE("compose_nonhol membership guard on random pairs")
{
    std::mt19937_64 rng(41);
    std::size_t failures = 0;
    std::size_t pairs = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t m = 1 + trial % 2;
        std::size_t k = 1 + (trial / 2) % 2;
        std::size_t n = 1 + (trial / 4) % 2;
        unsigned r = 1 + trial % 3;
        auto inner = random_nonhol(rng, m, k, r);
        auto outer = random_nonhol(rng, k, n, r);
        ++pairs;
        try {
            compose_nonhol(outer, inner, static_cast<std::uint64_t>(trial));
        } catch (const Error&) {
            ++failures;
        }
    }
    MESSAGE("membership failures: " << failures << " of " << pairs);
    CHECK(failures == 0);
}
