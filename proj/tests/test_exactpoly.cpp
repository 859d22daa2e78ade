#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <stdexcept>
#include <vector>

#include "dbx/linalg.hpp"
#include "dbx/poly.hpp"
#include "dbx/seedrng.hpp"

using namespace dbx;

namespace {

// Deterministic random polynomial: up to max_terms monomials, exponents <= 2,
// small rational coefficients.
SparsePoly random_poly(SplitMix64& rng, int nvars, int max_terms) {
    SparsePoly p(nvars);
    int nterms = static_cast<int>(rng.next() % static_cast<uint64_t>(max_terms)) + 1;
    for (int t = 0; t < nterms; ++t) {
        ExpVec e(static_cast<size_t>(nvars), 0);
        for (int v = 0; v < nvars; ++v)
            e[static_cast<size_t>(v)] = static_cast<int>(rng.next() % 3);
        long num = static_cast<long>(rng.next() % 19) - 9;
        long den = static_cast<long>(rng.next() % 5) + 1;
        p.add_term(e, rat(num, den));
    }
    return p;
}

SparsePoly var(int nvars, int v) { return SparsePoly::variable(nvars, v); }

}  // namespace

TEST_CASE("ring axioms hold for random polynomials") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        SparsePoly a = random_poly(rng, 3, 5);
        SparsePoly b = random_poly(rng, 3, 5);
        SparsePoly c = random_poly(rng, 3, 5);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK(a + SparsePoly(3) == a);
        CHECK(a * SparsePoly::constant(3, Rat(1)) == a);
        CHECK((a * SparsePoly(3)).is_zero());
    }
}

TEST_CASE("term order is graded, with lexicographically larger vectors first") {
    SparsePoly p(2);
    p.add_term({0, 0}, Rat(1));
    p.add_term({0, 1}, Rat(2));
    p.add_term({1, 0}, Rat(3));
    p.add_term({1, 1}, Rat(4));
    p.add_term({2, 0}, Rat(5));
    std::vector<ExpVec> order;
    for (const auto& [e, coeff] : p.terms()) order.push_back(e);
    std::vector<ExpVec> expected = {
        {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}};
    CHECK(order == expected);
    CHECK(p.to_string() == "1 + 3*x1 + 2*x2 + 5*x1^2 + 4*x1*x2");
}

TEST_CASE("degree and structure queries") {
    SparsePoly p(3);
    p.add_term({2, 1, 0}, Rat(1));
    p.add_term({1, 0, 0}, Rat(3));
    CHECK(p.total_degree() == 3);
    CHECK_FALSE(p.is_homogeneous());
    CHECK_FALSE(p.is_multilinear());
    CHECK(p.degree_in(0) == 2);
    CHECK(p.degree_in(2) == 0);
    CHECK(SparsePoly(3).total_degree() == -1);
    CHECK(SparsePoly(3).is_homogeneous());

    SparsePoly h = var(3, 0) * var(3, 1) + var(3, 1) * var(3, 2);
    CHECK(h.is_homogeneous());
    CHECK(h.is_multilinear());
}

TEST_CASE("coefficient extraction") {
    // p = x1^2 x2 + 3 x1 + 2
    SparsePoly p(2);
    p.add_term({2, 1}, Rat(1));
    p.add_term({1, 0}, Rat(3));
    p.add_term({0, 0}, Rat(2));
    CHECK(p.coefficient_of({2, 1}) == 1);
    CHECK(p.coefficient_of({0, 1}) == 0);
    CHECK(p.coefficient_of_power(0, 2) == var(2, 1));
    CHECK(p.coefficient_of_power(0, 1) == SparsePoly::constant(2, Rat(3)));
    CHECK(p.coefficient_of_power(0, 0) == SparsePoly::constant(2, Rat(2)));
    CHECK(p.coefficient_of_power(0, 3).is_zero());
}

TEST_CASE("zero terms are never stored") {
    SparsePoly p(2);
    p.add_term({1, 0}, Rat(2));
    p.add_term({1, 0}, Rat(-2));
    CHECK(p.is_zero());
    CHECK(p.num_terms() == 0);
}

TEST_CASE("derivative satisfies the Leibniz rule") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        SparsePoly f = random_poly(rng, 3, 4);
        SparsePoly g = random_poly(rng, 3, 4);
        for (int v = 0; v < 3; ++v) {
            CHECK((f * g).derivative(v) ==
                  f.derivative(v) * g + f * g.derivative(v));
        }
    }
    CHECK(SparsePoly::constant(2, Rat(5)).derivative(0).is_zero());
    SparsePoly p = var(2, 0) * var(2, 0) * var(2, 1);
    CHECK(p.derivative(0) == Rat(2) * (var(2, 0) * var(2, 1)));
}

TEST_CASE("substitution composes correctly") {
    // p(x1, x2) = x1^2 + x2; substitute x1 -> x1 + x2, x2 -> x1 * x2.
    SparsePoly p(2);
    p.add_term({2, 0}, Rat(1));
    p.add_term({0, 1}, Rat(1));
    std::vector<SparsePoly> forms = {var(2, 0) + var(2, 1),
                                     var(2, 0) * var(2, 1)};
    SparsePoly q = p.substitute(forms);
    SparsePoly expected = (var(2, 0) + var(2, 1)) * (var(2, 0) + var(2, 1)) +
                          var(2, 0) * var(2, 1);
    CHECK(q == expected);

    // Identity substitution is the identity.
    SplitMix64 rng(11);
    SparsePoly r = random_poly(rng, 3, 5);
    std::vector<SparsePoly> id = {var(3, 0), var(3, 1), var(3, 2)};
    CHECK(r.substitute(id) == r);
}

TEST_CASE("set_vars_to_zero and padding") {
    SparsePoly p(3);
    p.add_term({1, 1, 0}, Rat(2));
    p.add_term({0, 0, 2}, Rat(3));
    SparsePoly q = p.set_vars_to_zero({1});
    CHECK(q.coefficient_of({1, 1, 0}) == 0);
    CHECK(q.coefficient_of({0, 0, 2}) == 3);

    SparsePoly wide = p.padded(5);
    CHECK(wide.nvars() == 5);
    CHECK(wide.coefficient_of({1, 1, 0, 0, 0}) == 2);
    CHECK(wide.coefficient_of({0, 0, 2, 0, 0}) == 3);
}

TEST_CASE("exact division by a variable") {
    SparsePoly p = var(2, 0) * var(2, 1) + var(2, 0) * var(2, 0);
    CHECK(p.divide_by_variable(0) == var(2, 1) + var(2, 0));
    SparsePoly q = var(2, 0) + var(2, 1);
    CHECK_THROWS_AS(q.divide_by_variable(0), std::domain_error);
}

TEST_CASE("evaluation over rationals and complexes agree") {
    SplitMix64 rng(13);
    SparsePoly p = random_poly(rng, 3, 6);
    std::vector<Rat> x = {rat(1, 2), rat(-3), rat(2, 5)};
    std::vector<std::complex<double>> xc;
    for (const Rat& r : x) xc.emplace_back(to_double(r), 0.0);
    double exact = to_double(p.eval_rat(x));
    CHECK(std::abs(p.eval_complex(xc).real() - exact) < 1e-12);
    CHECK(std::abs(p.eval_complex(xc).imag()) < 1e-15);
}

TEST_CASE("polynomial determinant") {
    SparsePoly a = var(2, 0), b = var(2, 1);
    SparsePoly one = SparsePoly::constant(2, Rat(1));
    // det [[a, b], [1, a]] = a^2 - b
    SparsePoly det = poly_determinant({{a, b}, {one, a}});
    CHECK(det == a * a - b);
    CHECK(poly_determinant({{b}}) == b);
}

TEST_CASE("Sylvester resultant eliminates the chosen variable") {
    // Res_x(x - a, x*a - 1) over var 0, with a = var 1.
    SparsePoly x = var(2, 0), a = var(2, 1);
    SparsePoly one = SparsePoly::constant(2, Rat(1));
    SparsePoly r = sylvester_resultant(x - a, x * a - one, 0);
    CHECK(r == a * a - one);

    // Common root => resultant 0: Res(x^2 - 1, x - 1).
    SparsePoly p = x * x - one;
    CHECK(sylvester_resultant(p, x - one, 0).is_zero());

    // No common root: Res(x^2 - 1, x - 2) = (1-2)(-1-2) = 3.
    SparsePoly two = SparsePoly::constant(2, Rat(2));
    CHECK(sylvester_resultant(p, x - two, 0) ==
          SparsePoly::constant(2, Rat(3)));

    // Constant second argument: Res(x^2 + 1, 3) = 3^2.
    SparsePoly three = SparsePoly::constant(2, Rat(3));
    CHECK(sylvester_resultant(p + two, three, 0) ==
          SparsePoly::constant(2, Rat(9)));
}

TEST_CASE("rational matrix rank, rref, and kernel") {
    RatMatrix m(2, 3);
    m.at(0, 0) = Rat(1);
    m.at(0, 1) = Rat(2);
    m.at(0, 2) = Rat(3);
    m.at(1, 0) = Rat(2);
    m.at(1, 1) = Rat(4);
    m.at(1, 2) = Rat(6);
    CHECK(m.rank() == 1);
    auto kernel = m.kernel_basis();
    CHECK(kernel.size() == 2);
    for (const auto& k : kernel) {
        for (int i = 0; i < 2; ++i) {
            Rat acc(0);
            for (int j = 0; j < 3; ++j) acc += m.at(i, j) * k[static_cast<size_t>(j)];
            CHECK(acc == 0);
        }
    }

    RatMatrix simple = RatMatrix::from_rows({{Rat(1), Rat(1)}});
    auto k1 = simple.kernel_basis();
    REQUIRE(k1.size() == 1);
    CHECK(k1[0][0] == -k1[0][1]);

    int rank = 0;
    RatMatrix r = RatMatrix::from_rows({{Rat(0), Rat(2)}, {Rat(3), Rat(0)}})
                      .rref(&rank);
    CHECK(rank == 2);
    CHECK(r.at(0, 0) == 1);
    CHECK(r.at(0, 1) == 0);
    CHECK(r.at(1, 0) == 0);
    CHECK(r.at(1, 1) == 1);
}

TEST_CASE("span rank, canonical basis, and subspace intersection") {
    std::vector<std::vector<Rat>> vecs = {
        {Rat(1), Rat(2), Rat(0)}, {Rat(2), Rat(4), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
    CHECK(rank_of_span(vecs) == 2);
    auto basis = rref_basis(vecs);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0][0] == 1);  // leading ones in canonical form

    std::vector<std::vector<Rat>> e12 = {{Rat(1), Rat(0), Rat(0)},
                                         {Rat(0), Rat(1), Rat(0)}};
    std::vector<std::vector<Rat>> e23 = {{Rat(0), Rat(1), Rat(0)},
                                         {Rat(0), Rat(0), Rat(1)}};
    auto inter = subspace_intersection(e12, e23);
    REQUIRE(inter.size() == 1);
    CHECK(inter[0] == std::vector<Rat>{Rat(0), Rat(1), Rat(0)});

    auto empty = subspace_intersection({{Rat(1), Rat(0)}}, {{Rat(0), Rat(1)}});
    CHECK(empty.empty());
}

TEST_CASE("rational helpers canonicalize") {
    CHECK(rat(4, 6) == rat(2, 3));
    CHECK(rat_string(rat(-5)) == "-5");
    CHECK(rat_string(rat(7, 3)) == "7/3");
    CHECK(rat_parse("7/3") == rat(7, 3));
    CHECK(rat_parse("-4/6") == rat(-2, 3));
    CHECK(rat_parse("12") == rat(12));
    CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
    CHECK(rat_bits(rat(1)) >= 2);
}
