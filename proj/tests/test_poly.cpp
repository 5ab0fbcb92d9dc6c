#include <doctest.h>

#include "ytf/exact_linalg.hpp"
#include "ytf/poly.hpp"

using namespace ytf;

TEST_CASE("multiindex enumeration counts") {
    CHECK(multiindices_of_degree(6, 2).size() == 21);
    CHECK(multiindices_of_degree(8, 3).size() == 120);
    CHECK(multiindices_up_to(6, 2, 2).size() == 21);
}

TEST_CASE("poly arithmetic and derivatives") {
    const int n = 3;
    Poly x = Poly::variable(n, 0);
    Poly y = Poly::variable(n, 1);
    Poly p = x * x * y + y * rat(3);
    CHECK(p.degree() == 3);
    Poly dp = p.derivative(0);  // 2xy
    CHECK(dp == x * y * rat(2));
    Poly dy = p.derivative(1);  // x^2 + 3
    CHECK(dy == x * x + Poly::constant(n, rat(3)));
    CHECK(p.substitute(1, Rational(0)).is_zero());
    std::vector<Rational> pt = {rat(2), rat(1, 2), rat(0)};
    CHECK(p.eval(pt) == rat(2) + rat(3, 2));  // 4*(1/2) + 3*(1/2)
    double xd[3] = {2.0, 0.5, 0.0};
    CHECK(p.eval_double(xd) == doctest::Approx(3.5));
    CompiledPoly cp(p);
    CHECK(cp.eval(xd) == doctest::Approx(3.5));
}

TEST_CASE("poly cancellation removes stored zeros") {
    const int n = 2;
    Poly x = Poly::variable(n, 0);
    Poly p = x - x;
    CHECK(p.is_zero());
    CHECK(p.term_count() == 0);
}

TEST_CASE("exact rref and nullspace") {
    // x + y + z = 0 over three unknowns: nullspace dimension 2
    QMatrix m{{rat(1), rat(1), rat(1)}};
    auto basis = nullspace(m, 3);
    REQUIRE(basis.size() == 2);
    for (const auto& v : basis) CHECK(v[0] + v[1] + v[2] == 0);

    QMatrix a{{rat(2), rat(1)}, {rat(1), rat(3)}};
    QVector b{rat(5), rat(10)};
    auto x = solve(a, b);
    CHECK(x[0] == rat(1));
    CHECK(x[1] == rat(3));
}

TEST_CASE("weighted projection is idempotent") {
    std::vector<QVector> basis = {{rat(1), rat(1), rat(0)}, {rat(0), rat(1), rat(1)}};
    QVector w{rat(1), rat(2), rat(1)};
    QVector v{rat(3), rat(0), rat(-1)};
    auto p = project_onto_span(basis, w, v);
    auto p2 = project_onto_span(basis, w, p);
    for (int i = 0; i < 3; ++i) CHECK(p[i] == p2[i]);
    // residual orthogonal to the span under the weights
    for (const auto& bb : basis) {
        Rational dot(0);
        for (int i = 0; i < 3; ++i) dot += w[i] * bb[i] * (v[i] - p[i]);
        CHECK(dot == 0);
    }
}
