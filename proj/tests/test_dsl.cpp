#include "curvlab/dsl.hpp"
#include "curvlab/run.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace curvlab;

TEST_CASE("atoms")
{
    CHECK(structurally_equal(parse_kernel_dsl("szego"), szego_disc()));
    CHECK(structurally_equal(parse_kernel_dsl("diag([8,16]; tail=15)"), diagonal({8.0, 16.0}, 15.0)));
    CHECK(structurally_equal(parse_kernel_dsl(" diag( [ 1 , 2.5e-1 ] ) "), diagonal({1.0, 0.25})));
    CHECK(structurally_equal(parse_kernel_dsl("da(3)"), drury_arveson(3)));
    CHECK(structurally_equal(parse_kernel_dsl("szego_poly(2)"), szego_polydisc(2)));
    CHECK(structurally_equal(parse_kernel_dsl("detball2"), det_ball_2x2()));
    CHECK(structurally_equal(parse_kernel_dsl("const(2)"), constant(2.0)));
}

TEST_CASE("operators")
{
    const KernelSpec k = parse_kernel_dsl("contract(szego ^ 2 * diag([1,1,0.25]; tail=1))^-0.5");
    const KernelSpec want =
        power(contract(product(power(szego_disc(), 2.0), diagonal({1.0, 1.0, 0.25}, 1.0))), -0.5);
    CHECK(structurally_equal(k, want));
    // '*' is left associative, '^' binds tighter
    CHECK(structurally_equal(parse_kernel_dsl("szego*szego^2*szego"),
                             product(product(szego_disc(), power(szego_disc(), 2.0)), szego_disc())));
    CHECK(structurally_equal(parse_kernel_dsl("szego*(szego*szego)"),
                             product(szego_disc(), product(szego_disc(), szego_disc()))));
}

TEST_CASE("syntax errors carry a position and the expected tokens")
{
    try {
        parse_kernel_dsl("contract(diag([1,2]; tail_expr))");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 21);
        CHECK(std::find(e.expected().begin(), e.expected().end(), "tail") != e.expected().end());
    }
    try {
        parse_kernel_dsl("szego *");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 7);
        CHECK(e.expected().size() > 3);
    }
    CHECK_THROWS_AS(parse_kernel_dsl("szego szego"), ParseError);
    CHECK_THROWS_AS(parse_kernel_dsl("diag([1,2)"), ParseError);
    CHECK_THROWS_AS(parse_kernel_dsl("da(0)"), ParseError);
    CHECK_THROWS_AS(parse_kernel_dsl("da(1.5)"), ParseError);
    CHECK_THROWS_AS(parse_kernel_dsl("szego^"), ParseError);
    CHECK_THROWS_AS(parse_kernel_dsl("bergman"), ParseError);
    CHECK_THROWS_AS(parse_kernel_dsl(""), ParseError);
}

TEST_CASE("domain mismatches")
{
    CHECK_THROWS_AS(parse_kernel_dsl("szego * da(2)"), ShapeMismatch);
    CHECK_THROWS_AS(parse_kernel_dsl("contract(detball2)"), ShapeMismatch);
    CHECK_NOTHROW(parse_kernel_dsl("szego * szego_poly(1) * da(1)"));
    CHECK_NOTHROW(parse_kernel_dsl("const(2) * da(2)"));
}

namespace {

KernelSpec random_spec(std::mt19937_64& rng, int depth)
{
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 2);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    switch (pick(rng)) {
    case 0: return szego_disc();
    case 1: return diagonal({u(rng), u(rng), u(rng)}, pick(rng) % 2 ? u(rng) : 0.0);
    case 2: return constant(u(rng));
    case 3:
    case 4: return product(random_spec(rng, depth - 1), random_spec(rng, depth - 1));
    case 5: return power(random_spec(rng, depth - 1), u(rng) - 1.5);
    default: {
        KernelSpec inner = random_spec(rng, depth - 1);
        return inner.domain().kind == Domain::Kind::any ? inner : contract(inner);
    }
    }
}

} // namespace

TEST_CASE("pretty_print round-trips")
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        const KernelSpec k = random_spec(rng, 4);
        const std::string text = pretty_print(k);
        INFO(text);
        CHECK(structurally_equal(parse_kernel_dsl(text), k));
    }
    for (const char* text : {"da(3)^0.5 * da(3)", "szego_poly(2) * contract(szego_poly(2))", "detball2^2"}) {
        const KernelSpec k = parse_kernel_dsl(text);
        CHECK(structurally_equal(parse_kernel_dsl(pretty_print(k)), k));
    }
}

TEST_CASE("points and complex numbers")
{
    CHECK(parse_complex("0.2+0.1i") == Complex(0.2, 0.1));
    CHECK(parse_complex("-0.3i") == Complex(0.0, -0.3));
    CHECK(parse_complex("i") == Complex(0.0, 1.0));
    CHECK(parse_complex("1e-2-2e-1i") == Complex(0.01, -0.2));
    CHECK(parse_complex(" 0.5 ") == Complex(0.5, 0.0));
    CHECK(parse_point("0.2+0.1i, 0, -i") == Point{Complex(0.2, 0.1), 0.0, Complex(0.0, -1.0)});
    CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
    CHECK(format_complex(Complex(0.25, -0.5)) == "0.25-0.5i");
}

TEST_CASE("config files")
{
    const RunConfig c = parse_config("# comment\nkernel = \"diag([8,16]; tail=15)\"  # trailing\n"
                                     "checks = contraction, curvature\norder = 10\nt_grid = 0.5, 1\n"
                                     "seed = 7\nformat = json\ncenter = 0.1+0.1i\n");
    CHECK(c.kernel == "diag([8,16]; tail=15)");
    CHECK(c.checks == std::vector<std::string>{"contraction", "curvature"});
    CHECK(c.order == 10);
    CHECK(c.t_grid == std::vector<double>{0.5, 1.0});
    CHECK(c.seed == 7);
    CHECK(c.format == OutputFormat::json);
    CHECK(*c.center == Point{Complex(0.1, 0.1)});

    CHECK_THROWS_AS(parse_config("kernel = \"szego\"\norder = 20\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("kernel = \"szego\"\nt_grid = 0.5, -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("kernel = \"szego\"\nchecks = magic\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("kernel = \"szego\"\ncolour = red\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("order = 4\n"), ConfigError);
}

TEST_CASE("run_checks")
{
    RunConfig c;
    c.kernel = "diag([8,16]; tail=15)";
    c.checks = {"contraction", "curvature"};
    const ScenarioReport r = run_checks(c);
    CHECK_FALSE(r.pass);
    for (const auto& ch : r.checks) {
        if (ch.name == "contraction")
            CHECK_FALSE(ch.pass);
        else
            CHECK(ch.pass);
    }

    c.kernel = "szego";
    c.checks = {"posdef", "curvature", "contraction", "row_contraction", "polydisc_contraction", "divisible",
                "reconstruct"};
    const ScenarioReport s = run_checks(c);
    CHECK(s.pass);
    CHECK(to_json(s) == to_json(run_checks(c)));

    c.kernel = "da(2)";
    c.checks = {"contraction"};
    CHECK_THROWS_AS(run_checks(c), ShapeMismatch);
}
