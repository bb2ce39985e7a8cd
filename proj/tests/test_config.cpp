#include "tnf/config.hpp"
#include "tnf/fixtures.hpp"

#include <catch_amalgamated.hpp>

using namespace tnf;
using Q = Rational;

namespace {

std::string where_of(const std::string& doc) {
    try {
        parse_config_text(doc);
    } catch (const ConfigError& e) {
        return e.where();
    }
    return "<accepted>";
}

const char* kIdentityMin = R"({
  "generator": {"pieces": [{"left": 0, "form": {"kind": "linear", "params": [1, 0]}, "value_at_left": 0}],
                "value_at_one": 1},
  "tnorm": {"kind": "min"}
})";

} // namespace

TEST_CASE("round trip of every fixture", "[config]") {
    for (const auto& fx : fixtures()) {
        INFO(fx.id);
        Config c{fx.f, fx.F, {}};
        c.options.tol = 1e-10;
        auto j = to_json(c);
        auto back = parse_config(j);
        CHECK(back == c);
        CHECK(to_json(back) == j);
        CHECK(parse_config_text(j.dump()) == c);
    }
}

TEST_CASE("numbers in several spellings", "[config]") {
    auto c = parse_config_text(R"({
      "generator": {"pieces": [{"left": "0", "form": {"kind": "linear", "params": ["1/2", 0.25]},
                                "value_at_left": "2.5e-1"}], "value_at_one": "0.75"},
      "tnorm": {"kind": "scaled", "lambda": "1/3", "inner": {"kind": "product"}},
      "options": {"grid": 11, "tol": 0.001, "backend": "exact"}
    })");
    CHECK(c.f(rat(1, 2)) == rat(1, 2));
    CHECK(c.F.lambda() == rat(1, 3));
    CHECK(c.options.grid == 11);
    CHECK(c.options.backend == Backend::Exact);
    CHECK(*c.options.tol == 0.001);
    CHECK(config_detail::text(rat(1, 3)) == "1/3");
    CHECK(config_detail::text(rat(-3, 40)) == "-0.075");
    CHECK(config_detail::text(Q(7)) == "7");
}

TEST_CASE("defaults", "[config]") {
    auto c = parse_config_text(kIdentityMin);
    CHECK(c.options.grid == 101);
    CHECK_FALSE(c.options.tol);
    CHECK(c.options.backend == Backend::Float);
    CHECK(c.F == TNorm<Q>::min());
}

TEST_CASE("located errors", "[config]") {
    CHECK(where_of(kIdentityMin) == "<accepted>");
    CHECK(where_of("{") == "");
    CHECK(where_of(R"({"tnorm": {"kind": "min"}})") == "");
    CHECK(where_of(R"({"generator": {"pieces": [{"left": 0, "form": {"kind": "cubic", "params": []},
        "value_at_left": 0}], "value_at_one": 1}, "tnorm": {"kind": "min"}})") == "/generator/pieces/0/form/kind");
    CHECK(where_of(R"({"generator": {"pieces": [{"left": 0, "form": {"kind": "linear", "params": [1, "x"]},
        "value_at_left": 0}], "value_at_one": 1}, "tnorm": {"kind": "min"}})") == "/generator/pieces/0/form/params/1");
    // decreasing piece
    CHECK(where_of(R"({"generator": {"pieces": [{"left": 0, "form": {"kind": "linear", "params": [-1, 1]},
        "value_at_left": 1}], "value_at_one": 0}, "tnorm": {"kind": "min"}})") == "/generator");
    CHECK(where_of(R"({"generator": {"pieces": [{"left": 0, "form": {"kind": "linear", "params": [1, 0]},
        "value_at_left": 0}], "value_at_one": 1}, "tnorm": {"kind": "scaled", "lambda": 2,
        "inner": {"kind": "product"}}})") == "/tnorm");
    CHECK(where_of(R"({"generator": {"pieces": [{"left": 0, "form": {"kind": "linear", "params": [1, 0]},
        "value_at_left": 0}], "value_at_one": 1}, "tnorm": {"kind": "ordinal_sum", "semantics": "open",
        "summands": []}})") == "/tnorm/semantics");
    CHECK(where_of(R"({"generator": {"pieces": [{"left": 0, "form": {"kind": "linear", "params": [1, 0]},
        "value_at_left": 0}], "value_at_one": 1}, "tnorm": {"kind": "min"}, "options": {"backend": "gpu"}})") ==
          "/options/backend");
    CHECK(where_of(R"({"generator": {"pieces": [{"left": 0, "form": {"kind": "linear", "params": [1, 0]},
        "value_at_left": 0}], "value_at_one": 1}, "tnorm": {"kind": "min"}, "extra": 1})") == "/extra");
    CHECK(where_of(R"({"generator": {"pieces": [{"left": 0, "form": {"kind": "linear", "params": [1, 0]},
        "value_at_left": 0}], "value_at_one": 1}, "tnorm": {"kind": "min"}, "options": {"grid": 1}})") ==
          "/options/grid");
}

TEST_CASE("shipped example configs parse", "[config]") {
    for (const auto& fx : fixtures()) {
        INFO(fx.id);
        auto c = load_config(std::string(TNF_SOURCE_DIR) + "/examples/configs/" + fx.id + ".json");
        CHECK(c.f == fx.f);
        CHECK(c.F == fx.F);
    }
}
