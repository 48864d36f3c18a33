#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "esim/runner.hpp"
#include "esim/scenario.hpp"

using namespace esim;
using namespace esim::scenario;
using nlohmann::ordered_json;

namespace {

ordered_json wrap(Module m, ordered_json params)
{
    ordered_json j;
    j["name"] = "test";
    j["module"] = to_string(m);
    j["parameters"] = std::move(params);
    j["output"] = "test.csv";
    return j;
}

} // namespace

TEST_CASE("minimal piezo scenario carries the component defaults")
{
    const auto s = parse_scenario(wrap(Module::Piezo, ordered_json::object()));
    const auto& p = std::get<PiezoScenario>(s.payload);
    CHECK(p.cfg.xdcr.c_pz == doctest::Approx(19e-9));
    CHECK(p.cfg.xdcr.f_pz == doctest::Approx(146.0));
    CHECK(p.cfg.xdcr.r_pz == doctest::Approx(2e6));
    CHECK(p.cfg.l == doctest::Approx(47e-6));
    CHECK(p.cfg.v_max == doctest::Approx(3.3));
}

TEST_CASE("parse failures carry the key path")
{
    CHECK_THROWS_WITH_AS(
        parse_scenario(wrap(Module::Piezo, ordered_json{{"v_maxx", 3.3}})),
        doctest::Contains("parameters.v_maxx"), ConfigError);

    CHECK_THROWS_WITH_AS(
        parse_scenario(wrap(Module::Piezo, ordered_json{{"xdcr", {{"c_pzz", 1e-9}}}})),
        doctest::Contains("parameters.xdcr.c_pzz"), ConfigError);

    CHECK_THROWS_WITH_AS(parse_scenario(wrap(Module::Piezo, ordered_json{{"l", "47u"}})),
                         doctest::Contains("expected a number"), ConfigError);

    // invariant violations surface as config errors
    CHECK_THROWS_AS(parse_scenario(wrap(Module::Piezo, ordered_json{{"v_max", -1.0}})),
                    ConfigError);
}

TEST_CASE("empty and malformed files are parse errors")
{
    const std::string path = "empty_scenario_test.json";
    { std::ofstream out(path); }
    CHECK_THROWS_AS(load_scenario(path), ConfigError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_scenario("does_not_exist.json"), ConfigError);
}

TEST_CASE("sweep validation")
{
    auto j = wrap(Module::Swcap, default_parameters(Module::Swcap));
    j["sweep"] = {{"path", "v_b_off"}, {"start", 0.0}, {"stop", 1.2}, {"steps", 5}};
    const auto s = parse_scenario(j);
    REQUIRE(s.sweep.has_value());

    const auto point = with_sweep_value(s, 0.6);
    CHECK(std::get<SwcapScenario>(point.payload).cfg.v_b_off == doctest::Approx(0.6));

    // sweeping into an invalid region re-triggers validation
    CHECK_THROWS_AS(with_sweep_value(s, -0.5), ConfigError);

    j["sweep"]["path"] = "variant";
    CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("not numeric"), ConfigError);

    j["sweep"]["path"] = "nope";
    CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("not found"), ConfigError);

    j["sweep"] = {{"path", "v_b_off"}, {"start", 0.0}, {"stop", 1.2}, {"steps", 1}};
    CHECK_THROWS_AS(parse_scenario(j), ConfigError);
}

TEST_CASE("scenario serialization round-trips for every module")
{
    for (const auto m : {Module::Swcap, Module::NemsPg, Module::DtAmp, Module::Piezo}) {
        const auto j = wrap(m, default_parameters(m));
        const auto s1 = parse_scenario(j);
        const auto s2 = parse_scenario(s1.to_json());
        CHECK(s1.to_json().dump() == s2.to_json().dump());
    }
}

TEST_CASE("runner emits stable headers")
{
    auto piezo = parse_scenario(wrap(Module::Piezo, default_parameters(Module::Piezo)));
    std::get<PiezoScenario>(piezo.payload).n_cycles = 2; // keep it quick
    piezo.parameters["n_cycles"] = 2;
    const auto artifacts = runner::run_scenario(parse_scenario(piezo.to_json()), 1);
    REQUIRE(artifacts.size() == 2);
    CHECK(artifacts[0].content.rfind("t_s,state,v_pz_V,v_pzp_V,v_pzn_V,i_l_A\n", 0) == 0);
    CHECK(artifacts[1].filename == "test.summary.csv");

    const auto nems = parse_scenario(wrap(Module::NemsPg, default_parameters(Module::NemsPg)));
    const auto a2 = runner::run_scenario(nems, 1);
    CHECK(a2[0].content.rfind("r,alpha,T_K,e_g,saving_pct\n", 0) == 0);

    const auto amp = parse_scenario(wrap(Module::DtAmp, default_parameters(Module::DtAmp)));
    const auto a3 = runner::run_scenario(amp, 1);
    CHECK(a3[0].content.rfind("sample_index,t_s,v_in_V,v_out_V,fault_flags\n", 0) == 0);

    const auto sw = parse_scenario(wrap(Module::Swcap, default_parameters(Module::Swcap)));
    const auto a4 = runner::run_scenario(sw, 1);
    CHECK(a4[0].content.rfind("t_s,v_g_V,state\n", 0) == 0);

    auto swept = wrap(Module::Swcap, default_parameters(Module::Swcap));
    swept["sweep"] = {{"path", "v_b_off"}, {"start", 0.1}, {"stop", 0.9}, {"steps", 3}};
    const auto a5 = runner::run_scenario(parse_scenario(swept), 1);
    CHECK(a5[0].content.rfind("v_b_V,leakage_A,r_on_ohm,v_g_avg_V\n", 0) == 0);
}
