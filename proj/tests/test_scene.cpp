#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "caustics/payload.hpp"
#include "caustics/scene.hpp"
#include "caustics/service.hpp"
#include "caustics/svg.hpp"
#include "caustics/verify.hpp"

using namespace caustics;

namespace
{

constexpr double pi = std::numbers::pi;

std::string const kCoffeeCup = R"j({
  "curve": {"catalog": "circle"},
  "radiants": [{"at_infinity": 180}],
  "grid": {"n": 256}
})j";

std::string scene_error(std::string const& text)
{
    try
    {
        load_scene_text(text);
    }
    catch (SceneError const& e)
    {
        return e.what();
    }
    ADD_FAILURE() << "no scene error for " << text;
    return {};
}

std::size_t count(std::string const& haystack, std::string const& needle)
{
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1))
        ++n;
    return n;
}

bool all_finite(Json const& j)
{
    if (j.is_number())
        return std::isfinite(j.get<double>());
    if (j.is_array() || j.is_object())
        for (auto const& v : j)
            if (!all_finite(v))
                return false;
    return true;
}

} // namespace

TEST(LoadScene, CoffeeCup)
{
    Scene const s = load_scene_text(kCoffeeCup);
    ASSERT_EQ(s.radiants.size(), 1u);
    EXPECT_FALSE(s.radiants[0].is_finite());
    EXPECT_NEAR(s.radiants[0].theta_src(), pi, 1e-15);
    EXPECT_EQ(s.grid.n, 256u);
    EXPECT_TRUE(s.wants("caustic"));
    EXPECT_FALSE(s.wants("rolling_frames"));
}

TEST(LoadScene, FiniteRadiantAndExpressions)
{
    Scene const s = load_scene_text(R"j({
      "curve": {"expr": {"x": "cos(t)", "y": "sin(t)"}, "domain": [0, "2*pi"], "closed": true},
      "radiants": [{"finite": [0.25, 0]}],
      "outputs": ["caustic", "cusps", "caustic"]
    })j");
    ASSERT_TRUE(s.radiants[0].is_finite());
    EXPECT_EQ(s.radiants[0].point().x, 0.25);
    EXPECT_NEAR(s.curve.domain().hi, 2 * pi, 1e-15);
    EXPECT_EQ(s.outputs, (std::vector<std::string>{"caustic", "cusps"}));
    EXPECT_EQ(s.grid.n, kDefaultGridPoints);
}

TEST(LoadScene, Rejections)
{
    EXPECT_EQ(scene_error(R"j({"curve": {"catalog": "circle"}, "radiants": [{"at_infinity": 180}], "grid": {"n": 4}})j"),
              "grid too coarse: n must be at least 16");
    EXPECT_EQ(scene_error(R"j({"curve": {"catalog": "circle"}, "radiants": []})j"), "empty radiant list");
    EXPECT_EQ(scene_error(R"j({"curve": {"catalog": "circle"}, "radiants": [{"at_infinity": 0}], "colour": 1})j"),
              "unknown key 'colour' in scene");
    EXPECT_EQ(scene_error(R"j({"curve": {"catalog": "circle"}, "radiants": [{"at_infinity": 0}], "outputs": ["glow"]})j"),
              "unknown output layer 'glow'");
    EXPECT_EQ(scene_error(R"j({"curve": {"catalog": "circle"}, "radiants": [{"at_infinity": 0, "finite": [0, 0]}]})j"),
              "'radiants[0]' needs exactly one of 'at_infinity' or 'finite'");
    EXPECT_EQ(scene_error(R"j({"curve": {"catalog": "parabola"}, "radiants": [{"at_infinity": 0}], "grid": {"t_min": -9}})j"),
              "grid extends outside the curve domain");
    EXPECT_EQ(scene_error(R"j({"curve": {"catalog": "circle"}, "radiants": [{"at_infinity": 0}],
                              "tolerances": {"kappa_floor": 0}})j"),
              "tolerances must be positive");
    EXPECT_NE(scene_error("{not json").find("not valid JSON"), std::string::npos);
    EXPECT_NE(scene_error(R"j({"curve": {"expr": {"x": "t^3", "y": "t^2"}, "domain": [-1, 1]},
                               "radiants": [{"at_infinity": 0}], "grid": {"n": 17}})j")
                  .find("irregular curve"),
              std::string::npos);
    EXPECT_NE(scene_error(R"j({"curve": {"expr": {"x": "sin(", "y": "t"}, "domain": [0, 1]},
                               "radiants": [{"at_infinity": 0}]})j")
                  .find("curve expression"),
              std::string::npos);
}

TEST(LoadScene, ToleranceOverrides)
{
    Scene const s = load_scene_text(R"j({"curve": {"catalog": "circle"}, "radiants": [{"at_infinity": 0}],
                                        "tolerances": {"kappa_floor": 1e-6, "u_floor": 1e-7}})j");
    EXPECT_EQ(s.tolerances.kappa_floor, 1e-6);
    EXPECT_EQ(s.tolerances.u_floor, 1e-7);
}

TEST(Compute, CoffeeCupMatchesTheEpicycloid)
{
    ServiceResponse const r = handle_request("POST", "/compute", kCoffeeCup);
    ASSERT_EQ(r.status, 200) << r.body;
    Json const payload = Json::parse(r.body);
    EXPECT_EQ(payload["component_count"], 1);
    Json const& comps = payload["layers"]["caustic"];
    ASSERT_EQ(comps.size(), 1u);
    EXPECT_TRUE(comps[0]["closed"].get<bool>());
    for (auto const& p : comps[0]["points"])
    {
        double const t = p[0].get<double>();
        Vec2 const expected = 0.75 * polar(t) - 0.25 * polar(3 * t);
        EXPECT_NEAR(distance({p[1].get<double>(), p[2].get<double>()}, expected), 0.0, 1e-9) << t;
    }
    EXPECT_TRUE(all_finite(payload));
}

TEST(Compute, ParabolaWithDomainOverrideEscapesTwice)
{
    // The radiant lies on the discriminant circles at t = 1/2 and, by
    // symmetry, at t = -1/2: the caustic escapes at both.
    ServiceResponse const r = handle_request("POST", "/compute", R"j({
      "curve": {"catalog": "parabola"},
      "radiants": [{"finite": [0, 0.75]}],
      "grid": {"t_min": -1, "t_max": 1, "n": 400}
    })j");
    ASSERT_EQ(r.status, 200) << r.body;
    Json const payload = Json::parse(r.body);
    EXPECT_EQ(payload["grid"]["t_min"], -1.0);
    EXPECT_EQ(payload["component_count"], 3);
    Json const& asymptotes = payload["layers"]["asymptotes"];
    ASSERT_EQ(asymptotes.size(), 2u);
    EXPECT_NEAR(asymptotes[0]["t"].get<double>(), -0.5, 1e-9);
    EXPECT_NEAR(asymptotes[1]["t"].get<double>(), 0.5, 1e-9);
    EXPECT_TRUE(all_finite(payload));
}

TEST(Compute, EveryLayerIsFinite)
{
    ServiceResponse const r = handle_request("POST", "/compute", R"j({
      "curve": {"catalog": "ellipse"},
      "radiants": [{"at_infinity": 75}, {"at_infinity": 200}],
      "grid": {"n": 128},
      "outputs": ["alpha", "beta", "caustic", "focal_circles", "discriminant_circles", "rolling_frames", "cusps", "asymptotes"]
    })j");
    ASSERT_EQ(r.status, 200) << r.body;
    Json const payload = Json::parse(r.body);
    for (auto const& name : layer_names())
        EXPECT_TRUE(payload["layers"].contains(name)) << name;
    EXPECT_TRUE(all_finite(payload));
}

TEST(Compute, MixedFamiliesCannotRoll)
{
    std::string const body = R"j({"curve": {"catalog": "ellipse"}, "radiants": [{"at_infinity": 75}, {"finite": [1.8, 0]}],
                                  "grid": {"n": 128}, "outputs": ["caustic", "rolling_frames"]})j";
    ServiceResponse const r = handle_request("POST", "/compute", body);
    EXPECT_EQ(r.status, 400);
    EXPECT_EQ(Json::parse(r.body)["error"], "scene");
}

TEST(Compute, RepeatedRequestsAreByteIdentical)
{
    std::string const body = R"j({"curve": {"catalog": "deltoid"}, "radiants": [{"at_infinity": 30}], "grid": {"n": 200},
                                 "outputs": ["caustic", "cusps", "rolling_frames"]})j";
    EXPECT_EQ(handle_request("POST", "/compute", body).body, handle_request("POST", "/compute", body).body);
}

TEST(Service, CatalogAndHealth)
{
    ServiceResponse const cat = handle_request("GET", "/catalog", "");
    ASSERT_EQ(cat.status, 200);
    Json const list = Json::parse(cat.body);
    ASSERT_EQ(list.size(), 5u);
    for (auto const& entry : list)
        EXPECT_NO_THROW(make_catalog_curve(entry["name"].get<std::string>()));
    ServiceResponse const health = handle_request("GET", "/health", "");
    EXPECT_EQ(health.status, 200);
    EXPECT_EQ(Json::parse(health.body)["status"], "ok");
}

TEST(Service, Errors)
{
    ServiceResponse const bad = handle_request("POST", "/compute", R"j({"curve": {"catalog": "circle"}, "radiants": []})j");
    EXPECT_EQ(bad.status, 400);
    EXPECT_EQ(Json::parse(bad.body)["error"], "scene");
    EXPECT_EQ(Json::parse(bad.body)["message"], "empty radiant list");
    EXPECT_EQ(handle_request("POST", "/compute", "[1, 2").status, 400);
    EXPECT_EQ(handle_request("POST", "/compute", R"j({"curve": {"catalog": "trefoil"}, "radiants": [{"at_infinity": 0}]})j").status,
              400);
    EXPECT_EQ(handle_request("GET", "/compute", kCoffeeCup).status, 405);
    EXPECT_EQ(handle_request("POST", "/health", "").status, 405);
    EXPECT_EQ(handle_request("GET", "/nowhere", "").status, 404);
}

TEST(Service, SvgFormat)
{
    ServiceResponse const r = handle_request("POST", "/compute", kCoffeeCup, "svg");
    ASSERT_EQ(r.status, 200) << r.body;
    EXPECT_EQ(r.content_type, "image/svg+xml");
    EXPECT_EQ(r.body.rfind("<?xml", 0), 0u);
}

TEST(Render, LayerGroups)
{
    std::string const svg = render_svg(compute_payload(load_scene_text(kCoffeeCup)));
    for (std::string const id : {"alpha", "beta", "caustic", "cusps", "asymptotes"})
        EXPECT_EQ(count(svg, "<g id=\"" + id + "\">"), 1u) << id;
    EXPECT_EQ(count(svg, "<g id=\"focal_circles\">"), 0u);
}

TEST(Render, ThirteenDeltoidCaustics)
{
    Json doc = {{"curve", {{"catalog", "deltoid"}}}, {"grid", {{"n", 256}}}, {"outputs", {"alpha", "caustic"}}};
    doc["radiants"] = Json::array();
    for (int k = 0; k < 13; ++k)
        doc["radiants"].push_back({{"at_infinity", 360.0 * k / 13}});
    Json const payload = compute_payload(load_scene(doc));
    std::set<int> radiants;
    for (auto const& comp : payload["layers"]["caustic"])
        radiants.insert(comp["radiant"].get<int>());
    EXPECT_EQ(radiants.size(), 13u);
    std::string const svg = render_svg(payload);
    EXPECT_EQ(count(svg, "data-radiant="), payload["layers"]["caustic"].size());
}

TEST(Render, CausticEntirelyAtInfinity)
{
    Json const payload = {{"layers", {{"caustic", Json::array({{{"radiant", 0}, {"points", Json::array()}}})}}}};
    EXPECT_THROW(render_svg(payload), DegenerateError);
}

TEST(Verify, WrongBetaFormulaIsCaught)
{
    VerifyOptions opt;
    opt.criteria = {4};
    // Replace the factor 1 + cos(2 delta) by 1 + 0.99 cos(2 delta).
    opt.beta = [](CurveSample const& smp, RadiusProfile const& p, double delta) {
        return smp.pos + p.R * (1 + 0.99 * std::cos(2 * delta)) * smp.N_left + p.R * std::sin(2 * delta) * smp.T;
    };
    VerifyReport const bad = run_verify(opt);
    EXPECT_FALSE(bad.passed());
    opt.beta = standard_beta;
    EXPECT_TRUE(run_verify(opt).passed());
}

TEST(Verify, Selection)
{
    VerifyOptions opt;
    opt.criteria = {};
    EXPECT_THROW(run_verify(opt), SceneError);
    opt.criteria = {9};
    EXPECT_THROW(run_verify(opt), SceneError);
    opt.criteria = {2};
    Json const j = report_json(run_verify(opt));
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_EQ(j["criteria"][0]["id"], 2);
}
